#pragma once

#include <stdexcept>
#include <string>

namespace qent {

// Root of every error raised by the library. Callers that only need to know
// "the input was rejected" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QENT_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

QENT_DEFINE_ERROR(DimensionError);
QENT_DEFINE_ERROR(NormalizationError);
QENT_DEFINE_ERROR(DuplicateIndexError);
QENT_DEFINE_ERROR(ShapeError);
QENT_DEFINE_ERROR(HermiticityError);
QENT_DEFINE_ERROR(TraceError);
QENT_DEFINE_ERROR(PositivityError);
QENT_DEFINE_ERROR(SubsetError);
QENT_DEFINE_ERROR(OverlapError);
QENT_DEFINE_ERROR(PartitionError);
QENT_DEFINE_ERROR(ParticleError);
QENT_DEFINE_ERROR(ProjectorError);
// Raised by operations that presuppose a composite system (N >= 2).
QENT_DEFINE_ERROR(SystemSizeError);
// Malformed state files, projector specs and report documents.
QENT_DEFINE_ERROR(FormatError);

#undef QENT_DEFINE_ERROR

}  // namespace qent
