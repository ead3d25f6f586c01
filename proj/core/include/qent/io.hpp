#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qent/analysis.hpp"
#include "qent/state.hpp"

// File formats and report rendering shared by the command-line tool.
//
// State file (UTF-8 JSON):
//   {"dims": [4, 4, 4],
//    "amps": [{"idx": [0, 1, 2], "re": 0.5, "im": 0.0}, ...],
//    "normalize": false}            // optional, default false
// `idx` is 0-based per particle. Unknown keys are rejected.
namespace qent::io {

std::string_view version();

/// Throws FormatError for malformed JSON or schema violations (the message
/// names the offending field, e.g. "amps[2].idx"), and the state_model errors
/// for dimension/normalization problems.
PureState parse_state(std::string_view text);

/// Deterministic state file holding the nonzero amplitudes.
std::string write_state(const PureState& state);

/// "fnv1a64:<16 hex digits>" over the raw bytes.
std::string input_digest(std::string_view bytes);

struct ReportDocument {
  EntanglementReport report;
  std::vector<std::size_t> dims;
  std::string input_digest;
  std::string tool_version;
  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

ReportDocument make_document(EntanglementReport report, const PureState& state,
                             std::string_view input_bytes);

std::string report_to_json(const ReportDocument& doc);
/// Inverse of report_to_json; throws FormatError.
ReportDocument report_from_json(std::string_view text);
std::string report_to_text(const ReportDocument& doc);

std::string density_to_text(const DensityOperator& rho);
std::string density_to_json(const DensityOperator& rho);

/// "1,3" -> {0, 2}. Labels are 1-based; throws FormatError.
std::vector<std::size_t> parse_label_list(std::string_view text);

/// "0+2" -> {0, 2}: basis vectors (0-based) whose span is projected onto.
std::vector<std::size_t> parse_basis_sum(std::string_view text);

}  // namespace qent::io
