#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qent/measurement.hpp"
#include "qent/state.hpp"

namespace qent {

// Four-level particle carrying a two-valued location and a spin-1/2, with
// position as the slower factor:
//   0 = |R,up>   1 = |R,down>   2 = |L,up>   3 = |L,down>
enum class Position : std::size_t { R = 0, L = 1 };
enum class Spin : std::size_t { Up = 0, Down = 1 };

struct SpinPosition {
  Position position;
  Spin spin;
  friend bool operator==(const SpinPosition&, const SpinPosition&) = default;
};

namespace spin_position {

inline constexpr std::size_t kDim = 4;

constexpr std::size_t encode(Position p, Spin s) {
  return 2 * static_cast<std::size_t>(p) + static_cast<std::size_t>(s);
}

constexpr SpinPosition decode(std::size_t label) {
  return {static_cast<Position>(label / 2), static_cast<Spin>(label % 2)};
}

/// |s><s| (x) 1_position on `particle`.
Projector spin_projector(std::size_t particle, Spin s);
/// |p><p| (x) 1_spin on `particle`.
Projector position_projector(std::size_t particle, Position p);

}  // namespace spin_position

/// Three four-level particles:
/// (|0,1,2> + |0,3,0> + |1,0,2> + |1,2,0>) / 2.
/// Completely entangled, yet particles 1 and 3 share a product marginal.
PureState state_star();

/// |R>_1 (|up>_1|down>_2 + |down>_1|up>_2) (|R>_2|L>_3 + |L>_2|R>_3) |up>_3 / 2,
/// expanded term by term over the spin/position factors and then mapped into
/// the four-level encoding. Coincides with state_star().
PureState state_double_star();

/// (|up,up,up> + |down,down,down>)/sqrt(2) (x) |A>_1|B>_2|C>_3 with each
/// particle a spin (x) three-location space, spin slower (dims 6,6,6).
PureState state_ghz_positions();

/// Names accepted by `fixture`: "star", "double-star", "ghz-positions".
std::vector<std::string_view> fixture_names();
std::optional<PureState> fixture(std::string_view name);

}  // namespace qent
