#include "qent/corpus.hpp"

#include <array>
#include <cmath>

namespace qent {

namespace spin_position {

Projector spin_projector(std::size_t particle, Spin s) {
  const std::array<std::size_t, 2> basis{encode(Position::R, s), encode(Position::L, s)};
  return Projector::onto_basis(particle, kDim, basis);
}

Projector position_projector(std::size_t particle, Position p) {
  const std::array<std::size_t, 2> basis{encode(p, Spin::Up), encode(p, Spin::Down)};
  return Projector::onto_basis(particle, kDim, basis);
}

}  // namespace spin_position

PureState state_star() {
  const std::vector<AmplitudeEntry> entries{
      {{0, 1, 2}, 0.5},
      {{0, 3, 0}, 0.5},
      {{1, 0, 2}, 0.5},
      {{1, 2, 0}, 0.5},
  };
  return build_pure_state({4, 4, 4}, entries);
}

PureState state_double_star() {
  using spin_position::encode;
  constexpr std::array positions{Position::R, Position::L};
  constexpr std::array spins{Spin::Up, Spin::Down};

  // Factor amplitudes of the product form; the 1/2 restores unit norm.
  auto particle1_position = [](Position p) { return p == Position::R ? 1.0 : 0.0; };
  auto spins12 = [](Spin a, Spin b) { return a != b ? 1.0 : 0.0; };
  auto positions23 = [](Position a, Position b) { return a != b ? 1.0 : 0.0; };
  auto particle3_spin = [](Spin s) { return s == Spin::Up ? 1.0 : 0.0; };

  std::vector<AmplitudeEntry> entries;
  for (auto p1 : positions)
    for (auto s1 : spins)
      for (auto p2 : positions)
        for (auto s2 : spins)
          for (auto p3 : positions)
            for (auto s3 : spins) {
              const double a = 0.5 * particle1_position(p1) * spins12(s1, s2) *
                               positions23(p2, p3) * particle3_spin(s3);
              if (a == 0.0) continue;
              entries.push_back({{encode(p1, s1), encode(p2, s2), encode(p3, s3)}, a});
            }
  return build_pure_state({4, 4, 4}, entries);
}

PureState state_ghz_positions() {
  constexpr std::size_t kLocations = 3;  // A, B, C
  auto label = [](std::size_t spin, std::size_t location) {
    return spin * kLocations + location;
  };
  const double a = 1.0 / std::sqrt(2.0);
  const std::vector<AmplitudeEntry> entries{
      {{label(0, 0), label(0, 1), label(0, 2)}, a},
      {{label(1, 0), label(1, 1), label(1, 2)}, a},
  };
  return build_pure_state({6, 6, 6}, entries);
}

std::vector<std::string_view> fixture_names() {
  return {"star", "double-star", "ghz-positions"};
}

std::optional<PureState> fixture(std::string_view name) {
  if (name == "star") return state_star();
  if (name == "double-star") return state_double_star();
  if (name == "ghz-positions") return state_ghz_positions();
  return std::nullopt;
}

}  // namespace qent
