#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "qent/corpus.hpp"
#include "qent/errors.hpp"
#include "qent/linalg.hpp"
#include "qent/measurement.hpp"
#include "random_states.hpp"

using namespace qent;
using namespace qent::testing;

namespace {

const std::vector<std::size_t> k1{0}, k3{2};

// Complete set of rank-one projectors onto a random orthonormal basis.
std::vector<Projector> random_complete_measurement(std::size_t particle, std::size_t dim, Rng& rng) {
  const Matrix u = random_unitary(dim, rng);
  std::vector<Projector> out;
  for (Eigen::Index k = 0; k < u.cols(); ++k)
    out.push_back(Projector::make(particle, u.col(k) * u.col(k).adjoint()));
  return out;
}

}  // namespace

TEST_CASE("spin measurement on particle 1 leaves particle 3 alone") {
  const auto s = state_double_star();
  const auto out = project(s, spin_position::spin_projector(0, Spin::Up));
  CHECK(std::abs(out.probability - 0.5) <= 1e-9);
  REQUIRE(out.post);
  CHECK(max_abs_diff(reduce(*out.post, labels(s, k3)).matrix(), reduce(s, labels(s, k3)).matrix()) <= 1e-9);
  // Particle 2's spin is now definite (down): its marginal has no spin-up weight.
  const auto rho2 = reduce(*out.post, labels(s, {1}));
  CHECK(std::abs(rho2.matrix()(0, 0)) <= 1e-12);
  CHECK(std::abs(rho2.matrix()(2, 2)) <= 1e-12);
}

TEST_CASE("position measurement on particle 3 leaves particle 1 alone") {
  const auto s = state_double_star();
  const auto out = project(s, spin_position::position_projector(2, Position::R));
  CHECK(std::abs(out.probability - 0.5) <= 1e-9);
  REQUIRE(out.post);
  CHECK(max_abs_diff(reduce(*out.post, labels(s, k1)).matrix(), reduce(s, labels(s, k1)).matrix()) <= 1e-9);
}

TEST_CASE("measuring an eigenstate changes nothing") {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<AmplitudeEntry> e{{{0, 0}, h}, {{0, 1}, Complex{0.0, h}}};
  const auto s = build_pure_state({2, 2}, e);
  const std::vector<std::size_t> zero{0};
  const auto out = project(s, Projector::onto_basis(0, 2, zero));
  CHECK(std::abs(out.probability - 1.0) <= 1e-12);
  REQUIRE(out.post);
  CHECK(max_abs_diff(out.post->amplitudes(), s.amplitudes()) <= 1e-12);
}

TEST_CASE("impossible branch has no post state") {
  const auto p = product3(0, 1, 2);
  const std::vector<std::size_t> two{2};
  const auto out = project(p, Projector::onto_basis(0, 3, two));
  CHECK(out.probability == 0.0);
  CHECK_FALSE(out.post);
}

TEST_CASE("projector validation and particle checks") {
  CHECK_THROWS_AS(Projector::make(0, diag({0.5, 0.5})), ProjectorError);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(Projector::make(0, m), ProjectorError);
  CHECK_THROWS_AS(Projector::make(0, Matrix::Zero(2, 2)), ProjectorError);
  const std::vector<std::size_t> bad{4};
  CHECK_THROWS_AS(Projector::onto_basis(0, 4, bad), ProjectorError);
  const std::vector<std::size_t> twice{1, 1};
  CHECK_THROWS_AS(Projector::onto_basis(0, 4, twice), ProjectorError);

  const std::vector<std::size_t> zero{0};
  CHECK(Projector::onto_basis(0, 3, zero).rank() == 1);
  CHECK_THROWS_AS(project(product3(), Projector::onto_basis(7, 3, zero)), ParticleError);
  CHECK_THROWS_AS(project(product3(), Projector::onto_basis(0, 2, zero)), ParticleError);
}

TEST_CASE("property: probabilities of a complete measurement sum to one") {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random_state(random_dims(1 + rng() % 3, 3, rng), rng);
    const std::size_t i = rng() % s.num_particles();
    double total = 0.0;
    for (const auto& p : random_complete_measurement(i, s.dims()[i], rng)) total += project(s, p).probability;
    CHECK(std::abs(total - 1.0) <= 1e-9);
  }
}

TEST_CASE("property: repeated projection is certain") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random_state(random_dims(2, 3, rng), rng);
    const auto ps = random_complete_measurement(1, s.dims()[1], rng);
    const auto first = project(s, ps[0]);
    REQUIRE(first.post);
    CHECK(std::abs(project(*first.post, ps[0]).probability - 1.0) <= 1e-9);
  }
}

TEST_CASE("property: no signalling to disjoint subsystems") {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    const auto s = random_state(random_dims(n, 3, rng), rng);
    const std::size_t i = rng() % n;
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) others.push_back(k);
    const auto target = s.particles().subset(others);
    Matrix mixture = Matrix::Zero(static_cast<Eigen::Index>(target.total_dim()),
                                  static_cast<Eigen::Index>(target.total_dim()));
    for (const auto& p : random_complete_measurement(i, s.dims()[i], rng)) {
      const auto out = project(s, p);
      if (out.post) mixture += out.probability * reduce(*out.post, target).matrix();
    }
    CHECK(max_abs_diff(mixture, reduce(s, target).matrix()) <= 1e-9);
  }
}
