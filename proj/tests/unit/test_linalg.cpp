#include <cmath>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "qent/corpus.hpp"
#include "qent/errors.hpp"
#include "qent/linalg.hpp"
#include "random_states.hpp"

using namespace qent;
using namespace qent::testing;

namespace {

const std::vector<std::size_t> k1{0}, k2{1}, k3{2}, k12{0, 1}, k13{0, 2}, k23{1, 2};

DensityOperator pure_density(const ParticleSet& set, std::size_t basis) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(set.total_dim()),
                          static_cast<Eigen::Index>(set.total_dim()));
  m(static_cast<Eigen::Index>(basis), static_cast<Eigen::Index>(basis)) = 1.0;
  return validate_density(m, set);
}

}  // namespace

TEST_CASE("reduce: closed forms") {
  const auto star = state_star();
  SUBCASE("star, particle 1 is (|0><0| + |1><1|)/2") {
    CHECK(max_abs_diff(reduce(star, labels(star, k1)).matrix(), diag({0.5, 0.5, 0, 0})) <= 1e-12);
  }
  SUBCASE("star, particle 2 is I/4") {
    CHECK(max_abs_diff(reduce(star, labels(star, k2)).matrix(), diag({0.25, 0.25, 0.25, 0.25})) <=
          1e-12);
  }
  SUBCASE("product marginal") {
    const std::vector<AmplitudeEntry> e{{{0, 1}, 1.0}};
    const auto s = build_pure_state({2, 2}, e);
    CHECK(max_abs_diff(reduce(s, labels(s, k1)).matrix(), diag({1, 0})) == 0.0);
  }
  SUBCASE("Bell, particle 2 against the loop oracle") {
    const auto b = bell();
    const Matrix expected = oracle::reduced(b.amplitudes(), b.dims(), {1});
    CHECK(max_abs_diff(expected, diag({0.5, 0.5})) <= 1e-15);  // frozen value
    CHECK(max_abs_diff(reduce(b, labels(b, k2)).matrix(), expected) <= 1e-15);
  }
  SUBCASE("keeping everything gives |psi><psi|") {
    const auto b = bell();
    const auto rho = reduce(b, b.particles());
    CHECK(max_abs_diff(rho.matrix(), b.amplitudes() * b.amplitudes().adjoint()) <= 1e-15);
  }
  SUBCASE("result is a valid density operator") {
    const auto rho = reduce(star, labels(star, k13));
    CHECK(density_diagnostics(rho.matrix(), rho.particles()).empty());
  }
}

TEST_CASE("reduce: errors") {
  const auto b = bell();
  const auto other = ParticleSet({0, 5}, {2, 2});
  CHECK_THROWS_AS(reduce(b, other), SubsetError);
  const auto wrong_dim = ParticleSet({0}, {3});
  CHECK_THROWS_AS(reduce(b, wrong_dim), SubsetError);
}

TEST_CASE("reduce_density") {
  const auto star = state_star();
  const auto rho13 = reduce(star, labels(star, k13));
  SUBCASE("nested reduction reaches the same marginal") {
    const auto rho1 = reduce_density(rho13, labels(star, k1));
    CHECK(max_abs_diff(rho1.matrix(), reduce(star, labels(star, k1)).matrix()) <= 1e-12);
  }
  SUBCASE("identity reduction") {
    CHECK(max_abs_diff(reduce_density(rho13, rho13.particles()).matrix(), rho13.matrix()) == 0.0);
  }
  SUBCASE("product marginal") {
    const auto whole = ParticleSet::whole(std::vector<std::size_t>{2, 3});
    const auto a = validate_density(diag({0.25, 0.75}), whole.subset(k1));
    const auto b = validate_density(diag({0.5, 0.25, 0.25}), whole.subset(k2));
    const auto ab = tensor_product(a, b);
    CHECK(max_abs_diff(reduce_density(ab, a.particles()).matrix(), a.matrix()) <= 1e-15);
    CHECK(max_abs_diff(reduce_density(ab, b.particles()).matrix(), b.matrix()) <= 1e-15);
  }
  SUBCASE("not a subset") {
    const auto two = labels(star, k2);
    CHECK_THROWS_AS(reduce_density(rho13, two), SubsetError);
  }
}

TEST_CASE("tensor_product") {
  const auto star = state_star();
  SUBCASE("rho1 (x) rho3 of the star state is its 1,3 marginal") {
    const auto prod = tensor_product(reduce(star, labels(star, k1)), reduce(star, labels(star, k3)));
    CHECK(prod.particles() == labels(star, k13));
    CHECK(max_abs_diff(prod.matrix(), reduce(star, labels(star, k13)).matrix()) <= 1e-12);
  }
  SUBCASE("|0><0| (x) |1><1| projects onto |0>|1>") {
    const auto whole = ParticleSet::whole(std::vector<std::size_t>{2, 2});
    const auto prod = tensor_product(pure_density(whole.subset(k1), 0), pure_density(whole.subset(k2), 1));
    CHECK(max_abs_diff(prod.matrix(), diag({0, 1, 0, 0})) == 0.0);
    CHECK(numerical_rank(prod) == 1);
  }
  SUBCASE("operand order does not matter; axes follow labels") {
    Rng rng(3);
    const auto whole = ParticleSet::whole(std::vector<std::size_t>{2, 3, 2});
    const auto a = random_density(whole.subset(k2), 2, rng);
    const auto b = random_density(whole.subset(k13), 3, rng);
    const auto ab = tensor_product(a, b);
    const auto ba = tensor_product(b, a);
    CHECK(ab.particles() == whole);
    CHECK(max_abs_diff(ab.matrix(), ba.matrix()) == 0.0);
    const Matrix expected = oracle::product_operator(a.matrix(), b.matrix(), whole.dims(), {1});
    CHECK(max_abs_diff(ab.matrix(), expected) <= 1e-15);
    CHECK(std::abs(ab.matrix().trace() - Complex{1.0, 0.0}) <= 1e-12);
  }
  SUBCASE("overlap") {
    const auto rho = reduce(star, labels(star, k12));
    CHECK_THROWS_AS(tensor_product(rho, reduce(star, labels(star, k2))), OverlapError);
  }
}

TEST_CASE("schmidt") {
  SUBCASE("Bell") {
    const auto b = bell();
    const auto sp = schmidt(b, Bipartition::of(b.particles(), k1));
    REQUIRE(sp.schmidt_number() == 2);
    CHECK(sp.coefficients[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sp.coefficients[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("product state has a single coefficient on every cut") {
    const auto p = product3();
    for (const auto& left : {k1, k2, k3, k12, k13, k23}) {
      const auto sp = schmidt(p, Bipartition::of(p.particles(), left));
      REQUIRE(sp.schmidt_number() == 1);
      CHECK(sp.coefficients[0] == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  SUBCASE("star across {1}|{2,3} matches the square roots of rho1's spectrum") {
    const auto star = state_star();
    // Oracle: eigenvalues of the loop-contracted marginal.
    const auto squares = oracle::schmidt_squares(star.amplitudes(), star.dims(), {0});
    REQUIRE(squares.size() == 2);
    const auto sp = schmidt(star, Bipartition::of(star.particles(), k1));
    REQUIRE(sp.schmidt_number() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(std::abs(sp.coefficients[k] - std::sqrt(squares[k])) <= 1e-12);
      CHECK(std::abs(sp.coefficients[k] - 1 / std::sqrt(2.0)) <= 1e-12);
    }
  }
  SUBCASE("cut of the wrong system") {
    const auto b = bell();
    const auto three = ParticleSet::whole(std::vector<std::size_t>{2, 2, 2});
    CHECK_THROWS_AS(schmidt(b, Bipartition::of(three, k1)), PartitionError);
  }
}

TEST_CASE("purity, entropy, rank on the star marginals") {
  const auto star = state_star();
  const auto rho1 = reduce(star, labels(star, k1));
  const auto rho2 = reduce(star, labels(star, k2));
  const auto proj = reduce(product3(), labels(product3(), k1));

  CHECK(purity(proj) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(purity(rho1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(purity(rho2) == doctest::Approx(0.25).epsilon(1e-12));

  CHECK(std::abs(von_neumann_entropy(proj)) <= 1e-12);
  CHECK(von_neumann_entropy(rho1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(rho2) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK(numerical_rank(rho1) == 2);
  CHECK(numerical_rank(rho2) == 4);
  CHECK(numerical_rank(proj) == 1);
  CHECK_THROWS(numerical_rank(rho1, 0.0));
}

TEST_CASE("property: nested reduction equals direct reduction") {
  Rng rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    const auto s = random_state(random_dims(n, 3, rng), rng);
    // Random chain A subset B subset all.
    std::vector<std::size_t> b_labels, a_labels;
    for (std::size_t k = 0; k < n; ++k)
      if (rng() % 3) b_labels.push_back(k);
    if (b_labels.empty()) b_labels.push_back(rng() % n);
    for (auto l : b_labels)
      if (rng() % 2) a_labels.push_back(l);
    if (a_labels.empty()) a_labels.push_back(b_labels.front());

    const auto rho_b = reduce(s, labels(s, b_labels));
    const auto nested = reduce_density(rho_b, labels(s, a_labels));
    const auto direct = reduce(s, labels(s, a_labels));
    CHECK(max_abs_diff(nested.matrix(), direct.matrix()) <= 1e-9);
    CHECK(max_abs_diff(direct.matrix(), oracle::reduced(s.amplitudes(), s.dims(), a_labels)) <= 1e-12);
  }
}

TEST_CASE("property: squared Schmidt coefficients are the marginal spectra") {
  Rng rng(202);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    const auto s = random_state(random_dims(n, 3, rng), rng);
    const auto cuts_left = [&] {
      std::vector<std::size_t> left{0};
      for (std::size_t k = 1; k < n; ++k)
        if (rng() % 2) left.push_back(k);
      if (left.size() == n) left.pop_back();
      return left;
    }();
    const auto cut = Bipartition::of(s.particles(), cuts_left);
    const auto sp = schmidt(s, cut);
    for (const auto* side : {&cut.left(), &cut.right()}) {
      auto ev = eigenvalues(reduce(s, *side));
      REQUIRE(ev.size() >= sp.schmidt_number());
      for (std::size_t k = 0; k < ev.size(); ++k) {
        const double expected = k < sp.schmidt_number() ? sp.coefficients[k] * sp.coefficients[k] : 0.0;
        CHECK(std::abs(ev[k] - expected) <= 1e-9);
      }
    }
    const double total = std::accumulate(sp.coefficients.begin(), sp.coefficients.end(), 0.0,
                                         [](double acc, double c) { return acc + c * c; });
    CHECK(std::abs(total - 1.0) <= 1e-9);
    CHECK(std::is_sorted(sp.coefficients.rbegin(), sp.coefficients.rend()));
  }
}

TEST_CASE("property: purity, entropy bounds, tensor ordering") {
  Rng rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    const auto whole = ParticleSet::whole(random_dims(3, 3, rng));
    const auto rho = random_density(whole.subset(k13), 1 + rng() % 6 + 1, rng);
    const auto ev = eigenvalues(rho);
    const double sum_sq = std::accumulate(ev.begin(), ev.end(), 0.0,
                                          [](double acc, double l) { return acc + l * l; });
    CHECK(std::abs(purity(rho) - sum_sq) <= 1e-9);

    const double s = von_neumann_entropy(rho);
    CHECK(s >= 0.0);
    CHECK(s <= std::log2(static_cast<double>(rho.dim())) + 1e-9);
    CHECK((s <= 1e-9) == (numerical_rank(rho) == 1));

    const auto other = random_density(whole.subset(k2), 2, rng);
    CHECK(max_abs_diff(reduce_density(tensor_product(rho, other), rho.particles()).matrix(),
                       rho.matrix()) <= 1e-9);
    CHECK(max_abs_diff(reduce_density(tensor_product(other, rho), other.particles()).matrix(),
                       other.matrix()) <= 1e-9);
  }
  // Pure marginals sit on the equality side of the entropy bound.
  const auto p = product3();
  const auto rho = reduce(p, labels(p, k12));
  CHECK(von_neumann_entropy(rho) == 0.0);
  CHECK(numerical_rank(rho) == 1);
}
