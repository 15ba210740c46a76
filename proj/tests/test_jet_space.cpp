#include "support/random_data.hpp"

#include <doctest.h>

using namespace lieq;
using namespace lieq::testing;

namespace {

const int T = 6;
Series X() { return Series::variable(2, T, 0); }
Series Y() { return Series::variable(2, T, 1); }
Series one() { return Series::constant(2, T, 1); }
Series zero() { return Series(2, T); }

/** e^y by its defining sum, independent of any library helper. */
Series exp_y() {
  Series sum = one(), term = one();
  for (int j = 1; j <= T; ++j) {
    term = term * Y() * Rational(1, j);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("holonomic lift examples") {
  JetSection a = holonomic_lift({zero(), Y()}, 1);
  CHECK(a.at(1, {0, 0}) == Y());
  CHECK(a.at(1, {1, 0}).is_zero());
  CHECK(a.at(1, {0, 1}) == one());
  CHECK(a.at(0, {0, 0}).is_zero());
  CHECK(holonomic_lift({zero(), zero()}, 3).is_zero());

  Series xe = X() * exp_y();
  JetSection b = holonomic_lift({zero(), xe}, 1);
  CHECK(b.at(1, {0, 0}) == xe);
  CHECK(b.at(1, {1, 0}) == exp_y());
  CHECK(b.at(1, {0, 1}) == xe);
  CHECK(b.at(1, {1, 0}).prec() == T - 1);
  CHECK_THROWS_AS(holonomic_lift({zero(), Y()}, T + 1), OrderError);
}

TEST_CASE("multi-index layout of jet sections") {
  JetSection s(2, 1, 2, T);
  CHECK(s.jet_count() == 3);
  CHECK(s.index(1) == MultiIndex{1, 0});
  CHECK(s.position({0, 1}) == 2);
  CHECK(JetSection(3, 2, 3, T).jet_count() == 10);
}

TEST_CASE("Spencer operator examples") {
  JetSection xi(2, 1, 2, T);
  xi.at(1, {0, 1}) = one();
  auto D = spencer_D(xi);
  REQUIRE(D.size() == 2);
  CHECK(D[0].is_zero());
  CHECK(D[1].order() == 0);
  CHECK(D[1].at(1, 0) == -one());
  CHECK(D[1].at(0, 0).is_zero());

  // Pure second-order jet f^{2,0} + b f^{1,1} + b^2 f^{0,2} in the y component.
  Series b = X() + X() * X() * Rational(1, 3);
  JetSection X2(2, 2, 2, T);
  X2.at(1, {2, 0}) = one();
  X2.at(1, {1, 1}) = b;
  X2.at(1, {0, 2}) = b * b;
  JetSection ix = contract_D({one(), zero()}, X2);
  CHECK(ix.at(1, {1, 0}) == -one());
  CHECK(ix.at(1, {0, 1}) == -b);
  CHECK(ix.at(1, {0, 0}).is_zero());
  CHECK(project(X2, 1).is_zero());
}

TEST_CASE("projection and beta") {
  JetSection a = holonomic_lift({zero(), Y()}, 1);
  JetSection p = project(a, 0);
  CHECK(p.order() == 0);
  CHECK(p.at(1, 0) == Y());
  CheckedSection cs{{X(), Y() * Y()}, a};
  VectorField b = beta(cs);
  CHECK(b[0] == X());
  CHECK(b[1] == Y() * Y() + Y());
  CHECK(is_tilde(tilde(a)));
  CHECK(!is_tilde(cs));
  CHECK(project(zero_extend(a, 3), 1) == a);
}

TEST_CASE("D kills holonomic sections (property)") {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    const int n = rng.uniform(1, 3);
    const int k = rng.uniform(1, 3);
    const int trunc = k + 3;
    VectorField theta = random_field(rng, n, trunc, trunc);
    JetSection j = holonomic_lift(theta, k);
    auto D = spencer_D(j);
    for (const auto& d : D) {
      CHECK(d.is_zero());
      CHECK(d.min_prec() >= trunc - k - 1);
    }
  }
}

TEST_CASE("Leibniz rule of D for functions (property)") {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.uniform(1, 2);
    const int k = rng.uniform(1, 3);
    const int trunc = k + 3;
    JetSection xi = random_jet(rng, n, k, trunc, 3);
    Series f = random_series(rng, n, trunc, 3);
    auto lhs = spencer_D(f * xi);
    auto D = spencer_D(xi);
    for (int j = 0; j < n; ++j) CHECK(lhs[j] == f.derive(j) * project(xi, k - 1) + f * D[j]);
  }
}

TEST_CASE("D squared vanishes on forms (property)") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.uniform(1, 3);
    const int k = rng.uniform(2, 4);
    JetSection xi = random_jet(rng, n, k, k + 2, 3);
    JetForm u = spencer_D(JetForm::from_section(xi));
    CHECK(u.degree == 1);
    JetForm uu = spencer_D(u);
    CHECK(uu.is_zero());
    CHECK(uu.order == k - 2);
  }
}

TEST_CASE("contraction agrees with the components") {
  Rng rng(14);
  JetSection xi = random_jet(rng, 2, 2, T, 3);
  VectorField v = random_field(rng, 2, T, 2);
  auto D = spencer_D(xi);
  CHECK(contract_D(v, xi) == v[0] * D[0] + v[1] * D[1]);
}
