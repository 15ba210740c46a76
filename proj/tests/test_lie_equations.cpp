#include "support/random_data.hpp"

#include <doctest.h>

using namespace lieq;
using namespace lieq::testing;

namespace {

const int T = 7;
Series X() { return Series::variable(2, T, 0); }
Series Y() { return Series::variable(2, T, 1); }
Series one() { return Series::constant(2, T, 1); }
Series zero() { return Series(2, T); }

using Term = std::pair<JetCoordinate, Series>;

LinearRelation rel(std::vector<Term> terms) { return LinearRelation{std::move(terms)}; }

Term py(MultiIndex a, Series c) { return {JetCoordinate{1, std::move(a)}, std::move(c)}; }

LinearLieEquation on_v(int k, std::vector<LinearRelation> rels) {
  return LinearLieEquation::build(2, k, T, {1}, true, rels);
}

Series xpow(int m) {
  Series s = one();
  for (int i = 0; i < m; ++i) s = s * X();
  return s;
}

/** p01 = beta p10. */
LinearLieEquation case2(const Series& beta) { return on_v(1, {rel({py({0, 1}, one()), py({1, 0}, -beta)})}); }

LinearLieEquation case1() { return on_v(1, {rel({py({1, 0}, one())})}); }

/** exp(y beta d/dx) q(x), a solution of xi_y = beta xi_x. */
Series transported(const Series& beta, const Series& q) {
  Series term = q, sum = q;
  for (int j = 1; j <= T; ++j) {
    term = beta * term.derive(0) * Y() * Rational(1, j);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("building normal forms") {
  CHECK(case1().fiber_dim() == 2);
  CHECK(case2(X()).fiber_dim() == 2);
  CHECK(case1().relation_string(case1().rank() - 1, {"x", "y"}) == "p_y[1,0] = 0");
  LinearLieEquation dup = on_v(1, {rel({py({1, 0}, one())}), rel({py({1, 0}, Series::constant(2, T, 3))})});
  CHECK(dup.rank() == case1().rank());
  CHECK(dup.same_span(case1()));
  CHECK_THROWS_AS(on_v(1, {rel({py({1, 0}, zero())})}), InputError);
  CHECK_THROWS_AS(on_v(1, {rel({py({1, 0}, X()), py({0, 1}, Y())})}), NonRegularError);
  CHECK_THROWS_AS(on_v(1, {rel({py({2, 0}, one())})}), OrderError);
}

TEST_CASE("prolongation examples") {
  LinearLieEquation p1 = prolong_equation(case1());
  CHECK(p1.order() == 2);
  CHECK(p1.fiber_dim() == 3);
  CHECK(p1.same_span(on_v(2, {rel({py({1, 0}, one())}), rel({py({2, 0}, one())}), rel({py({1, 1}, one())})})));

  LinearLieEquation p2 = prolong_equation(case2(X()));
  LinearLieEquation expect = on_v(2, {rel({py({0, 1}, one()), py({1, 0}, -X())}),
                                      rel({py({1, 1}, one()), py({1, 0}, -one()), py({2, 0}, -X())}),
                                      rel({py({0, 2}, one()), py({1, 1}, -X())})});
  CHECK(p2.same_span(expect));

  CHECK(prolong_equation(on_v(1, {})).same_span(on_v(2, {})));
  CHECK(on_v(1, {}).fiber_dim() == 3);
  CHECK(on_v(2, {}).fiber_dim() == 6);

  LinearLieEquation top = on_v(T, {});
  CHECK_THROWS_AS(prolong_equation(top), OrderError);
}

TEST_CASE("symbols of equations") {
  SymbolSpace g1 = equation_symbol(case1());
  CHECK(g1.dim() == 1);
  CHECK(g1.contains(symbol_power({0, 1}, 1, 1)));
  SymbolSpace g2 = equation_symbol(case2(X() + X() * X()));
  CHECK(g2.dim() == 1);
  CHECK(g2.contains(symbol_power({1, 0}, 1, 1)));
  SymbolSpace g3 = equation_symbol(prolong_equation(case1()));
  CHECK(g3.dim() == 1);
  CHECK(g3.contains(symbol_power({0, 1}, 2, 1)));
}

TEST_CASE("Lie closure") {
  CHECK(check_lie_closure(case1()).closed);
  CHECK(check_lie_closure(on_v(2, {})).closed);
  for (int m = 0; m <= 3; ++m) CHECK(check_lie_closure(case2(xpow(m))).closed);
  // The order-zero term breaks closure.
  auto rep = check_lie_closure(on_v(1, {rel({py({0, 1}, one()), py({1, 0}, -one()), py({0, 0}, -X())})}));
  CHECK(!rep.closed);
  CHECK((rep.witness_pair.has_value() || rep.witness_derivative.has_value()));
}

TEST_CASE("formal integrability of the plane normal forms") {
  auto r1 = check_formal_integrability(case1());
  CHECK(r1.verdict == Integrability::formally_integrable);
  REQUIRE(!r1.steps.empty());
  CHECK(r1.steps[0].surjective);
  CHECK(r1.steps[0].two_acyclic);
  CHECK(r1.steps[0].symbol_dim == 1);
  for (int m = 0; m <= 3; ++m) {
    auto r = check_formal_integrability(case2(xpow(m)));
    CHECK(r.verdict == Integrability::formally_integrable);
    CHECK(r.steps[0].symbol_dim == 1);
    CHECK(r.steps[0].prolonged_symbol_dim == 1);
  }
  CHECK(check_formal_integrability(on_v(1, {})).verdict == Integrability::formally_integrable);
  CHECK(to_string(Integrability::not_formally_integrable) == "not_formally_integrable");
}

TEST_CASE("an equation with a hidden integrability condition") {
  // p10 = 0 and p01 = x p00 prolong to p11 = 0 and p11 = p00 + x p10, forcing p00 = 0 at order 1.
  LinearLieEquation R = on_v(1, {rel({py({1, 0}, one())}), rel({py({0, 1}, one()), py({0, 0}, -X())})});
  auto r = check_formal_integrability(R, 2);
  CHECK(r.verdict == Integrability::not_formally_integrable);
  CHECK(!r.steps[0].surjective);
}

TEST_CASE("intransitivity") {
  CHECK(check_intransitive(case1()));
  CHECK(!check_intransitive(on_v(1, {rel({py({0, 0}, one())})})));
  LinearLieEquation mixed =
      LinearLieEquation::build(2, 1, T, {1}, false, {rel({{JetCoordinate{0, {1, 0}}, one()}, py({1, 0}, one())})});
  CHECK(!check_intransitive(mixed));
}

TEST_CASE("solutions lie in the equation and its prolongations (property)") {
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    const int m = rng.uniform(0, 3);
    Series beta = rng.coin() ? xpow(m) : xpow(m) * (one() + random_series(rng, 2, T, 2, 1).remap(2, {0, -1}));
    Series q = random_series(rng, 2, T, 3).remap(2, {0, -1});
    VectorField theta{zero(), transported(beta, q)};
    LinearLieEquation R = case2(beta);
    CHECK(R.contains(holonomic_lift(theta, 1)));
    LinearLieEquation R2 = prolong_equation(R);
    CHECK(R2.contains(holonomic_lift(theta, 2)));
    CHECK(prolong_equation(R2).contains(holonomic_lift(theta, 3)));
    // A solution of another normal form fails.
    VectorField other{zero(), transported(beta + X() * X() * X() * X() + one(), X())};
    CHECK(!R.contains(holonomic_lift(other, 1)));
  }
}

TEST_CASE("spanning sections span the equation (property)") {
  Rng rng(42);
  for (int t = 0; t < 8; ++t) {
    Series beta = random_series(rng, 2, T, 2, 1);
    LinearLieEquation R = prolong_equation(case2(beta));
    auto span = R.spanning_sections();
    CHECK(static_cast<int>(span.size()) == R.fiber_dim());
    for (const auto& s : span) CHECK(R.contains(s));
  }
}
