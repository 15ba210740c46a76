// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "support/random_data.hpp"

#include "lieq/bracket.hpp"
#include "lieq/connection.hpp"
#include "lieq/intransitive_algebra.hpp"
#include "lieq/symbols.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace lieq;
using namespace lieq::testing;

namespace {

/** Collects the first failing check of a criterion. */
struct Checker {
  bool ok = true;
  std::string first_failure;
  int checks = 0;
  void operator()(bool cond, const std::string& what) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

Series var(int n, int T, int i) { return Series::variable(n, T, i); }
Series cst(int n, int T, Rational c) { return Series::constant(n, T, std::move(c)); }

Series xpow(int T, int m) {
  Series s = cst(2, T, 1);
  for (int i = 0; i < m; ++i) s = s * var(2, T, 0);
  return s;
}

/** A p01 - B p10 = 0 on V = span(d/dy); its symbol is spanned by A f^{1,0} + B f^{0,1}. */
LinearLieEquation rank1(const Series& A, const Series& B, int T) {
  LinearRelation r{{{JetCoordinate{1, {0, 1}}, A}, {JetCoordinate{1, {1, 0}}, -B}}};
  return LinearLieEquation::build(2, 1, T, {1}, true, {r});
}

LinearLieEquation case1(int T) {
  LinearRelation r{{{JetCoordinate{1, {1, 0}}, cst(2, T, 1)}}};
  return LinearLieEquation::build(2, 1, T, {1}, true, {r});
}

LinearLieEquation case2(const Series& beta, int T) { return rank1(cst(2, T, 1), beta, T); }

Series exp_series(const Series& s) {
  Series sum = cst(s.n_vars(), s.trunc(), 1), term = sum;
  for (int j = 1; j <= s.trunc(); ++j) {
    term = term * s * Rational(1, j);
    sum += term;
  }
  return sum;
}

VectorField push_oracle(const std::vector<Series>& f, const VectorField& theta) {
  const int n = static_cast<int>(f.size());
  auto g = series_reversion(f);
  VectorField out;
  for (int i = 0; i < n; ++i) {
    Series acc(n, f[0].trunc());
    for (int l = 0; l < n; ++l) acc += f[i].derive(l) * theta[l];
    out.push_back(acc.compose(g));
  }
  return out;
}

bool same_form(const SpencerOneForm& a, const SpencerOneForm& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (!(a[j] == b[j])) return false;
  return true;
}

// 1. D o j^k = 0 and D^2 = 0.
void spencer_linearity(Checker& c) {
  Rng rng(1001);
  for (int t = 0; t < 100; ++t) {
    const int n = rng.uniform(1, 2);
    const int k = rng.uniform(1, 4);
    const int T = k + 3;
    VectorField theta = random_field(rng, n, T, T);
    for (const auto& d : spencer_D(holonomic_lift(theta, k))) c(d.is_zero() && d.min_prec() >= T - k - 1, "D j^k theta != 0");
    if (k >= 2) {
      JetForm uu = spencer_D(spencer_D(JetForm::from_section(random_jet(rng, n, k, T, 3))));
      c(uu.is_zero(), "D^2 != 0");
    }
  }
}

// 2. Full symbol complexes are exact.
void delta_exactness(Checker& c) {
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= 4; ++k) {
      std::vector<SymbolSpace> chain;
      for (int r = 0; r <= n && k - r >= 0; ++r) chain.push_back(SymbolSpace::full(n, k - r));
      DeltaCohomology h = delta_cohomology(chain);
      bool zero = h.exact();
      for (int d : h.cohomology) zero = zero && d == 0;
      c(zero, "nonzero cohomology at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
}

// 3. Bracket laws and the closed formula against the oracle on all basis pairs.
void bracket_laws(Checker& c) {
  Rng rng(1003);
  for (int t = 0; t < 100; ++t) {
    const int n = rng.uniform(1, 2);
    const int k = rng.uniform(2, 3);
    const int T = k + 2;
    CheckedSection a = random_checked(rng, n, k, T, 2), b = random_checked(rng, n, k, T, 2),
                   d = random_checked(rng, n, k, T, 2);
    c(first_bracket(a, b) == -first_bracket(b, a), "antisymmetry");
    Series f = random_series(rng, n, T, 2);
    c(first_bracket(a, f * b) == f * first_bracket(a, b) + apply_field(a.horizontal, f, n) * project(b, k - 1),
      "Leibniz");
    CheckedSection jac = first_bracket(project(a, k - 1), first_bracket(b, d)) +
                         first_bracket(project(b, k - 1), first_bracket(d, a)) +
                         first_bracket(project(d, k - 1), first_bracket(a, b));
    c(jac.is_zero() && jac.vertical.min_prec() >= T - 3, "Jacobi");
  }
  for (int n = 1; n <= 2; ++n)
    for (int k = 1; k <= 3; ++k) {
      const int T = k + 1;
      JetSection proto(n, k, n, T);
      std::vector<JetSection> basis;
      for (int i = 0; i < n; ++i)
        for (int p = 0; p < proto.jet_count(); ++p) {
          JetSection e = proto;
          e.at(i, p) = cst(n, T, 1);
          basis.push_back(e);
        }
      for (const auto& u : basis)
        for (const auto& v : basis) c(algebraic_bracket(u, v) == algebraic_bracket_oracle(u, v), "closed formula vs oracle");
    }
}

// 4. The prolonged symbol of a constant rank-one equation is a square.
void rank_one_symbols(Checker& c) {
  Rng rng(1004);
  const int T = 4;
  for (int t = 0; t < 20; ++t) {
    Rational A = rng.rational(), B = rng.rational();
    if (A == 0 && B == 0) A = 1;
    SymbolSpace g2 = equation_symbol(prolong_equation(rank1(cst(2, T, A), cst(2, T, B), T)));
    RationalMatrix m(symbol_dim(2, 2), 1);
    m.col(0) = symbol_power({A, B}, 2, 1);
    c(g2.same_span(SymbolSpace::from_spanning(2, 2, m)), "g^2 is not the square line");
  }
}

// 5. Both normal forms are formally integrable with one-dimensional symbols.
void normal_forms_integrable(Checker& c) {
  const int T = 8;
  std::vector<LinearLieEquation> eqs{case1(T)};
  for (int m = 0; m <= 3; ++m) eqs.push_back(case2(xpow(T, m), T));
  for (const auto& R : eqs) {
    auto r = check_formal_integrability(R);
    c(r.verdict == Integrability::formally_integrable, "verdict");
    for (const auto& s : r.steps) c(s.symbol_dim == 1 && s.prolonged_symbol_dim == 1, "dim g^l != 1");
  }
}

// 6. Classification table and solution families.
void classification(Checker& c) {
  const int T = 8;
  Rng rng(1006);
  Series x = var(2, T, 0), y = var(2, T, 1), one = cst(2, T, 1), zero(2, T);
  for (int t = 0; t < 5; ++t) {
    Series a = random_series(rng, 2, T, 3, 1);
    Series b = cst(2, T, rng.rational(true)) + random_series(rng, 2, T, 3, 1);
    c(classify_plane_rank1(a, b).case_number == 1, "Case 1 when A(0) = 0 and B(0) != 0");
  }
  for (int m = 1; m <= 4; ++m) {
    Series unit = cst(2, T, rng.rational(true)) + random_series(rng, 2, T, 2, 1);
    Series A = cst(2, T, rng.rational(true)) + random_series(rng, 2, T, 2, 1);
    auto cl = classify_plane_rank1(A, xpow(T, m) * unit);
    c(cl.case_number == 2 && cl.valuation == m && cl.normal_form_beta == xpow(T, m), "Case 2 valuation");
  }
  auto c0 = classify_plane_rank1(one, zero);
  c(c0.case_number == 2 && !c0.valuation && c0.normal_form_beta.is_zero(), "Case 2 with beta = 0");

  for (int t = 0; t < 3; ++t) {
    Series th = random_series(rng, 1, T, 4, 1);
    c(check_solution_family(case1(T), {zero, th.compose({y})}), "theta(y) d/dy");
    c(check_solution_family(case2(x, T), {zero, th.compose({x * exp_series(y)})}), "theta(x e^y) d/dy");
    c(check_solution_family(case2(zero, T), {zero, th.compose({x})}), "theta(x) d/dy");
  }
  c(!check_solution_family(case1(T), {zero, x}), "non-solution accepted");
}

// 7. Bracket tables of the normal forms and the order-2 structure equation.
void bracket_tables(Checker& c) {
  const int T = 8;
  Rng rng(1007);
  Series one = cst(2, T, 1);
  auto a1 = bracket_table(case1(T), 1);
  c(a1.coefficient(1, 2, "pi0(Y0)") == one && a1.coefficient(0, 1, "pi0(Y0)").is_zero() &&
        a1.coefficient(0, 2, "pi0(Y0)").is_zero(),
    "Case 1 table");
  for (int m = 0; m <= 3; ++m) {
    auto a2 = bracket_table(case2(xpow(T, m), T), 1);
    c(a2.coefficient(0, 2, "pi0(Y0)") == -one && a2.coefficient(1, 2, "pi0(Y0)") == xpow(T, m) &&
          a2.coefficient(0, 1, "pi0(Y0)").is_zero(),
      "Case 2 table");
  }
  Series x = var(2, T, 0), y = var(2, T, 1);
  for (int t = 0; t < 4; ++t) {
    Series h = x + random_series(rng, 2, T, 3, 2, 0.5).remap(2, {0, -1});
    Series g = y + random_series(rng, 2, T, 3, 2, 0.5);
    Series b = t % 2 ? x + x * x * Rational(2) : one + x;
    auto alg = bracket_table(pushforward_equation(GroupoidSection::holonomic({h, g}, 2), case2(b, T)), 2);
    Series bb = alg.coefficient(1, 2, "pi1(Y0)");
    Series a = -alg.coefficient(0, 2, "pi1(Y0)");
    Series rel = bb.derive(0) - a * alg.coefficient(1, 2, "pi1(Y1)") - bb * alg.coefficient(0, 2, "pi1(Y1)");
    c(rel.is_zero() && rel.prec() >= T - 3, "structure equation");
  }
}

// 8. Groupoid laws and the nonlinear Spencer operator.
void groupoid_laws(Checker& c) {
  Rng rng(1008);
  const int n = 2, k = 1, T = 4, deg = 2;
  auto id = GroupoidSection::identity(n, k + 1, n, T);
  for (int t = 0; t < 50; ++t) {
    auto a = random_groupoid(rng, n, k + 1, T, deg), b = random_groupoid(rng, n, k + 1, T, deg),
         d = random_groupoid(rng, n, k + 1, T, deg);
    c(compose(a, compose(b, d)) == compose(compose(a, b), d), "associativity");
    c(compose(a, invert(a)) == id && compose(invert(a), a) == id, "inverse");
    for (const auto& u : nonlinear_spencer_D(GroupoidSection::holonomic(random_diffeo(rng, n, T, deg), k + 1)))
      c(u.is_zero(), "D of a holonomic section");
    auto Da = nonlinear_spencer_D(a), Db = nonlinear_spencer_D(b);
    SpencerOneForm cocycle = push_form(invert(b), Da);
    for (std::size_t j = 0; j < cocycle.size(); ++j) cocycle[j] += Db[j];
    c(same_form(nonlinear_spencer_D(compose(a, b)), cocycle), "cocycle");
    SpencerOneForm neg;
    for (const auto& u : push_form(a, Da)) neg.push_back(-u);
    c(same_form(nonlinear_spencer_D(invert(a)), neg), "inverse formula");
    c(d1_curvature(Da).is_zero(), "D1 D != 0");
  }
}

// 9. Linearization of the nonlinear operator at the identity.
void linearization(Checker& c) {
  Rng rng(1009);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.uniform(1, 2);
    const int k = 1, T = 5, sv = n + 1;
    JetSection xi = random_jet(rng, n, k + 1, T, 2);
    std::vector<int> embed(n), drop_t(sv);
    for (int i = 0; i < n; ++i) embed[i] = drop_t[i] = i;
    drop_t[n] = -1;
    Series tvar = var(sv, T, n);
    JetSection J = GroupoidSection::identity(n, k + 1, sv, T).jets();
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < J.jet_count(); ++a) J.at(i, a) += tvar * xi.at(i, a).remap(sv, embed);
    auto D = nonlinear_spencer_D(GroupoidSection(J));
    auto expect = spencer_D(xi);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < expect[j].jet_count(); ++a) {
          Series d = D[j].at(i, a).derive(n).remap(n, drop_t);
          c(d == expect[j].at(i, a) && d.prec() >= T - 3, "d/dt D sigma_t != D xi");
        }
  }
}

// 10. The first bracket is equivariant under the groupoid action.
void equivariance(Checker& c) {
  Rng rng(1010);
  const int n = 2, k = 1, T = 5, deg = 2;
  for (int t = 0; t < 50; ++t) {
    auto s = random_groupoid(rng, n, k + 2, T, deg);
    auto a = random_checked(rng, n, k + 1, T, deg), b = random_checked(rng, n, k + 1, T, deg);
    auto lhs = first_bracket(groupoid_action(s, a), groupoid_action(s, b));
    c(lhs == groupoid_action(project(s, k + 1), first_bracket(a, b)) && lhs.vertical.min_prec() >= T - 4,
      "equivariance");
  }
  // Holonomic actions agree with pushing fields forward.
  for (int t = 0; t < 5; ++t) {
    auto f = random_diffeo(rng, n, T, deg);
    VectorField th = random_field(rng, n, T, deg);
    CheckedSection out = groupoid_action(GroupoidSection::holonomic(f, k + 1), vertical_only(holonomic_lift(th, k)));
    c(out.vertical == holonomic_lift(push_oracle(f, th), k), "holonomic action");
  }
}

// 11. Flatness and parallel extension.
void connections(Checker& c) {
  Rng rng(1011);
  const int T = 7;
  for (int t = 0; t < 10; ++t) {
    JetSection o = random_jet(rng, 2, 2, T, 3);
    o.at(0, 0) = Series(2, T);
    o.at(1, 0) = cst(2, T, 1);
    c(curvature(PartialConnection({1}, {o})).flat, "dim V = 1 connection not flat");
  }
  c(curvature(PartialConnection::trivial(3, {1, 2}, 1, T)).flat, "product connection not flat");

  Series x = var(2, T, 0), y = var(2, T, 1), one = cst(2, T, 1);
  auto R = case1(T);
  for (int t = 0; t < 5; ++t) {
    // omega with values in the prolonged equation: only y-derivatives in the fiber direction.
    JetSection om(2, 2, 2, T);
    om.at(1, {0, 0}) = one;
    om.at(1, {0, 1}) = random_series(rng, 2, T, 3);
    om.at(1, {0, 2}) = random_series(rng, 2, T, 3);
    PartialConnection conn({1}, {om});
    JetSection b(2, 1, 2, T);
    b.at(1, {0, 0}) = random_series(rng, 2, T, 3).remap(2, {0, -1});
    b.at(1, {0, 1}) = random_series(rng, 2, T, 3).remap(2, {0, -1});
    CheckedSection bd{{random_series(rng, 2, T, 3), Series(2, T)}, b};
    CheckedSection S = parallel_extend(conn, bd);
    c(S.horizontal[1].is_zero() && R.contains(S.vertical), "parallel extension left H + R^k");
    c(nabla_apply(conn, S, 0).is_zero(), "extension not parallel");
  }
}

// 12. Formal isomorphism verifier.
void isomorphism(Checker& c) {
  const int T = 6;
  Series x = var(2, T, 0), y = var(2, T, 1), one = cst(2, T, 1);
  auto R = case2(x * x, T);
  auto id = GroupoidSection::identity(2, 2, 2, T);
  c(verify_formal_isomorphism(id, R, R).passed(), "identity");
  auto F = GroupoidSection::holonomic({2 * x, y}, 2);
  c(verify_formal_isomorphism(F, R, case2(x * x * Rational(1, 2), T)).passed(), "rescaling");
  JetSection J = id.jets();
  J.at(1, {1, 1}) += one;
  auto bad = verify_formal_isomorphism(GroupoidSection(J), R, R);
  c(bad.base_ok && !bad.spencer_ok && bad.witness_direction.has_value() && bad.witness_relation >= 0,
    "perturbed section not rejected with a witness");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria{
      {"Spencer operator kills jets and squares to zero", spencer_linearity},
      {"full symbol complexes are exact", delta_exactness},
      {"first bracket laws and closed formula", bracket_laws},
      {"rank-one prolonged symbols", rank_one_symbols},
      {"normal forms formally integrable", normal_forms_integrable},
      {"plane classification and solution families", classification},
      {"normal form bracket tables", bracket_tables},
      {"groupoid laws", groupoid_laws},
      {"linearization at the identity", linearization},
      {"action equivariance", equivariance},
      {"partial connections", connections},
      {"isomorphism verifier", isomorphism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker c;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.first_failure = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu %s  %-48s checks=%d  %.2fs%s%s\n", i + 1, c.ok ? "PASS" : "FAIL",
                criteria[i].first.c_str(), c.checks, secs, c.ok ? "" : "  first failure: ", c.first_failure.c_str());
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
