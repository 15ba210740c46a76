#include "lieq/bracket.hpp"

namespace lieq {

namespace {

void check_same_shape(const JetSection& a, const JetSection& b) {
  if (a.order() != b.order()) throw OrderError("bracket arguments have different orders");
  if (a.n_base() != b.n_base() || a.series_vars() != b.series_vars() || a.trunc() != b.trunc())
    throw DimensionError("bracket arguments live over different bases");
}

void check_lift(const JetSection& lift, const JetSection& base) {
  if (lift.order() != base.order() + 1) throw LiftError("lift must have exactly one more order");
  if (!(project(lift, base.order()) == base)) throw LiftError("lift does not project onto its section");
}

}  // namespace

JetSection algebraic_bracket(const JetSection& X, const JetSection& Y) {
  check_same_shape(X, Y);
  if (X.order() < 1) throw OrderError("algebraic bracket needs order >= 1");
  const int n = X.n_base();
  const MonomialLayout& L = X.index_layout();
  JetSection out = JetSection::zero_like(X, X.order() - 1);
  for (int g = 0; g < out.jet_count(); ++g) {
    const MultiIndex& gamma = out.index(g);
    for (int d = 0; d < out.jet_count(); ++d) {
      const MultiIndex& delta = out.index(d);
      if (!dominated(delta, gamma)) continue;
      const Rational c(multi_binomial(gamma, delta));
      const int rest = L.index_of(subtract(gamma, delta));
      for (int j = 0; j < n; ++j) {
        const int up = L.raise(rest, j);
        const Series& xj = X.at(j, d);
        const Series& yj = Y.at(j, d);
        bool xz = xj.is_zero();
        bool yz = yj.is_zero();
        if (xz && yz) continue;
        for (int i = 0; i < n; ++i) {
          Series term = X.at(i, 0).zero_like();
          if (!xz) term += xj * Y.at(i, up);
          if (!yz) term -= yj * X.at(i, up);
          out.at(i, g) += term * c;
        }
      }
    }
  }
  return out;
}

JetSection algebraic_bracket_oracle(const JetSection& X, const JetSection& Y) {
  check_same_shape(X, Y);
  if (X.order() < 1) throw OrderError("algebraic bracket needs order >= 1");
  using Poly = TruncatedSeries<Series>;
  const int n = X.n_base();
  const int k = X.order();
  const Series zero = X.zero_series();
  auto representative = [&](const JetSection& J) {
    std::vector<Poly> field;
    for (int i = 0; i < n; ++i) {
      Poly p(n, k, zero);
      for (int a = 0; a < J.jet_count(); ++a)
        p.set(J.index(a), J.at(i, a) * Rational(1, multi_factorial(J.index(a))));
      field.push_back(p);
    }
    return field;
  };
  auto theta = representative(X);
  auto mu = representative(Y);
  JetSection out = JetSection::zero_like(X, k - 1);
  for (int i = 0; i < n; ++i) {
    Poly b(n, k, zero);
    for (int j = 0; j < n; ++j) b += theta[j] * mu[i].derive(j) - mu[j] * theta[i].derive(j);
    for (int a = 0; a < out.jet_count(); ++a)
      out.at(i, a) = b.coeff(out.index(a)) * Rational(multi_factorial(out.index(a)));
  }
  return out;
}

CheckedSection first_bracket(const CheckedSection& a, const CheckedSection& b) {
  check_same_shape(a.vertical, b.vertical);
  if (a.order() < 1) throw OrderError("first bracket needs order >= 1");
  const int n = a.n_base();
  CheckedSection out;
  out.horizontal = field_bracket(a.horizontal, b.horizontal, n);
  out.vertical = contract_D(a.horizontal, b.vertical) - contract_D(b.horizontal, a.vertical) +
                 algebraic_bracket(a.vertical, b.vertical);
  return out;
}

CheckedSection second_bracket(const CheckedSection& a, const CheckedSection& b, const std::optional<JetSection>& lift_a,
                              const std::optional<JetSection>& lift_b) {
  check_same_shape(a.vertical, b.vertical);
  if (!is_tilde(a) || !is_tilde(b)) throw TildeError("second bracket needs tilde sections");
  const int k = a.order();
  JetSection la = lift_a ? *lift_a : zero_extend(a.vertical, k + 1);
  JetSection lb = lift_b ? *lift_b : zero_extend(b.vertical, k + 1);
  check_lift(la, a.vertical);
  check_lift(lb, b.vertical);
  CheckedSection out;
  out.horizontal = field_bracket(a.horizontal, b.horizontal, a.n_base());
  out.vertical = contract_D(a.horizontal, lb) - contract_D(b.horizontal, la) + algebraic_bracket(la, lb);
  return out;
}

CheckedSection third_bracket(const CheckedSection& a, const CheckedSection& b, const std::optional<JetSection>& lift_b) {
  if (a.order() != b.order() + 1) throw OrderError("third bracket needs orders k+1 and k");
  if (!is_tilde(a)) throw TildeError("third bracket needs its first argument in tilde form");
  JetSection lb = lift_b ? *lift_b : zero_extend(b.vertical, a.order());
  check_lift(lb, b.vertical);
  return first_bracket(a, CheckedSection{b.horizontal, lb});
}

}  // namespace lieq
