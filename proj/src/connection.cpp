#include "lieq/connection.hpp"

#include <algorithm>

namespace lieq {

namespace {

CheckedSection derive(const CheckedSection& s, int var) {
  CheckedSection out = s;
  for (auto& h : out.horizontal) h = h.derive(var);
  for (int i = 0; i < s.n_base(); ++i)
    for (int a = 0; a < s.vertical.jet_count(); ++a) out.vertical.at(i, a) = s.vertical.at(i, a).derive(var);
  return out;
}

CheckedSection integrate(const CheckedSection& s, int var) {
  CheckedSection out = s;
  for (auto& h : out.horizontal) h = h.integrate(var);
  for (int i = 0; i < s.n_base(); ++i)
    for (int a = 0; a < s.vertical.jet_count(); ++a) out.vertical.at(i, a) = s.vertical.at(i, a).integrate(var);
  return out;
}

CheckedSection remap(const CheckedSection& s, const std::vector<int>& target) {
  CheckedSection out = s;
  const int n = s.n_base();
  for (auto& h : out.horizontal) h = h.remap(n, target);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < s.vertical.jet_count(); ++a) out.vertical.at(i, a) = s.vertical.at(i, a).remap(n, target);
  return out;
}

}  // namespace

PartialConnection::PartialConnection(std::vector<int> fiber, std::vector<JetSection> omega)
    : fiber_(std::move(fiber)), omega_(std::move(omega)) {
  if (fiber_.empty() || fiber_.size() != omega_.size()) throw DimensionError("connection needs one value per fiber direction");
  const int n = omega_[0].n_base();
  for (std::size_t w = 0; w < omega_.size(); ++w) {
    const JetSection& om = omega_[w];
    if (om.n_base() != n || om.order() != omega_[0].order() || om.trunc() != omega_[0].trunc())
      throw DimensionError("connection values disagree in shape");
    if (om.order() < 1) throw OrderError("connection values need order >= 1");
    for (int i = 0; i < n; ++i) {
      Series expect = Series::constant(om.series_vars(), om.trunc(), i == fiber_[w] ? 1 : 0);
      if (!(om.at(i, 0) == expect)) throw TildeError("order-zero part of omega(w) must be w");
    }
  }
}

PartialConnection PartialConnection::trivial(int n_base, std::vector<int> fiber, int order, int trunc) {
  std::vector<JetSection> omega;
  for (int w : fiber) {
    JetSection om(n_base, order + 1, n_base, trunc);
    om.at(w, 0) = Series::constant(n_base, trunc, 1);
    omega.push_back(om);
  }
  return PartialConnection(std::move(fiber), std::move(omega));
}

CheckedSection PartialConnection::tilde_omega(int w) const { return tilde(omega_.at(w)); }

CheckedSection nabla_apply(const PartialConnection& conn, const CheckedSection& cs, int w) {
  if (cs.order() != conn.order()) throw OrderError("section order differs from the connection order");
  for (int v : conn.fiber())
    if (!cs.horizontal[v].is_zero()) throw DimensionError("horizontal part must lie in H");
  return third_bracket(conn.tilde_omega(w), cs);
}

CurvatureReport curvature(const PartialConnection& conn) {
  CurvatureReport rep;
  const int m = static_cast<int>(conn.fiber().size());
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      CheckedSection c = second_bracket(conn.tilde_omega(a), conn.tilde_omega(b));
      if (!c.is_zero()) rep.flat = false;
      rep.components.push_back({{a, b}, std::move(c)});
    }
  return rep;
}

CheckedSection parallel_extend(const PartialConnection& conn, const CheckedSection& boundary) {
  auto curv = curvature(conn);
  if (!curv.flat) {
    for (const auto& [pair, c] : curv.components)
      if (!c.is_zero())
        throw ObstructionError("connection is not flat: curvature on fiber directions " + std::to_string(pair.first) +
                               ", " + std::to_string(pair.second) + " is nonzero");
  }
  const int n = conn.n_base();
  std::vector<int> to_N(n);
  for (int v = 0; v < n; ++v)
    to_N[v] = std::find(conn.fiber().begin(), conn.fiber().end(), v) != conn.fiber().end() ? -1 : v;
  CheckedSection S = remap(boundary, to_N);
  for (std::size_t w = 0; w < conn.fiber().size(); ++w) {
    const int y = conn.fiber()[w];
    const CheckedSection start = S;
    // d_y S = -L S where L S = nabla_w S - d_y S has no derivatives of S.
    for (int it = 0; it <= conn.trunc(); ++it) {
      CheckedSection L = nabla_apply(conn, S, static_cast<int>(w)) - derive(S, y);
      CheckedSection next = start - integrate(L, y);
      if (next == S) break;
      S = std::move(next);
    }
  }
  return S;
}

}  // namespace lieq
