#include "lieq/groupoid.hpp"

#include <numeric>

namespace lieq {

namespace {

using Poly = TruncatedSeries<Series>;

void check_pair(const GroupoidSection& a, const GroupoidSection& b) {
  if (a.n_base() != b.n_base() || a.series_vars() != b.series_vars() || a.trunc() != b.trunc())
    throw DimensionError("groupoid sections live over different charts");
}

/** s(f(x), t) with the parameter variables left in place. */
Series substitute(const Series& s, const std::vector<Series>& f) {
  std::vector<Series> args = f;
  for (int v = static_cast<int>(f.size()); v < s.n_vars(); ++v)
    args.push_back(Series::variable(s.n_vars(), s.trunc(), v));
  return s.compose(args);
}

JetSection substitute(const JetSection& xi, const std::vector<Series>& f) {
  JetSection out = JetSection::zero_like(xi, xi.order());
  for (int i = 0; i < xi.n_base(); ++i)
    for (int a = 0; a < xi.jet_count(); ++a)
      if (!xi.at(i, a).is_zero()) out.at(i, a) = substitute(xi.at(i, a), f);
  return out;
}

std::vector<Series> base_inverse(const std::vector<Series>& f) {
  const int n = static_cast<int>(f.size());
  const int vars = f[0].n_vars();
  std::vector<Series> padded = f;
  for (int v = n; v < vars; ++v) padded.push_back(Series::variable(vars, f[0].trunc(), v));
  auto g = series_reversion(padded);
  g.resize(n);
  return g;
}

/** Fiber polynomials P^i(u) = sum_{1 <= |a| <= deg} s^i_a u^a / a!, truncated in u at the section order. */
std::vector<Poly> fiber_polys(const JetSection& jets, int deg) {
  const int n = jets.n_base();
  std::vector<Poly> out;
  for (int i = 0; i < n; ++i) {
    Poly p(n, jets.order(), jets.zero_series());
    for (int a = 1; a < jets.jet_count(); ++a) {
      const MultiIndex& al = jets.index(a);
      if (order(al) > deg || jets.at(i, a).is_exact_zero()) continue;
      p.set(al, jets.at(i, a) * Rational(1, multi_factorial(al)));
    }
    out.push_back(p);
  }
  return out;
}

/** Taylor polynomial of a jet section: sum_a xi_a u^a / a!, truncated at trunc_u. */
std::vector<Poly> taylor_polys(const JetSection& xi, int trunc_u) {
  const int n = xi.n_base();
  std::vector<Poly> out;
  for (int i = 0; i < n; ++i) {
    Poly p(n, trunc_u, xi.zero_series());
    for (int a = 0; a < xi.jet_count(); ++a)
      if (!xi.at(i, a).is_exact_zero()) p.set(xi.index(a), xi.at(i, a) * Rational(1, multi_factorial(xi.index(a))));
    out.push_back(p);
  }
  return out;
}

/** Reads the jets of order <= k at u = 0 from polynomials. */
JetSection read_jets(const std::vector<Poly>& polys, int k, const JetSection& like) {
  JetSection out = JetSection::zero_like(like, k);
  for (int i = 0; i < out.n_base(); ++i)
    for (int a = 0; a < out.jet_count(); ++a)
      out.at(i, a) = polys[i].coeff(out.index(a)) * Rational(multi_factorial(out.index(a)));
  return out;
}

/** Pointwise data of s at x reused by every Ad evaluation. */
struct AdData {
  RingMatrix<Poly> DP;
  std::vector<Poly> Q;
  int k = 0;
};

AdData ad_data(const GroupoidSection& s) {
  if (s.order() < 1) throw OrderError("adjoint action needs a section of order >= 1");
  AdData d;
  auto P = fiber_polys(s.jets(), s.order());
  d.DP = jacobian(P);
  d.Q = series_reversion(P);
  d.k = s.order() - 1;
  return d;
}

/** Ad(s(x)) xi(x) as a function of the source point x. */
JetSection ad_pointwise(const AdData& d, const JetSection& xi) {
  if (xi.order() != d.k) throw OrderError("adjoint action needs a section one order above the jet");
  const int n = xi.n_base();
  auto theta = taylor_polys(xi, d.k + 1);
  std::vector<Poly> W;
  for (int i = 0; i < n; ++i) {
    Poly w = theta[0].zero_like();
    for (int l = 0; l < n; ++l)
      if (!theta[l].is_exact_zero()) w += d.DP[i][l] * theta[l];
    W.push_back(w.compose(d.Q));
  }
  return read_jets(W, d.k, xi);
}

/** Derivative of the base map; differs from the order-one jets unless the section is holonomic. */
RingMatrix<Series> base_jacobian(const GroupoidSection& s) {
  RingMatrix<Series> J(s.n_base());
  for (int i = 0; i < s.n_base(); ++i)
    for (int j = 0; j < s.n_base(); ++j) J[i].push_back(s.jets().at(i, 0).derive(j));
  return J;
}

}  // namespace

GroupoidSection::GroupoidSection(JetSection jets) : jets_(std::move(jets)) {
  const int n = jets_.n_base();
  for (int i = 0; i < n; ++i)
    if (jets_.at(i, 0).prec() >= 0 && jets_.at(i, 0).constant_term() != 0)
      throw RecenteringError("base map must send the origin to the origin");
  if (jets_.order() < 1) throw OrderError("groupoid section needs order >= 1");
  RationalMatrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = jets_.at(i, unit_index(n, j)).constant_term();
  if (exact_rank(A) != n) throw NonUnitError("section is not invertible: singular linear part");
}

GroupoidSection GroupoidSection::identity(int n_base, int order, int series_vars, int trunc) {
  VectorField id;
  for (int i = 0; i < n_base; ++i) id.push_back(Series::variable(series_vars, trunc, i));
  return holonomic(id, order, n_base);
}

GroupoidSection GroupoidSection::holonomic(const std::vector<Series>& f, int order, int n_base) {
  return GroupoidSection(holonomic_lift(f, order, n_base < 0 ? static_cast<int>(f.size()) : n_base));
}

std::vector<Series> GroupoidSection::base_map() const {
  std::vector<Series> f;
  for (int i = 0; i < n_base(); ++i) f.push_back(jets_.at(i, 0));
  return f;
}

GroupoidSection project(const GroupoidSection& s, int l) {
  if (l == s.order()) return s;
  return GroupoidSection(project(s.jets(), l));
}

GroupoidSection compose(const GroupoidSection& a, const GroupoidSection& b) {
  check_pair(a, b);
  if (a.order() != b.order()) throw OrderError("composed sections must have the same order");
  const int n = a.n_base();
  const auto fb = b.base_map();
  JetSection moved = substitute(a.jets(), fb);
  auto Pa = fiber_polys(moved, a.order());
  auto Pb = fiber_polys(b.jets(), b.order());
  std::vector<Poly> R;
  for (int i = 0; i < n; ++i) R.push_back(Pa[i].compose(Pb));
  JetSection out = read_jets(R, a.order(), a.jets());
  for (int i = 0; i < n; ++i) out.at(i, 0) = moved.at(i, 0);
  return GroupoidSection(std::move(out));
}

GroupoidSection invert(const GroupoidSection& s) {
  const int n = s.n_base();
  const auto g = base_inverse(s.base_map());
  auto Q = series_reversion(fiber_polys(s.jets(), s.order()));
  JetSection out = substitute(read_jets(Q, s.order(), s.jets()), g);
  for (int i = 0; i < n; ++i) out.at(i, 0) = g[i];
  return GroupoidSection(std::move(out));
}

SpencerOneForm nonlinear_spencer_D(const GroupoidSection& s) {
  const int n = s.n_base();
  const int K = s.order();
  const int k = K - 1;
  const JetSection& J = s.jets();
  auto P = fiber_polys(J, K);
  auto inv = ring_matrix_inverse(jacobian(P));
  SpencerOneForm out;
  for (int j = 0; j < n; ++j) {
    std::vector<Poly> rhs;
    for (int i = 0; i < n; ++i) {
      Poly r(n, K, J.zero_series());
      for (int a = 0; a < J.jet_count(); ++a) {
        const MultiIndex& al = J.index(a);
        if (order(al) > k || J.at(i, a).is_exact_zero()) continue;
        r.set(al, J.at(i, a).derive(j) * Rational(1, multi_factorial(al)));
      }
      rhs.push_back(r);
    }
    JetSection v = read_jets(ring_matrix_apply(inv, rhs), k, J);
    v.at(j, 0) -= Series::constant(s.series_vars(), s.trunc(), 1);
    out.push_back(std::move(v));
  }
  return out;
}

JetForm d1_curvature(const SpencerOneForm& u) {
  if (u.empty()) throw DimensionError("empty one-form");
  const int n = u[0].n_base();
  const int k = u[0].order();
  if (k < 1) throw OrderError("curvature needs a one-form of order >= 1");
  if (static_cast<int>(u.size()) != n) throw DimensionError("one-form needs one value per base direction");
  std::vector<std::vector<JetSection>> Du;
  for (const auto& ua : u) Du.push_back(spencer_D(ua));
  JetForm out{2, n, k - 1, {}};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      JetSection c = Du[b][a] - Du[a][b] - algebraic_bracket(u[a], u[b]);
      out.terms.emplace(std::vector<int>{a, b}, std::move(c));
    }
  return out;
}

JetSection adjoint_action(const GroupoidSection& s, const JetSection& xi) {
  return substitute(ad_pointwise(ad_data(s), xi), base_inverse(s.base_map()));
}

VectorField push_vector(const GroupoidSection& s, const VectorField& v) {
  const int n = s.n_base();
  auto Df = base_jacobian(s);
  auto g = base_inverse(s.base_map());
  VectorField out;
  for (int i = 0; i < n; ++i) {
    Series acc = s.jets().zero_series();
    for (int l = 0; l < n; ++l) acc += Df[i][l] * v[l];
    out.push_back(substitute(acc, g));
  }
  return out;
}

CheckedSection groupoid_action(const GroupoidSection& s, const CheckedSection& cs) {
  if (s.order() != cs.order() + 1) throw OrderError("action needs a section one order above the checked section");
  auto Ds = nonlinear_spencer_D(s);
  JetSection w = cs.vertical;
  for (int j = 0; j < s.n_base(); ++j)
    if (!cs.horizontal[j].is_exact_zero()) w += cs.horizontal[j] * Ds[j];
  CheckedSection out;
  out.horizontal = push_vector(s, cs.horizontal);
  out.vertical = adjoint_action(s, w);
  return out;
}

SpencerOneForm push_form(const GroupoidSection& s, const SpencerOneForm& u) {
  const int n = s.n_base();
  if (static_cast<int>(u.size()) != n) throw DimensionError("one-form needs one value per base direction");
  auto Dinv = ring_matrix_inverse(base_jacobian(s));
  auto d = ad_data(s);
  auto g = base_inverse(s.base_map());
  SpencerOneForm out;
  for (int j = 0; j < n; ++j) {
    JetSection w = JetSection::zero_like(u[0], u[0].order());
    for (int i = 0; i < n; ++i) w += Dinv[i][j] * u[i];
    out.push_back(substitute(ad_pointwise(d, w), g));
  }
  return out;
}

LinearLieEquation pushforward_equation(const GroupoidSection& s_in, const LinearLieEquation& R) {
  const int n = R.n_base();
  const int k = R.order();
  if (s_in.n_base() != n || s_in.series_vars() != n) throw DimensionError("section and equation live over different charts");
  if (s_in.order() < k + 1) throw OrderError("pushforward needs a section of order >= equation order + 1");
  GroupoidSection s = project(s_in, k + 1);
  GroupoidSection sinv = invert(s);
  auto d = ad_data(sinv);
  auto g = sinv.base_map();
  const int cols = R.columns();
  const int count = R.jet_count();
  // M[c][c']: column c of Ad(s^{-1}) applied to the unit jet e_{c'}.
  std::vector<std::vector<Series>> M(cols);
  JetSection unit(n, k, n, s.trunc());
  for (int cp = 0; cp < cols; ++cp) {
    JetSection e = unit;
    e.at(cp / count, cp % count) = Series::constant(n, s.trunc(), 1);
    JetSection img = ad_pointwise(d, e);
    for (int c = 0; c < cols; ++c) M[c].push_back(img.at(c / count, c % count));
  }
  std::vector<std::vector<Series>> rows;
  for (const auto& row : R.rows()) {
    std::vector<Series> moved(cols, Series(n, s.trunc()));
    for (int c = 0; c < cols; ++c) {
      if (row[c].is_exact_zero()) continue;
      Series cc = substitute(row[c], g);
      for (int cp = 0; cp < cols; ++cp)
        if (!M[c][cp].is_exact_zero()) moved[cp] += cc * M[c][cp];
    }
    rows.push_back(std::move(moved));
  }
  return LinearLieEquation::from_rows(n, k, R.trunc(), R.fiber(), false, std::move(rows));
}

IsomorphismReport verify_formal_isomorphism(const GroupoidSection& F, const LinearLieEquation& R,
                                            const LinearLieEquation& Rp, const std::optional<std::vector<Series>>& phi) {
  const int n = R.n_base();
  if (F.n_base() != n || Rp.n_base() != n || F.series_vars() != n) throw DimensionError("chart mismatch");
  if (R.order() != Rp.order()) throw OrderError("equations have different orders");
  if (F.order() < R.order() + 1) throw OrderError("candidate needs order >= equation order + 1");
  IsomorphismReport rep;
  const auto& fib = R.fiber();
  auto f = F.base_map();
  rep.base_ok = true;
  std::vector<int> to_N(n);
  std::iota(to_N.begin(), to_N.end(), 0);
  for (int v : fib) to_N[v] = -1;
  for (int i = 0; i < n && rep.base_ok; ++i) {
    if (std::binary_search(fib.begin(), fib.end(), i)) continue;
    for (int v : fib)
      if (!f[i].derive(v).is_zero()) rep.base_ok = false;
    if (phi && !(f[i].remap(n, to_N) == (*phi)[i].remap(n, to_N))) rep.base_ok = false;
  }
  GroupoidSection G = project(F, R.order() + 1);
  rep.pushforward_ok = pushforward_equation(G, R).same_span(Rp);
  auto DF = nonlinear_spencer_D(G);
  rep.spencer_ok = true;
  for (int j = 0; j < n; ++j)
    if (auto bad = R.violated_relation(DF[j])) {
      rep.spencer_ok = false;
      rep.witness_direction = j;
      rep.witness_relation = *bad;
      break;
    }
  return rep;
}

}  // namespace lieq
