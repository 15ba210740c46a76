#include "lieq/intransitive_algebra.hpp"

#include <algorithm>

namespace lieq {

namespace {

std::vector<int> transversal_vars(const LinearLieEquation& R) {
  std::vector<int> out;
  for (int i = 0; i < R.n_base(); ++i)
    if (!std::binary_search(R.fiber().begin(), R.fiber().end(), i)) out.push_back(i);
  return out;
}

std::vector<Series> flatten(const CheckedSection& s) {
  std::vector<Series> v = s.horizontal;
  for (int i = 0; i < s.n_base(); ++i)
    for (int a = 0; a < s.vertical.jet_count(); ++a) v.push_back(s.vertical.at(i, a));
  return v;
}

}  // namespace

std::vector<JetSection> restrict_to_transversal(const LinearLieEquation& R, int j) {
  if (R.fiber().empty()) throw DimensionError("restriction needs a nonempty fiber distribution");
  if (j < R.order()) throw OrderError("restriction order below the equation order");
  LinearLieEquation P = R;
  while (P.order() < j) P = prolong_equation(P);
  const int n = R.n_base();
  std::vector<int> to_N(n);
  for (int v = 0; v < n; ++v) to_N[v] = std::binary_search(R.fiber().begin(), R.fiber().end(), v) ? -1 : v;
  std::vector<JetSection> out;
  for (auto s : P.spanning_sections()) {
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < s.jet_count(); ++a)
        if (!s.at(i, a).is_zero()) s.at(i, a) = s.at(i, a).remap(n, to_N);
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<std::vector<Series>> solve_in_span(const std::vector<CheckedSection>& basis, const CheckedSection& target) {
  const int m = static_cast<int>(basis.size());
  std::vector<std::vector<Series>> cols;
  for (const auto& b : basis) cols.push_back(flatten(b));
  std::vector<Series> rhs = flatten(target);
  const int rows = static_cast<int>(rhs.size());
  // M[r] = (basis coordinates..., target coordinate)
  std::vector<std::vector<Series>> M(rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < m; ++c) {
      if (static_cast<int>(cols[c].size()) != rows) throw DimensionError("basis and target have different shapes");
      M[r].push_back(cols[c][r]);
    }
    M[r].push_back(rhs[r]);
  }
  std::vector<int> pivot_row(m, -1);
  std::vector<bool> used(rows, false);
  for (int c = 0; c < m; ++c) {
    int r0 = -1;
    for (int r = 0; r < rows; ++r)
      if (!used[r] && RingTraits<Series>::is_unit(M[r][c])) {
        r0 = r;
        break;
      }
    if (r0 < 0) throw NonRegularError("basis is not free at the base point");
    used[r0] = true;
    pivot_row[c] = r0;
    Series inv = M[r0][c].reciprocal();
    for (auto& e : M[r0]) e = e * inv;
    for (int r = 0; r < rows; ++r) {
      if (r == r0 || M[r][c].is_zero()) continue;
      Series f = M[r][c];
      for (int cc = 0; cc <= m; ++cc) M[r][cc] -= f * M[r0][cc];
    }
  }
  for (int r = 0; r < rows; ++r)
    if (!used[r] && !M[r][m].is_zero()) return std::nullopt;
  std::vector<Series> out;
  for (int c = 0; c < m; ++c) out.push_back(M[pivot_row[c]][m]);
  return out;
}

Series IntransitiveAlgebra::coefficient(int a, int b, const std::string& label) const {
  auto li = std::find(lower_labels.begin(), lower_labels.end(), label);
  if (li == lower_labels.end()) throw InputError("unknown basis label " + label);
  const auto idx = li - lower_labels.begin();
  for (const auto& e : table) {
    if (e.a == a && e.b == b) return e.coefficients[idx];
    if (e.a == b && e.b == a) return -e.coefficients[idx];
  }
  if (a == b) return lower_basis[0].horizontal[0].zero_like();
  throw InputError("no bracket entry for the requested pair");
}

IntransitiveAlgebra bracket_table(const LinearLieEquation& R, int j) {
  if (j < 1) throw OrderError("bracket table needs order >= 1");
  const int n = R.n_base();
  const int T = R.trunc();
  IntransitiveAlgebra alg;
  alg.n_base = n;
  alg.order = j;
  alg.transversal = transversal_vars(R);
  auto names = default_var_names(n);
  auto vertical = restrict_to_transversal(R, j);
  JetSection zero_top(n, j, n, T);
  JetSection zero_low(n, j - 1, n, T);
  auto field = [&](int t) {
    VectorField v(n, Series(n, T));
    v[t] = Series::constant(n, T, 1);
    return v;
  };
  for (int t : alg.transversal) {
    std::string lab = alg.transversal.size() == 1 ? "Y-1" : "Y-1_" + names[t];
    alg.generators.push_back(CheckedSection{field(t), zero_top});
    alg.labels.push_back(lab);
    alg.lower_basis.push_back(CheckedSection{field(t), zero_low});
    alg.lower_labels.push_back(lab);
  }
  for (std::size_t c = 0; c < vertical.size(); ++c) {
    const std::string lab = "Y" + std::to_string(c);
    alg.generators.push_back(CheckedSection{VectorField(n, Series(n, T)), vertical[c]});
    alg.labels.push_back(lab);
    JetSection low = project(vertical[c], j - 1);
    if (low.is_zero()) continue;
    alg.lower_basis.push_back(CheckedSection{VectorField(n, Series(n, T)), low});
    alg.lower_labels.push_back("pi" + std::to_string(j - 1) + "(" + lab + ")");
  }
  const int g = static_cast<int>(alg.generators.size());
  for (int a = 0; a < g; ++a)
    for (int b = a + 1; b < g; ++b) {
      CheckedSection br = first_bracket(alg.generators[a], alg.generators[b]);
      auto coeffs = solve_in_span(alg.lower_basis, br);
      if (!coeffs)
        throw ClosureError("bracket of " + alg.labels[a] + " and " + alg.labels[b] + " leaves the order " +
                           std::to_string(j - 1) + " span");
      alg.table.push_back(BracketEntry{a, b, std::move(*coeffs)});
    }
  return alg;
}

PlaneClassification classify_plane_rank1(const Series& A, const Series& B) {
  if (A.n_vars() != 2 || B.n_vars() != 2) throw DimensionError("plane classification needs series in (x, y)");
  if (A.constant_term() == 0 && B.constant_term() == 0)
    throw NonRegularError("symbol not of constant rank: A and B both vanish at the origin");
  const std::vector<int> to_N{0, -1};
  Series a = A.remap(2, to_N);
  Series b = B.remap(2, to_N);
  PlaneClassification c;
  c.normal_form_beta = Series(2, A.trunc());
  if (b.constant_term() != 0) {
    c.case_number = 1;
    c.valuation = 0;
    c.precision = b.prec();
    return c;
  }
  c.case_number = 2;
  Series q = b * a.reciprocal();
  c.precision = q.prec();
  if (q.is_zero()) return c;
  c.valuation = q.valuation();
  MultiIndex e{*c.valuation, 0};
  c.normal_form_beta.set(e, 1);
  return c;
}

std::pair<Series, Series> plane_symbol(const LinearLieEquation& R) {
  if (R.n_base() != 2 || R.order() != 1 || R.fiber() != std::vector<int>{1})
    throw InputError("plane classification needs a first-order equation on (x, y) with V = d/dy");
  const int c10 = R.column(1, {1, 0});
  const int c01 = R.column(1, {0, 1});
  int found = -1;
  for (int r = 0; r < R.rank(); ++r)
    if (!R.rows()[r][c10].is_zero() || !R.rows()[r][c01].is_zero()) {
      if (found >= 0) throw InputError("plane classification needs exactly one first-order relation");
      found = r;
    }
  if (found < 0) throw InputError("plane classification needs exactly one first-order relation");
  const auto& row = R.rows()[found];
  return {-row[c01], row[c10]};
}

LinearLieEquation plane_normal_form(const PlaneClassification& c, int trunc) {
  const Series one = Series::constant(2, trunc, 1);
  LinearRelation rel;
  if (c.case_number == 1) {
    rel.terms.push_back({JetCoordinate{1, {1, 0}}, one});
  } else {
    rel.terms.push_back({JetCoordinate{1, {0, 1}}, one});
    Series beta = c.normal_form_beta.resized(trunc, true);
    if (!beta.is_zero()) rel.terms.push_back({JetCoordinate{1, {1, 0}}, -beta});
  }
  return LinearLieEquation::build(2, 1, trunc, {1}, true, {rel});
}

bool check_solution_family(const LinearLieEquation& R, const VectorField& theta) {
  if (static_cast<int>(theta.size()) != R.n_base()) throw DimensionError("field has the wrong number of components");
  return R.contains(holonomic_lift(theta, R.order(), R.n_base()));
}

}  // namespace lieq
