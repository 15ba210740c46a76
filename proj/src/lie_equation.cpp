#include "lieq/lie_equation.hpp"

#include <algorithm>
#include <numeric>

namespace lieq {

namespace {

bool row_is_zero(const std::vector<Series>& row) {
  return std::all_of(row.begin(), row.end(), [](const Series& s) { return s.is_zero(); });
}

std::string series_factor(const Series& c, const std::vector<std::string>& names) {
  std::string s = to_string(c, names);
  bool compound = s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos;
  return compound ? "(" + s + ")" : s;
}

}  // namespace

std::string coordinate_string(const JetCoordinate& c, const std::vector<std::string>& names_in) {
  auto names = names_in.empty() ? default_var_names(static_cast<int>(c.alpha.size())) : names_in;
  std::string s = "p_" + names[c.component] + "[";
  for (std::size_t i = 0; i < c.alpha.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c.alpha[i]);
  }
  return s + "]";
}

LinearLieEquation LinearLieEquation::build(int n_base, int order, int trunc, std::vector<int> fiber, bool restricted,
                                           const std::vector<LinearRelation>& relations) {
  if (order < 0) throw OrderError("negative equation order");
  const int count = multi_index_count(n_base, order);
  const int cols = n_base * count;
  auto layout = MonomialLayout::get(n_base, order);
  std::vector<std::vector<Series>> rows;
  for (const auto& rel : relations) {
    std::vector<Series> row(cols, Series(n_base, trunc));
    for (const auto& [coord, c] : rel.terms) {
      if (coord.component < 0 || coord.component >= n_base) throw DimensionError("relation component out of range");
      if (static_cast<int>(coord.alpha.size()) != n_base) throw DimensionError("multi-index length differs from n_base");
      int pos = layout->index_of(coord.alpha);
      if (pos < 0) throw OrderError("relation references " + to_string(coord.alpha) + " above the equation order");
      if (c.n_vars() != n_base || c.trunc() != trunc) throw DimensionError("relation coefficient has the wrong ring");
      row[coord.component * count + pos] += c;
    }
    if (row_is_zero(row)) throw InputError("relation is identically zero");
    rows.push_back(std::move(row));
  }
  return from_rows(n_base, order, trunc, std::move(fiber), restricted, std::move(rows));
}

LinearLieEquation LinearLieEquation::from_rows(int n_base, int order, int trunc, std::vector<int> fiber, bool restricted,
                                               std::vector<std::vector<Series>> rows) {
  LinearLieEquation R;
  R.n_base_ = n_base;
  R.order_ = order;
  R.trunc_ = trunc;
  R.count_ = multi_index_count(n_base, order);
  std::sort(fiber.begin(), fiber.end());
  fiber.erase(std::unique(fiber.begin(), fiber.end()), fiber.end());
  for (int f : fiber)
    if (f < 0 || f >= n_base) throw DimensionError("fiber component out of range");
  R.fiber_ = std::move(fiber);
  R.restricted_ = restricted;
  const int cols = R.columns();
  for (auto& row : rows)
    if (static_cast<int>(row.size()) != cols) throw DimensionError("relation row has the wrong length");
  if (restricted) {
    for (int i = 0; i < n_base; ++i) {
      if (std::binary_search(R.fiber_.begin(), R.fiber_.end(), i)) continue;
      for (int a = 0; a < R.count_; ++a) {
        std::vector<Series> row(cols, Series(n_base, trunc));
        row[i * R.count_ + a] = Series::constant(n_base, trunc, 1);
        rows.push_back(std::move(row));
      }
    }
  }
  R.rows_ = std::move(rows);
  R.normalize();
  return R;
}

JetCoordinate LinearLieEquation::coordinate(int col) const {
  auto layout = MonomialLayout::get(n_base_, order_);
  return JetCoordinate{col / count_, layout->exponent(col % count_)};
}

int LinearLieEquation::column(int component, const MultiIndex& a) const {
  auto layout = MonomialLayout::get(n_base_, order_);
  int pos = layout->index_of(a);
  if (pos < 0) throw OrderError("multi-index above the equation order");
  return component * count_ + pos;
}

void LinearLieEquation::normalize() {
  const int cols = columns();
  // Highest order first, latest multi-index and component first within an order.
  std::vector<int> scan(cols);
  std::iota(scan.begin(), scan.end(), 0);
  std::sort(scan.begin(), scan.end(), [this](int a, int b) {
    int pa = a % count_, pb = b % count_;
    if (pa != pb) return pa > pb;
    return a / count_ > b / count_;
  });
  std::vector<std::vector<Series>> pending = std::move(rows_);
  std::vector<std::vector<Series>> done;
  std::vector<int> piv;
  for (int col : scan) {
    int found = -1;
    for (std::size_t r = 0; r < pending.size(); ++r)
      if (RingTraits<Series>::is_unit(pending[r][col])) {
        found = static_cast<int>(r);
        break;
      }
    if (found < 0) continue;
    std::vector<Series> row = std::move(pending[found]);
    pending.erase(pending.begin() + found);
    Series inv = row[col].reciprocal();
    for (auto& s : row)
      if (!s.is_exact_zero()) s = s * inv;
    row[col] = Series::constant(n_base_, trunc_, 1);
    auto eliminate = [&](std::vector<Series>& other) {
      if (other[col].is_exact_zero()) return;
      Series f = other[col];
      for (int c = 0; c < cols; ++c)
        if (!row[c].is_exact_zero()) other[c] -= f * row[c];
      other[col] = Series(n_base_, trunc_);
    };
    for (auto& other : pending) eliminate(other);
    for (auto& other : done) eliminate(other);
    done.push_back(std::move(row));
    piv.push_back(col);
  }
  for (const auto& row : pending)
    if (!row_is_zero(row))
      throw NonRegularError("non-regular at base point: a relation vanishes at the origin but not identically");
  std::vector<int> order_idx(done.size());
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::sort(order_idx.begin(), order_idx.end(), [&](int a, int b) { return piv[a] < piv[b]; });
  rows_.clear();
  pivots_.clear();
  for (int i : order_idx) {
    rows_.push_back(std::move(done[i]));
    pivots_.push_back(piv[i]);
  }
}

Series LinearLieEquation::evaluate(int r, const JetSection& xi) const {
  if (xi.order() != order_ || xi.n_base() != n_base_) throw OrderError("section and equation have different orders");
  Series acc = xi.zero_series();
  const auto& row = rows_[r];
  for (int c = 0; c < columns(); ++c) {
    if (row[c].is_exact_zero()) continue;
    const Series& v = xi.at(c / count_, c % count_);
    if (xi.series_vars() == n_base_)
      acc += row[c] * v;
    else
      acc += row[c].remap(xi.series_vars(), [&] {
        std::vector<int> t(n_base_);
        std::iota(t.begin(), t.end(), 0);
        return t;
      }()) * v;
  }
  return acc;
}

std::optional<int> LinearLieEquation::violated_relation(const JetSection& xi) const {
  for (int r = 0; r < rank(); ++r)
    if (!evaluate(r, xi).is_zero()) return r;
  return std::nullopt;
}

std::vector<int> LinearLieEquation::free_columns() const {
  std::vector<bool> is_pivot(columns(), false);
  for (int p : pivots_) is_pivot[p] = true;
  std::vector<int> out;
  for (int c = 0; c < columns(); ++c)
    if (!is_pivot[c]) out.push_back(c);
  return out;
}

std::vector<JetSection> LinearLieEquation::spanning_sections() const {
  std::vector<JetSection> out;
  for (int f : free_columns()) {
    JetSection s(n_base_, order_, n_base_, trunc_);
    s.at(f / count_, f % count_) = Series::constant(n_base_, trunc_, 1);
    for (int r = 0; r < rank(); ++r) {
      int p = pivots_[r];
      s.at(p / count_, p % count_) = -rows_[r][f];
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool LinearLieEquation::same_span(const LinearLieEquation& other) const {
  if (order_ != other.order_ || n_base_ != other.n_base_ || rank() != other.rank()) return false;
  auto reduces = [](const LinearLieEquation& A, const std::vector<Series>& v) {
    std::vector<Series> w = v;
    for (int r = 0; r < A.rank(); ++r) {
      Series f = w[A.pivots_[r]];
      if (f.is_exact_zero()) continue;
      for (int c = 0; c < A.columns(); ++c)
        if (!A.rows_[r][c].is_exact_zero()) w[c] -= f * A.rows_[r][c];
    }
    return row_is_zero(w);
  };
  for (const auto& row : other.rows_)
    if (!reduces(*this, row)) return false;
  for (const auto& row : rows_)
    if (!reduces(other, row)) return false;
  return true;
}

std::string LinearLieEquation::relation_string(int r, const std::vector<std::string>& names_in) const {
  auto names = names_in.empty() ? default_var_names(n_base_) : names_in;
  std::string out;
  for (int c = 0; c < columns(); ++c) {
    const Series& s = rows_[r][c];
    if (s.is_zero()) continue;
    std::string coord = coordinate_string(coordinate(c), names);
    std::string term;
    bool negative = false;
    if (s == Series::constant(n_base_, trunc_, 1)) {
      term = coord;
    } else if (s == Series::constant(n_base_, trunc_, -1)) {
      term = coord;
      negative = true;
    } else {
      std::string f = series_factor(s, names);
      if (f[0] == '-' && f.find(' ') == std::string::npos) {
        negative = true;
        f = f.substr(1);
      }
      term = f + "*" + coord;
    }
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return (out.empty() ? "0" : out) + " = 0";
}

LinearLieEquation prolong_equation(const LinearLieEquation& R) {
  const int n = R.n_base();
  const int k = R.order();
  if (k + 1 > R.trunc()) throw OrderError("derivative budget exceeded: prolongation order above truncation");
  const int old_count = R.jet_count();
  const int new_count = multi_index_count(n, k + 1);
  auto old_layout = MonomialLayout::get(n, k);
  auto new_layout = MonomialLayout::get(n, k + 1);
  const int cols = n * new_count;
  auto new_col = [&](int c) {
    int i = c / old_count;
    return i * new_count + new_layout->index_of(old_layout->exponent(c % old_count));
  };
  std::vector<std::vector<Series>> rows;
  for (const auto& row : R.rows()) {
    std::vector<Series> base(cols, Series(n, R.trunc()));
    for (int c = 0; c < R.columns(); ++c) base[new_col(c)] = row[c];
    rows.push_back(base);
    for (int j = 0; j < n; ++j) {
      std::vector<Series> d(cols, Series(n, R.trunc()));
      for (int c = 0; c < R.columns(); ++c) {
        if (row[c].is_exact_zero()) continue;
        int i = c / old_count;
        d[new_col(c)] += row[c].derive(j);
        int up = new_layout->raise(new_layout->index_of(old_layout->exponent(c % old_count)), j);
        d[i * new_count + up] += row[c];
      }
      rows.push_back(std::move(d));
    }
  }
  return LinearLieEquation::from_rows(n, k + 1, R.trunc(), R.fiber(), R.restricted(), std::move(rows));
}

SymbolSpace equation_symbol(const LinearLieEquation& R) {
  const int n = R.n_base();
  const int k = R.order();
  const int amb = symbol_dim(n, k);
  RationalMatrix m = RationalMatrix::Zero(std::max(R.rank(), 1), amb);
  for (int r = 0; r < R.rank(); ++r)
    for (int c = 0; c < R.columns(); ++c) {
      JetCoordinate jc = R.coordinate(c);
      if (order(jc.alpha) != k) continue;
      m(r, symbol_position(n, k, jc.component, jc.alpha)) = R.rows()[r][c].constant_term();
    }
  return SymbolSpace{n, k, exact_kernel(m)};
}

ClosureReport check_lie_closure(const LinearLieEquation& R) {
  ClosureReport rep;
  LinearLieEquation P = prolong_equation(R);
  auto secs = P.spanning_sections();
  for (std::size_t a = 0; a < secs.size(); ++a) {
    auto d = spencer_D(secs[a]);
    for (int j = 0; j < R.n_base(); ++j)
      if (!R.contains(d[j])) {
        rep.closed = false;
        rep.witness_derivative = std::make_pair(static_cast<int>(a), j);
        return rep;
      }
  }
  for (std::size_t a = 0; a < secs.size(); ++a)
    for (std::size_t b = a + 1; b < secs.size(); ++b) {
      JetSection br = algebraic_bracket(secs[a], secs[b]);
      if (auto bad = R.violated_relation(br)) {
        rep.closed = false;
        rep.witness_pair = std::make_pair(static_cast<int>(a), static_cast<int>(b));
        rep.failed_relation = *bad;
        return rep;
      }
    }
  return rep;
}

std::string to_string(Integrability v) {
  switch (v) {
    case Integrability::formally_integrable:
      return "formally_integrable";
    case Integrability::not_formally_integrable:
      return "not_formally_integrable";
    case Integrability::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

IntegrabilityReport check_formal_integrability(const LinearLieEquation& R, int depth, int acyclicity_depth) {
  IntegrabilityReport rep;
  rep.depth = depth;
  LinearLieEquation cur = R;
  for (int s = 0; s < depth; ++s) {
    LinearLieEquation next = prolong_equation(cur);
    IntegrabilityStep st;
    st.order = cur.order();
    st.fiber_dim = cur.fiber_dim();
    SymbolSpace g = equation_symbol(cur);
    st.symbol_dim = g.dim();
    st.prolonged_fiber_dim = next.fiber_dim();
    st.prolonged_symbol_dim = equation_symbol(next).dim();
    st.projected_dim = st.prolonged_fiber_dim - st.prolonged_symbol_dim;
    st.surjective = st.projected_dim == st.fiber_dim;
    st.two_acyclic = two_acyclicity(g, acyclicity_depth).two_acyclic;
    rep.steps.push_back(st);
    if (!st.surjective) {
      rep.verdict = Integrability::not_formally_integrable;
      return rep;
    }
    if (st.two_acyclic) {
      rep.verdict = Integrability::formally_integrable;
      return rep;
    }
    cur = std::move(next);
  }
  rep.verdict = Integrability::inconclusive;
  return rep;
}

bool check_intransitive(const LinearLieEquation& R) {
  const int n = R.n_base();
  const int count = R.jet_count();
  const auto& fib = R.fiber();
  if (fib.empty()) return false;
  // Every coordinate of a non-fiber component must be killed by a pure unit relation.
  for (int i = 0; i < n; ++i) {
    if (std::binary_search(fib.begin(), fib.end(), i)) continue;
    for (int a = 0; a < count; ++a) {
      int col = i * count + a;
      auto it = std::find(R.pivots().begin(), R.pivots().end(), col);
      if (it == R.pivots().end()) return false;
      const auto& row = R.rows()[it - R.pivots().begin()];
      for (int c = 0; c < R.columns(); ++c)
        if (c != col && !row[c].is_zero()) return false;
    }
  }
  // pi_0 image has dimension dim V.
  RationalMatrix aug = RationalMatrix::Zero(R.rank() + n, R.columns());
  for (int r = 0; r < R.rank(); ++r)
    for (int c = 0; c < R.columns(); ++c) aug(r, c) = R.rows()[r][c].constant_term();
  for (int i = 0; i < n; ++i) aug(R.rank() + i, i * count) = 1;
  int image = static_cast<int>(exact_rank(aug)) - R.rank();
  return image == static_cast<int>(fib.size());
}

}  // namespace lieq
