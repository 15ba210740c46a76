#ifndef LIEQ_SERIES_HPP
#define LIEQ_SERIES_HPP

#include "lieq/errors.hpp"
#include "lieq/multi_index.hpp"
#include "lieq/rational.hpp"

#include <algorithm>
#include <climits>
#include <memory>
#include <string>
#include <type_traits>
#include <vector>

namespace lieq {

/** Ring operations the series template needs from its coefficient type. */
template <class C>
struct RingTraits;

template <>
struct RingTraits<Rational> {
  static Rational zero_like(const Rational&) { return 0; }
  static Rational one_like(const Rational&) { return 1; }
  static bool is_zero(const Rational& a) { return a == 0; }
  static bool is_exact_zero(const Rational& a) { return a == 0; }
  static bool is_unit(const Rational& a) { return a != 0; }
  static Rational inverse(const Rational& a) {
    if (a == 0) throw NonUnitError("reciprocal of zero rational");
    return 1 / a;
  }
};

/**
 * Truncated power series in n variables with coefficients in the ring C.
 *
 * Storage holds every monomial of degree <= trunc. prec() <= trunc is the degree through
 * which the coefficients are known; coefficients above prec() are kept at zero. Derivatives
 * lower the precision by one, so comparisons never read coefficients that truncation spoiled.
 */
template <class C>
class TruncatedSeries {
 public:
  using Coeff = C;
  using Traits = RingTraits<C>;

  TruncatedSeries() : layout_(MonomialLayout::get(0, 0)), prec_(0), zero_(), c_(1, zero_) {}

  TruncatedSeries(int n_vars, int trunc, const C& zero = C{})
      : layout_(MonomialLayout::get(n_vars, trunc)),
        prec_(trunc),
        zero_(Traits::zero_like(zero)),
        c_(layout_->size(), zero_) {}

  static TruncatedSeries constant(int n_vars, int trunc, const C& value) {
    TruncatedSeries s(n_vars, trunc, value);
    s.c_[0] = value;
    return s;
  }

  static TruncatedSeries variable(int n_vars, int trunc, int var, const C& zero = C{}) {
    if (var < 0 || var >= n_vars) throw DimensionError("variable index out of range");
    TruncatedSeries s(n_vars, trunc, zero);
    if (trunc >= 1) s.c_[s.layout_->index_of(unit_index(n_vars, var))] = Traits::one_like(zero);
    return s;
  }

  /** A series with the same variables, truncation and coefficient context. */
  TruncatedSeries zero_like() const { return TruncatedSeries(n_vars(), trunc(), zero_); }
  TruncatedSeries one_like() const { return constant(n_vars(), trunc(), Traits::one_like(zero_)); }

  int n_vars() const { return layout_->n_vars(); }
  int trunc() const { return layout_->trunc(); }
  int prec() const { return prec_; }
  int size() const { return layout_->size(); }
  const MonomialLayout& layout() const { return *layout_; }
  const C& zero_coeff() const { return zero_; }

  const C& coeff(int idx) const { return c_[idx]; }
  C coeff(const MultiIndex& a) const {
    int idx = layout_->index_of(a);
    return idx < 0 ? zero_ : c_[idx];
  }
  void set(const MultiIndex& a, const C& value) {
    int idx = layout_->index_of(a);
    if (idx < 0) throw OrderError("monomial " + to_string(a) + " exceeds truncation");
    set_index(idx, value);
  }
  void set_index(int idx, const C& value) {
    if (layout_->degree(idx) > prec_) return;
    c_[idx] = value;
  }
  const C& constant_term() const { return c_[0]; }

  /** Lowers the known precision; coefficients above it are cleared. */
  TruncatedSeries with_prec(int p) const {
    TruncatedSeries r(*this);
    r.lower_prec(p);
    return r;
  }
  void lower_prec(int p) {
    if (p >= prec_) return;
    prec_ = std::max(p, -1);
    for (int i = layout_->count_up_to(prec_); i < size(); ++i) c_[i] = zero_;
  }

  /** Lowest degree with a nonzero known coefficient; prec()+1 when zero to precision. */
  int valuation() const {
    const int end = layout_->count_up_to(prec_);
    for (int i = 0; i < end; ++i)
      if (!Traits::is_zero(c_[i])) return layout_->degree(i);
    return prec_ + 1;
  }
  bool is_zero() const { return valuation() > prec_; }
  /**
   * Zero with nothing lost to truncation, down to the coefficients. Only such terms may be
   * dropped from sums; a zero known to lower precision still limits the precision of a result.
   */
  bool is_exact_zero() const { return prec_ == trunc() && exact_valuation() > prec_; }

  TruncatedSeries operator-() const {
    TruncatedSeries r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& b) {
    check_compatible(b);
    lower_prec(b.prec_);
    const int end = layout_->count_up_to(prec_);
    for (int i = 0; i < end; ++i) c_[i] = c_[i] + b.c_[i];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& b) {
    check_compatible(b);
    lower_prec(b.prec_);
    const int end = layout_->count_up_to(prec_);
    for (int i = 0; i < end; ++i) c_[i] = c_[i] - b.c_[i];
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_compatible(b);
    const int va = a.exact_valuation();
    const int vb = b.exact_valuation();
    const int p = std::min({a.trunc(), va + b.prec_, vb + a.prec_});
    TruncatedSeries r(a.n_vars(), a.trunc(), a.zero_);
    r.prec_ = p;
    if (p < 0) return r;
    const MonomialLayout& L = *a.layout_;
    const int end_a = L.count_up_to(std::min(a.prec_, p));
    const int end_b = L.count_up_to(std::min(b.prec_, p));
    std::vector<int> nz_b;
    for (int j = 0; j < end_b; ++j)
      if (!Traits::is_exact_zero(b.c_[j])) nz_b.push_back(j);
    for (int i = 0; i < end_a; ++i) {
      if (Traits::is_exact_zero(a.c_[i])) continue;
      const int di = L.degree(i);
      for (int j : nz_b) {
        if (di + L.degree(j) > p) break;
        int k = L.product_index(i, j);
        r.c_[k] = r.c_[k] + a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  TruncatedSeries& operator*=(const TruncatedSeries& b) { return *this = *this * b; }

  /** Multiplication by a coefficient-ring element. */
  TruncatedSeries scaled(const C& s) const {
    TruncatedSeries r(*this);
    const int end = layout_->count_up_to(prec_);
    for (int i = 0; i < end; ++i)
      if (!Traits::is_zero(r.c_[i])) r.c_[i] = r.c_[i] * s;
    return r;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const C& s) { return a.scaled(s); }
  friend TruncatedSeries operator*(const C& s, const TruncatedSeries& a) { return a.scaled(s); }

  template <class Q = Rational>
    requires(!std::is_same_v<C, Rational> && std::is_same_v<Q, Rational>)
  friend TruncatedSeries operator*(const TruncatedSeries& a, const Q& q) {
    TruncatedSeries r(a);
    for (auto& v : r.c_) v = v * q;
    return r;
  }
  template <class Q = Rational>
    requires(!std::is_same_v<C, Rational> && std::is_same_v<Q, Rational>)
  friend TruncatedSeries operator*(const Q& q, const TruncatedSeries& a) {
    return a * q;
  }

  /** Equality through the smaller of the two precisions. */
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return (a - b).is_zero(); }

  /** Formal partial derivative; precision drops by one. */
  TruncatedSeries derive(int var) const {
    if (var < 0 || var >= n_vars()) throw DimensionError("derivative variable out of range");
    TruncatedSeries r(n_vars(), trunc(), zero_);
    r.prec_ = prec_ - 1;
    const int end = layout_->count_up_to(r.prec_);
    for (int i = 0; i < end; ++i) {
      int j = layout_->raise(i, var);
      if (j < 0 || Traits::is_exact_zero(c_[j])) continue;
      r.c_[i] = c_[j] * Rational(layout_->exponent(j)[var]);
    }
    return r;
  }

  /** Antiderivative in var vanishing on {x_var = 0}. */
  TruncatedSeries integrate(int var) const {
    if (var < 0 || var >= n_vars()) throw DimensionError("integration variable out of range");
    TruncatedSeries r(n_vars(), trunc(), zero_);
    r.prec_ = std::min(prec_ + 1, trunc());
    const int end = layout_->count_up_to(std::min(prec_, trunc() - 1));
    for (int i = 0; i < end; ++i) {
      if (Traits::is_exact_zero(c_[i])) continue;
      int j = layout_->raise(i, var);
      r.c_[j] = c_[i] * Rational(1, layout_->exponent(i)[var] + 1);
    }
    return r;
  }

  /**
   * Renames variables: old variable i becomes new variable target[i], or is set to zero when
   * target[i] < 0. Used for restrictions and embeddings, which keep precision.
   */
  TruncatedSeries remap(int new_n, const std::vector<int>& target) const {
    if (static_cast<int>(target.size()) != n_vars()) throw DimensionError("remap needs one target per variable");
    TruncatedSeries r(new_n, trunc(), zero_);
    r.prec_ = prec_;
    const int end = layout_->count_up_to(prec_);
    for (int i = 0; i < end; ++i) {
      if (Traits::is_exact_zero(c_[i])) continue;
      const MultiIndex& e = layout_->exponent(i);
      MultiIndex ne(new_n, 0);
      bool dropped = false;
      for (int v = 0; v < n_vars(); ++v) {
        if (e[v] == 0) continue;
        if (target[v] < 0) {
          dropped = true;
          break;
        }
        ne[target[v]] += e[v];
      }
      if (dropped) continue;
      int k = r.layout_->index_of(ne);
      r.c_[k] = r.c_[k] + c_[i];
    }
    return r;
  }

  /** Same coefficients stored at another truncation; exact marks the input as a polynomial. */
  TruncatedSeries resized(int new_trunc, bool exact = false) const {
    TruncatedSeries r(n_vars(), new_trunc, zero_);
    r.prec_ = exact && prec_ == trunc() ? new_trunc : std::min(prec_, new_trunc);
    const int end = layout_->count_up_to(std::min(prec_, new_trunc));
    for (int i = 0; i < end; ++i) r.c_[i] = c_[i];
    return r;
  }

  /** f(args): args share variables and truncation and have zero constant term. */
  TruncatedSeries compose(const std::vector<TruncatedSeries>& args) const {
    if (static_cast<int>(args.size()) != n_vars()) throw DimensionError("compose needs one argument per variable");
    if (args.empty()) throw DimensionError("compose of a series in zero variables");
    const int n = args[0].n_vars();
    const int T = args[0].trunc();
    int p = T;
    int v = INT_MAX;
    for (const auto& g : args) {
      args[0].check_compatible(g);
      if (g.prec_ >= 0 && !Traits::is_zero(g.c_[0])) throw RecenteringError("substituted series has nonzero constant term");
      p = std::min(p, g.prec_);
      v = std::min(v, std::max(g.exact_valuation(), 1));
    }
    if (v != INT_MAX && prec_ < INT_MAX / 4) {
      long long bound = static_cast<long long>(prec_ + 1) * v - 1;
      if (bound < p) p = static_cast<int>(bound);
    }
    TruncatedSeries result(n, T, coeff_zero_for(args[0]));
    result.prec_ = p;
    if (p < 0) return result;
    // products[i] = prod_v args[v]^{e_v} for the i-th monomial of this series.
    const MonomialLayout& L = *layout_;
    const int end = L.count_up_to(std::min(prec_, p));
    std::vector<TruncatedSeries> products;
    products.reserve(end);
    TruncatedSeries one = args[0].one_like();
    one.lower_prec(p);
    for (int i = 0; i < end; ++i) {
      if (i == 0) {
        products.push_back(one);
        continue;
      }
      const MultiIndex& e = L.exponent(i);
      int var = 0;
      while (e[var] == 0) ++var;
      products.push_back(products[L.lower(i, var)] * args[var]);
      products.back().lower_prec(p);
    }
    for (int i = 0; i < end; ++i) {
      if (Traits::is_exact_zero(c_[i])) continue;
      result += products[i].scaled_coeff(c_[i]);
    }
    result.lower_prec(p);
    return result;
  }

  /** Multiplicative inverse; needs a unit constant term. */
  TruncatedSeries reciprocal() const {
    if (prec_ < 0 || !Traits::is_unit(c_[0])) throw NonUnitError("reciprocal of a series with non-unit constant term");
    C inv0 = Traits::inverse(c_[0]);
    TruncatedSeries q = scaled(inv0);
    TruncatedSeries rest = q;
    rest.c_[0] = zero_;
    rest = -rest;
    TruncatedSeries term = one_like();
    TruncatedSeries sum = one_like();
    for (int j = 1; j <= trunc(); ++j) {
      term = term * rest;
      if (term.exact_valuation() > term.prec_) break;
      sum += term;
    }
    sum.lower_prec(prec_);
    return sum.scaled(inv0);
  }

  std::vector<C>& raw() { return c_; }
  const std::vector<C>& raw() const { return c_; }

 private:
  template <class D>
  friend class TruncatedSeries;

  /** Lowest degree whose coefficient is not an exact zero. */
  int exact_valuation() const {
    const int end = layout_->count_up_to(prec_);
    for (int i = 0; i < end; ++i)
      if (!Traits::is_exact_zero(c_[i])) return layout_->degree(i);
    return prec_ + 1;
  }

  void check_compatible(const TruncatedSeries& b) const {
    if (n_vars() != b.n_vars() || trunc() != b.trunc())
      throw DimensionError("series disagree in variables or truncation (" + std::to_string(n_vars()) + "," +
                           std::to_string(trunc()) + ") vs (" + std::to_string(b.n_vars()) + "," +
                           std::to_string(b.trunc()) + ")");
  }

  static C coeff_zero_for(const TruncatedSeries& s) { return s.zero_; }

  TruncatedSeries scaled_coeff(const C& s) const { return scaled(s); }

  std::shared_ptr<const MonomialLayout> layout_;
  int prec_;
  C zero_;
  std::vector<C> c_;
};

template <class C>
struct RingTraits<TruncatedSeries<C>> {
  using S = TruncatedSeries<C>;
  static S zero_like(const S& s) { return s.zero_like(); }
  static S one_like(const S& s) { return s.one_like(); }
  static bool is_zero(const S& s) { return s.is_zero(); }
  static bool is_exact_zero(const S& s) { return s.is_exact_zero(); }
  static bool is_unit(const S& s) { return s.prec() >= 0 && RingTraits<C>::is_unit(s.constant_term()); }
  static S inverse(const S& s) { return s.reciprocal(); }
};

using Series = TruncatedSeries<Rational>;

/** Matrix over a commutative ring, stored by rows. */
template <class R>
using RingMatrix = std::vector<std::vector<R>>;

/** Inverse by Gauss-Jordan with unit pivots; throws NonUnitError if the matrix is not invertible. */
template <class R>
RingMatrix<R> ring_matrix_inverse(RingMatrix<R> a) {
  using T = RingTraits<R>;
  const int n = static_cast<int>(a.size());
  if (n == 0) return {};
  RingMatrix<R> inv(n, std::vector<R>(n, T::zero_like(a[0][0])));
  for (int i = 0; i < n; ++i) inv[i][i] = T::one_like(a[0][0]);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (T::is_unit(a[r][col])) {
        piv = r;
        break;
      }
    if (piv < 0) throw NonUnitError("matrix is not invertible over the ring");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    R pinv = T::inverse(a[col][col]);
    for (int c = 0; c < n; ++c) {
      a[col][c] = a[col][c] * pinv;
      inv[col][c] = inv[col][c] * pinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || T::is_zero(a[r][col])) continue;
      R f = a[r][col];
      for (int c = 0; c < n; ++c) {
        a[r][c] = a[r][c] - f * a[col][c];
        inv[r][c] = inv[r][c] - f * inv[col][c];
      }
    }
  }
  return inv;
}

template <class R>
std::vector<R> ring_matrix_apply(const RingMatrix<R>& m, const std::vector<R>& v) {
  std::vector<R> out;
  out.reserve(m.size());
  for (const auto& row : m) {
    R acc = RingTraits<R>::zero_like(v.at(0));
    for (std::size_t j = 0; j < row.size(); ++j) acc = acc + row[j] * v[j];
    out.push_back(acc);
  }
  return out;
}

/** Jacobian matrix [d f_i / d x_j]. */
template <class C>
RingMatrix<TruncatedSeries<C>> jacobian(const std::vector<TruncatedSeries<C>>& f) {
  RingMatrix<TruncatedSeries<C>> J;
  for (const auto& fi : f) {
    std::vector<TruncatedSeries<C>> row;
    for (int j = 0; j < fi.n_vars(); ++j) row.push_back(fi.derive(j));
    J.push_back(row);
  }
  return J;
}

/** Coefficient matrix of the linear part, A[i][j] = coefficient of x_j in f_i. */
template <class C>
RingMatrix<C> linear_part(const std::vector<TruncatedSeries<C>>& f) {
  RingMatrix<C> A;
  for (const auto& fi : f) {
    std::vector<C> row;
    for (int j = 0; j < fi.n_vars(); ++j) row.push_back(fi.coeff(unit_index(fi.n_vars(), j)));
    A.push_back(row);
  }
  return A;
}

/**
 * Compositional inverse of a square system f with zero constant term and invertible linear
 * part: returns g with f(g(x)) = x. Newton iteration, doubling the correct degree each pass.
 */
template <class C>
std::vector<TruncatedSeries<C>> series_reversion(const std::vector<TruncatedSeries<C>>& f) {
  const int n = static_cast<int>(f.size());
  if (n == 0) throw DimensionError("reversion of an empty system");
  for (const auto& fi : f) {
    if (fi.n_vars() != n) throw DimensionError("reversion needs a square system");
    if (fi.prec() >= 0 && !RingTraits<C>::is_zero(fi.constant_term()))
      throw RecenteringError("reversion of a series with nonzero constant term");
  }
  const int T = f[0].trunc();
  const C& zero = f[0].zero_coeff();
  int p = T;
  for (const auto& fi : f) p = std::min(p, fi.prec());
  RingMatrix<C> Ainv;
  try {
    Ainv = ring_matrix_inverse(linear_part(f));
  } catch (const NonUnitError&) {
    throw NonUnitError("reversion of a system with singular linear part");
  }
  std::vector<TruncatedSeries<C>> x;
  for (int j = 0; j < n; ++j) x.push_back(TruncatedSeries<C>::variable(n, T, j, zero));
  std::vector<TruncatedSeries<C>> g;
  for (int i = 0; i < n; ++i) {
    TruncatedSeries<C> gi(n, T, zero);
    for (int j = 0; j < n; ++j) gi += x[j].scaled(Ainv[i][j]);
    g.push_back(gi);
  }
  auto J = jacobian(f);
  for (int iter = 0; iter <= T + 1; ++iter) {
    std::vector<TruncatedSeries<C>> residual;
    bool done = true;
    for (int i = 0; i < n; ++i) {
      residual.push_back(f[i].compose(g) - x[i]);
      residual.back().lower_prec(p);
      if (!residual.back().is_zero()) done = false;
    }
    if (done) break;
    RingMatrix<TruncatedSeries<C>> Jg(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Jg[i].push_back(J[i][j].compose(g));
    auto step = ring_matrix_apply(ring_matrix_inverse(Jg), residual);
    for (int i = 0; i < n; ++i) {
      g[i] -= step[i];
      g[i].lower_prec(p);
    }
  }
  for (auto& gi : g) gi.lower_prec(p);
  return g;
}

/** Single-variable reversion. */
template <class C>
TruncatedSeries<C> series_reversion(const TruncatedSeries<C>& f) {
  return series_reversion(std::vector<TruncatedSeries<C>>{f})[0];
}

/** Default variable names: x, y, z for up to three variables, x0, x1, ... beyond. */
std::vector<std::string> default_var_names(int n);

/** Human-readable form such as "1 + x - 1/2*x^2*y". */
std::string to_string(const Series& s, const std::vector<std::string>& names = {});

/** Series from explicit monomials, mainly for tests and examples. */
Series make_series(int n_vars, int trunc, const std::vector<std::pair<MultiIndex, Rational>>& terms);

}  // namespace lieq

#endif
