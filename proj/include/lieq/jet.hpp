#ifndef LIEQ_JET_HPP
#define LIEQ_JET_HPP

#include "lieq/series.hpp"

#include <map>
#include <memory>
#include <vector>

namespace lieq {

using VectorField = std::vector<Series>;

/**
 * Section of J^k T over a neighbourhood of the origin of R^n. Component (i, a) is the series of
 * the raw derivative d^a theta^i, not the Taylor coefficient. Coefficient series may carry extra
 * variables beyond the n base variables; those act as parameters and are never differentiated.
 */
class JetSection {
 public:
  JetSection() = default;
  JetSection(int n_base, int order, int series_vars, int trunc);

  static JetSection zero_like(const JetSection& other, int order);

  int n_base() const { return n_base_; }
  int order() const { return order_; }
  int series_vars() const { return series_vars_; }
  int trunc() const { return trunc_; }
  /** Number of multi-indices of order <= order(). */
  int jet_count() const { return count_; }
  const MultiIndex& index(int a) const { return layout_->exponent(a); }
  /** Position of a multi-index, or -1 when |a| > order(). */
  int position(const MultiIndex& a) const { return layout_->index_of(a); }
  const MonomialLayout& index_layout() const { return *layout_; }

  Series& at(int i, int a) { return comps_[static_cast<std::size_t>(i) * count_ + a]; }
  const Series& at(int i, int a) const { return comps_[static_cast<std::size_t>(i) * count_ + a]; }
  Series& at(int i, const MultiIndex& a);
  const Series& at(int i, const MultiIndex& a) const;
  /** Zero series of the coefficient ring. */
  Series zero_series() const { return Series(series_vars_, trunc_); }

  bool is_zero() const;
  int min_prec() const;

  JetSection& operator+=(const JetSection& b);
  JetSection& operator-=(const JetSection& b);
  friend JetSection operator+(JetSection a, const JetSection& b) { return a += b; }
  friend JetSection operator-(JetSection a, const JetSection& b) { return a -= b; }
  JetSection operator-() const;
  /** Pointwise product with a function. */
  friend JetSection operator*(const Series& f, const JetSection& a);
  friend JetSection operator*(const Rational& c, const JetSection& a);
  friend bool operator==(const JetSection& a, const JetSection& b);

 private:
  void check_compatible(const JetSection& b) const;

  int n_base_ = 0;
  int order_ = 0;
  int series_vars_ = 0;
  int trunc_ = 0;
  int count_ = 0;
  std::shared_ptr<const MonomialLayout> layout_;
  std::vector<Series> comps_;
};

/** v + xi in T + J^k T. */
struct CheckedSection {
  VectorField horizontal;
  JetSection vertical;

  int n_base() const { return vertical.n_base(); }
  int order() const { return vertical.order(); }

  CheckedSection& operator+=(const CheckedSection& b);
  CheckedSection& operator-=(const CheckedSection& b);
  friend CheckedSection operator+(CheckedSection a, const CheckedSection& b) { return a += b; }
  friend CheckedSection operator-(CheckedSection a, const CheckedSection& b) { return a -= b; }
  CheckedSection operator-() const;
  friend CheckedSection operator*(const Series& f, const CheckedSection& a);
  friend bool operator==(const CheckedSection& a, const CheckedSection& b);
  bool is_zero() const;
};

/** Zero vector field with the coefficient ring of the given section. */
VectorField zero_field(const JetSection& like);
/** Directional derivative v(f) = sum_j v^j d_j f over the base variables. */
Series apply_field(const VectorField& v, const Series& f, int n_base);
/** Bracket of vector fields [v,w]^i = v(w^i) - w(v^i). */
VectorField field_bracket(const VectorField& v, const VectorField& w, int n_base);

/** j^k theta. Throws OrderError when k exceeds the series truncation. */
JetSection holonomic_lift(const VectorField& theta, int k, int n_base = -1);

/** (D xi)(d_j) for each base direction j: d_j xi_a - xi_{a+e_j}, |a| <= k-1. */
std::vector<JetSection> spencer_D(const JetSection& xi);

/** i(v) D xi = sum_j v^j (D xi)(d_j). */
JetSection contract_D(const VectorField& v, const JetSection& xi);

/** pi_l: drops components of order > l. */
JetSection project(const JetSection& xi, int l);

/** Same section with zero components in the orders above its own, up to order l. */
JetSection zero_extend(const JetSection& xi, int l);

/** beta_* of a jet: its order-zero part as a vector field. */
VectorField beta(const JetSection& xi);
/** beta_*(v + xi) = v + xi_0. */
VectorField beta(const CheckedSection& s);

/** Jet of a pure vertical section: zero horizontal part. */
CheckedSection vertical_only(const JetSection& xi);
/** Tilde form: horizontal part set to beta_* of the vertical part. */
CheckedSection tilde(const JetSection& xi);
bool is_tilde(const CheckedSection& s);

/** Projection of a checked section (horizontal part kept). */
CheckedSection project(const CheckedSection& s, int l);

/**
 * Differential form of degree r with values in J^k T: sum over increasing index sets I of
 * dx^I (x) u_I. Missing index sets are zero.
 */
struct JetForm {
  int degree = 0;
  int n_base = 0;
  int order = 0;
  std::map<std::vector<int>, JetSection> terms;

  static JetForm from_section(const JetSection& xi);
  /** dx^I (x) xi for a single increasing index set. */
  static JetForm monomial(const std::vector<int>& I, const JetSection& xi);

  JetForm& operator+=(const JetForm& b);
  friend JetForm operator+(JetForm a, const JetForm& b) { return a += b; }
  bool is_zero() const;
  /** Coefficient of dx^I, zero if absent. */
  JetSection component(const std::vector<int>& I, const JetSection& like) const;
};

/**
 * Sorts dx^{j} ^ dx^{I} into increasing order; returns the sign (0 if j is already in I).
 */
int wedge_sign(int j, const std::vector<int>& I, std::vector<int>& out);

/** Extended Spencer operator on forms: D(dx^I (x) xi) = sum_j dx^j ^ dx^I (x) (D xi)(d_j). */
JetForm spencer_D(const JetForm& u);

}  // namespace lieq

#endif
