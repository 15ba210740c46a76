#ifndef LIEQ_GROUPOID_HPP
#define LIEQ_GROUPOID_HPP

#include "lieq/bracket.hpp"
#include "lieq/lie_equation.hpp"

#include <optional>
#include <vector>

namespace lieq {

/**
 * Invertible section of Q^k between two centered charts. jets.at(i, 0) is the base map f^i(x);
 * jets.at(i, a) for |a| >= 1 is the derivative d^a phi^i of the local diffeomorphism at x.
 * The map near x is phi(x + u) = f(x) + P_x(u) with P_x(u) = sum_a s_a(x) u^a / a!.
 */
class GroupoidSection {
 public:
  GroupoidSection() = default;
  /** Validates f(0) = 0 and an invertible linear part at the origin. */
  explicit GroupoidSection(JetSection jets);

  static GroupoidSection identity(int n_base, int order, int series_vars, int trunc);
  /** j^k f for a map f with f(0) = 0. */
  static GroupoidSection holonomic(const std::vector<Series>& f, int order, int n_base = -1);

  int n_base() const { return jets_.n_base(); }
  int order() const { return jets_.order(); }
  int series_vars() const { return jets_.series_vars(); }
  int trunc() const { return jets_.trunc(); }
  const JetSection& jets() const { return jets_; }
  std::vector<Series> base_map() const;

  friend bool operator==(const GroupoidSection& a, const GroupoidSection& b) { return a.jets_ == b.jets_; }

 private:
  JetSection jets_;
};

/** Drops the jets above order l. */
GroupoidSection project(const GroupoidSection& s, int l);

/** a o b: first b, then a. Orders must agree. */
GroupoidSection compose(const GroupoidSection& a, const GroupoidSection& b);
GroupoidSection invert(const GroupoidSection& s);

/** One jet section per base direction j: the value i(e_j) of a T*-valued form. */
using SpencerOneForm = std::vector<JetSection>;

/** Nonlinear Spencer operator of a section of order k+1; values of order k in the source chart. */
SpencerOneForm nonlinear_spencer_D(const GroupoidSection& s);

/** D_1 u = D u - 1/2 [u, u] on a 1-form of order k >= 1; a 2-form of order k-1. */
JetForm d1_curvature(const SpencerOneForm& u);

/** Ad(s) xi for xi of order k on the source chart; s of order k+1; result on the target chart. */
JetSection adjoint_action(const GroupoidSection& s, const JetSection& xi);

/** f_* v on the target chart. */
VectorField push_vector(const GroupoidSection& s, const VectorField& v);

/** s_*(v + xi) = f_* v + Ad(s)(i(v) Ds + xi); s of order k+1, cs of order k. */
CheckedSection groupoid_action(const GroupoidSection& s, const CheckedSection& cs);

/** Pushforward of a T*-valued form of order k: (s_* u)(e'_j) = Ad(s) u((Df)^{-1} e'_j). */
SpencerOneForm push_form(const GroupoidSection& s, const SpencerOneForm& u);

/**
 * Image of R^k under s (order >= k+1): xi' lies in the result iff Ad(s^{-1}) xi' lies in R.
 * Keeps the fiber list of R; the restriction rows are carried as ordinary relations.
 */
LinearLieEquation pushforward_equation(const GroupoidSection& s, const LinearLieEquation& R);

struct IsomorphismReport {
  bool base_ok = false;
  bool pushforward_ok = false;
  bool spencer_ok = false;
  /** Base direction whose value of DF leaves R, and the relation it violates. */
  std::optional<int> witness_direction;
  int witness_relation = -1;
  bool passed() const { return base_ok && pushforward_ok && spencer_ok; }
};

/**
 * Checks a candidate F of order >= k+1 between R and Rp:
 * (a) transversal components of the base map do not depend on the fiber variables and, when
 *     phi is given, agree with phi on N = {fiber variables = 0};
 * (b) F_*(R) = Rp; (c) DF takes values in R.
 */
IsomorphismReport verify_formal_isomorphism(const GroupoidSection& F, const LinearLieEquation& R,
                                            const LinearLieEquation& Rp,
                                            const std::optional<std::vector<Series>>& phi = std::nullopt);

}  // namespace lieq

#endif
