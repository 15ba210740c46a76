#ifndef LIEQ_LIE_EQUATION_HPP
#define LIEQ_LIE_EQUATION_HPP

#include "lieq/bracket.hpp"
#include "lieq/jet.hpp"
#include "lieq/symbols.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lieq {

/** Coordinate p^i_a on J^k T. */
struct JetCoordinate {
  int component;
  MultiIndex alpha;
};

/** sum_t c_t(x) p^{i_t}_{a_t} = 0. */
struct LinearRelation {
  std::vector<std::pair<JetCoordinate, Series>> terms;
};

/**
 * Linear system R^k in J^k T. Relations are kept in reduced row echelon form over the series
 * ring: every pivot coefficient is 1 and pivot columns are cleared in all other rows. Columns
 * are indexed like JetSection storage: component * jet_count + position of the multi-index.
 */
class LinearLieEquation {
 public:
  LinearLieEquation() = default;

  /**
   * Normalizes the relations. fiber lists the components spanning V; with restricted set the
   * coordinates of the other components are constrained to vanish (R^k inside J^k V).
   * Throws NonRegularError if the rank at the origin is below the generic rank and
   * InputError for a relation that is identically zero.
   */
  static LinearLieEquation build(int n_base, int order, int trunc, std::vector<int> fiber, bool restricted,
                                 const std::vector<LinearRelation>& relations);

  /** Builds from raw rows over the column layout; rows that reduce to zero are dropped. */
  static LinearLieEquation from_rows(int n_base, int order, int trunc, std::vector<int> fiber, bool restricted,
                                     std::vector<std::vector<Series>> rows);

  int n_base() const { return n_base_; }
  int order() const { return order_; }
  int trunc() const { return trunc_; }
  const std::vector<int>& fiber() const { return fiber_; }
  bool restricted() const { return restricted_; }
  int jet_count() const { return count_; }
  int columns() const { return n_base_ * count_; }
  JetCoordinate coordinate(int col) const;
  int column(int component, const MultiIndex& a) const;

  const std::vector<std::vector<Series>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  /** Rank of the system at the origin. */
  int rank() const { return static_cast<int>(rows_.size()); }
  /** Dimension of the fiber of R^k at the origin. */
  int fiber_dim() const { return columns() - rank(); }

  /** Index of the first relation not satisfied by xi, if any. */
  std::optional<int> violated_relation(const JetSection& xi) const;
  bool contains(const JetSection& xi) const { return !violated_relation(xi).has_value(); }
  /** Value of relation r on xi. */
  Series evaluate(int r, const JetSection& xi) const;

  /** Free columns, in increasing column order. */
  std::vector<int> free_columns() const;
  /** Module basis of the sections of R^k: one section per free column. */
  std::vector<JetSection> spanning_sections() const;

  /** True when both systems cut out the same submodule. */
  bool same_span(const LinearLieEquation& other) const;

  /** Relation r as text, e.g. "p_y[1,0] - x*p_y[0,1]". */
  std::string relation_string(int r, const std::vector<std::string>& names = {}) const;

 private:
  void normalize();

  int n_base_ = 0;
  int order_ = 0;
  int trunc_ = 0;
  int count_ = 0;
  std::vector<int> fiber_;
  bool restricted_ = false;
  std::vector<std::vector<Series>> rows_;
  std::vector<int> pivots_;
};

/** Adjoins total derivatives D_j(sum c p) = sum (d_j c) p_a + c p_{a+e_j}; order goes up by one. */
LinearLieEquation prolong_equation(const LinearLieEquation& R);

/** Symbol at the origin: kernel of the top-order part of the relations. */
SymbolSpace equation_symbol(const LinearLieEquation& R);

struct ClosureReport {
  bool closed = true;
  /** Indices into the spanning sections of the prolongation, and the relation that failed. */
  std::optional<std::pair<int, int>> witness_pair;
  int failed_relation = -1;
  /** Set when some i(d_j) D xi of a spanning section leaves R (prolongation inconsistency). */
  std::optional<std::pair<int, int>> witness_derivative;
};

/** [[R^{k+1}, R^{k+1}]]_{k+1} inside R^k, checked on a module basis of R^{k+1}. */
ClosureReport check_lie_closure(const LinearLieEquation& R);

enum class Integrability { formally_integrable, not_formally_integrable, inconclusive };
std::string to_string(Integrability v);

struct IntegrabilityStep {
  int order = 0;
  int fiber_dim = 0;
  int symbol_dim = 0;
  int prolonged_fiber_dim = 0;
  int prolonged_symbol_dim = 0;
  int projected_dim = 0;
  bool surjective = false;
  bool two_acyclic = false;
};

struct IntegrabilityReport {
  std::vector<IntegrabilityStep> steps;
  Integrability verdict = Integrability::inconclusive;
  int depth = 0;
};

/**
 * Goldschmidt loop: at each step prolong, compare dim pi(R^{k+s+1}) with dim R^{k+s}, and test
 * 2-acyclicity of g^{k+s}. Stops at the first failure of surjectivity or the first step where
 * both hold.
 */
IntegrabilityReport check_formal_integrability(const LinearLieEquation& R, int depth = 3, int acyclicity_depth = 4);

/** R^k inside J^k V and pi_0(R^k) = J^0 V. */
bool check_intransitive(const LinearLieEquation& R);

/** Coordinate name such as "p_y[1,0]". */
std::string coordinate_string(const JetCoordinate& c, const std::vector<std::string>& names = {});

}  // namespace lieq

#endif
