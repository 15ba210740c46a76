#ifndef LIEQ_INTRANSITIVE_ALGEBRA_HPP
#define LIEQ_INTRANSITIVE_ALGEBRA_HPP

#include "lieq/lie_equation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lieq {

/**
 * Sections of R^j restricted to N = {fiber variables = 0}. Coefficients stay series in all n
 * variables but no longer depend on the fiber ones. R is prolonged up to order j first.
 */
std::vector<JetSection> restrict_to_transversal(const LinearLieEquation& R, int j);

/** Solves target = sum c_b basis_b over the series ring with unit pivots; nullopt if target is outside the span. */
std::optional<std::vector<Series>> solve_in_span(const std::vector<CheckedSection>& basis, const CheckedSection& target);

struct BracketEntry {
  int a = 0;
  int b = 0;
  /** Structure functions on lower_basis. */
  std::vector<Series> coefficients;
};

struct IntransitiveAlgebra {
  int n_base = 0;
  int order = 0;
  std::vector<int> transversal;  // base variables spanning N
  /** Derivations d/dx_t of N first, then the restricted generators Y0, Y1, ... of R^j. */
  std::vector<CheckedSection> generators;
  std::vector<std::string> labels;
  /** Order j-1 basis: the derivations, then the nonzero projections pi_{j-1}(Yc). */
  std::vector<CheckedSection> lower_basis;
  std::vector<std::string> lower_labels;
  std::vector<BracketEntry> table;

  /** Structure function of the pair (a, b) on the lower basis element named label. */
  Series coefficient(int a, int b, const std::string& label) const;
};

/**
 * Pairwise first brackets of the generators of the order-j algebra, expanded in the order
 * j-1 basis. Throws ClosureError naming the pair when a bracket leaves the span.
 */
IntransitiveAlgebra bracket_table(const LinearLieEquation& R, int j);

struct PlaneClassification {
  int case_number = 0;  // 1 or 2
  /** Valuation of b/a on N; nullopt when b vanishes to the working precision. */
  std::optional<int> valuation;
  /** beta of the normal form p01 = beta p10 (Case 2); Case 1 has the normal form p10 = 0. */
  Series normal_form_beta;
  int precision = 0;
};

/**
 * Rank-one symbol A f^{1,0} + B f^{0,1} on the plane with V = d/dy and N = {y = 0}.
 * Case 1 when b(0) != 0, otherwise Case 2 with beta = x^v for v the valuation of b/a, or 0.
 */
PlaneClassification classify_plane_rank1(const Series& A, const Series& B);

/** Reads (A, B) off a first-order equation on the plane with one order-one relation. */
std::pair<Series, Series> plane_symbol(const LinearLieEquation& R);

/** Normal form equation of a classification, at the given truncation. */
LinearLieEquation plane_normal_form(const PlaneClassification& c, int trunc);

/** j^k theta satisfies every relation of R to the working precision. */
bool check_solution_family(const LinearLieEquation& R, const VectorField& theta);

}  // namespace lieq

#endif
