#ifndef LIEQ_SYMBOLS_HPP
#define LIEQ_SYMBOLS_HPP

#include "lieq/linalg.hpp"
#include "lieq/multi_index.hpp"

#include <string>
#include <vector>

namespace lieq {

/** Label f^a_l of a basis vector of S^k T* (x) T; l is the vector component (0-based). */
struct SymbolLabel {
  int component;
  MultiIndex exponent;
};

/** Basis f^a_l with l outer, a in graded-lex order inner. */
std::vector<SymbolLabel> symbol_basis(int n, int k);
int symbol_dim(int n, int k);
/** Coordinate position of f^a_l, or -1 when |a| != k. */
int symbol_position(int n, int k, int component, const MultiIndex& a);

/** Linear subspace of S^k T* (x) T at a point; the columns of basis are linearly independent. */
struct SymbolSpace {
  int n_base = 0;
  int order = 0;
  RationalMatrix basis;

  int dim() const { return static_cast<int>(basis.cols()); }
  int ambient_dim() const { return symbol_dim(n_base, order); }
  bool contains(const RationalVector& v) const;
  bool same_span(const SymbolSpace& other) const;

  /** Reduces spanning vectors (columns) to a basis. */
  static SymbolSpace from_spanning(int n, int k, const RationalMatrix& vectors);
  static SymbolSpace full(int n, int k);
  static SymbolSpace zero(int n, int k);
};

/** Increasing r-subsets of {0..n-1} in lexicographic order. */
std::vector<std::vector<int>> form_indices(int n, int r);
/** Dimension of the ambient space of r-forms with values in S^k T* (x) T (zero when k < 0 or r > n). */
int form_symbol_dim(int n, int r, int k);
int form_symbol_position(int n, int r, int k, const std::vector<int>& I, int component, const MultiIndex& a);

/** Matrix of delta: e^I (x) f^a_l -> -sum_i e^i ^ e^I (x) f^{a-e_i}_l (negative exponents drop). */
RationalMatrix delta_matrix(int n, int r, int k);
/** delta of one element of r-forms with values in S^k T* (x) T. */
RationalVector delta_map(int n, int r, int k, const RationalVector& xi);

/** Coordinates of the symmetric power (c_1 e^1 + ... + c_n e^n)^k / k! (x) e_l: coefficient c^a on f^a_l. */
RationalVector symbol_power(const std::vector<Rational>& linear_form, int k, int component);

/** g^{k+1} = {xi in S^{k+1} T* (x) T : delta xi in T* (x) g^k}. */
SymbolSpace symbol_prolong(const SymbolSpace& g);

struct DeltaCohomology {
  std::vector<int> space_dims;   // dim of r-forms with values in chain[r]
  std::vector<int> kernel_dims;  // dim ker delta on that space
  std::vector<int> image_dims;   // dim of delta(previous space) inside it
  std::vector<int> cohomology;   // kernel - image
  bool exact() const;
};

/**
 * Cohomology of 0 -> chain[0] -> T*(x)chain[1] -> ... where chain[r] has order m-r and the
 * last map lands in the full ambient space. Throws ChainError if delta leaves a declared space.
 */
DeltaCohomology delta_cohomology(const std::vector<SymbolSpace>& chain);

struct AcyclicityReport {
  bool two_acyclic = true;
  /** First prolongation offset l where exactness failed, or -1. */
  int failing_l = -1;
  std::vector<DeltaCohomology> steps;  // for l = 2, 3, ...
};

/** Exactness of 0->g^{k+l}->T*(x)g^{k+l-1}->A^2T*(x)g^{k+l-2}->A^3T*(x)S^{k+l-3} for l = 2..max_l. */
AcyclicityReport two_acyclicity(const SymbolSpace& g, int max_l = 4);

std::string symbol_label_string(const SymbolLabel& s, const std::vector<std::string>& names = {});

}  // namespace lieq

#endif
