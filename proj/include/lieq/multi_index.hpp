#ifndef LIEQ_MULTI_INDEX_HPP
#define LIEQ_MULTI_INDEX_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace lieq {

/** Exponent vector; its order is the sum of the entries. */
using MultiIndex = std::vector<int>;

int order(const MultiIndex& a);
MultiIndex unit_index(int n, int j);
MultiIndex add(const MultiIndex& a, const MultiIndex& b);
/** a - b, or an empty index if some entry would go negative. */
MultiIndex subtract(const MultiIndex& a, const MultiIndex& b);
bool dominated(const MultiIndex& d, const MultiIndex& g);
/** Product of entrywise binomials C(g_i, d_i). */
long long multi_binomial(const MultiIndex& g, const MultiIndex& d);
long long multi_factorial(const MultiIndex& a);
std::string to_string(const MultiIndex& a);

/**
 * Graded-lexicographic enumeration of all indices of order <= k.
 * Within one order the first entry decreases: (0,0),(1,0),(0,1),(2,0),(1,1),(0,2),...
 */
std::vector<MultiIndex> multi_index_enum(int n, int k);
/** Indices of order exactly k, in the same order as multi_index_enum. */
std::vector<MultiIndex> multi_index_homogeneous(int n, int k);
int multi_index_count(int n, int k);

/** Shared, immutable bookkeeping for dense storage of monomials of degree <= trunc in n variables. */
class MonomialLayout {
 public:
  static std::shared_ptr<const MonomialLayout> get(int n_vars, int trunc);

  int n_vars() const { return n_; }
  int trunc() const { return trunc_; }
  int size() const { return static_cast<int>(exps_.size()); }
  const MultiIndex& exponent(int i) const { return exps_[i]; }
  int degree(int i) const { return degs_[i]; }
  /** Number of monomials of degree <= d (storage is graded, so this is a prefix length). */
  int count_up_to(int d) const;
  /** -1 if the order exceeds trunc. */
  int index_of(const MultiIndex& a) const;
  /** Index of the product monomial, or -1 if its degree exceeds trunc. */
  int product_index(int i, int j) const;
  /** Index of x^a * x_var (-1 if out of range). */
  int raise(int i, int var) const { return up_[var][i]; }
  /** Index of x^a / x_var (-1 if a_var = 0). */
  int lower(int i, int var) const { return down_[var][i]; }

  MonomialLayout(int n_vars, int trunc);

 private:
  int n_;
  int trunc_;
  std::vector<MultiIndex> exps_;
  std::vector<int> degs_;
  std::vector<int> prefix_;
  std::map<MultiIndex, int> index_;
  std::vector<std::vector<int>> up_;
  std::vector<std::vector<int>> down_;
  mutable std::once_flag product_once_;
  mutable std::vector<int> product_;
};

}  // namespace lieq

#endif
