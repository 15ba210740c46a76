#ifndef LIEQ_CONNECTION_HPP
#define LIEQ_CONNECTION_HPP

#include "lieq/bracket.hpp"

#include <utility>
#include <vector>

namespace lieq {

/**
 * Partial connection on H + J^k V given by omega in V* (x) J^{k+1} V: one jet section of
 * order k+1 per fiber direction, whose order-zero part is that direction.
 */
class PartialConnection {
 public:
  PartialConnection(std::vector<int> fiber, std::vector<JetSection> omega);

  /** omega(d/dy) = j^{k+1} d/dy for every fiber direction. */
  static PartialConnection trivial(int n_base, std::vector<int> fiber, int order, int trunc);

  int n_base() const { return omega_[0].n_base(); }
  /** k: order of the sections the connection differentiates. */
  int order() const { return omega_[0].order() - 1; }
  int trunc() const { return omega_[0].trunc(); }
  const std::vector<int>& fiber() const { return fiber_; }
  const std::vector<JetSection>& omega() const { return omega_; }
  /** Tilde form of omega(w): horizontal part w. */
  CheckedSection tilde_omega(int w) const;

 private:
  std::vector<int> fiber_;
  std::vector<JetSection> omega_;
};

/** nabla_w cs for the w-th fiber direction: third bracket of the tilde form with cs. */
CheckedSection nabla_apply(const PartialConnection& conn, const CheckedSection& cs, int w);

struct CurvatureReport {
  /** (a, b) with a < b, indices into the fiber list, and the value of 1/2 [[w~, w~]] on them. */
  std::vector<std::pair<std::pair<int, int>, CheckedSection>> components;
  bool flat = true;
};

CurvatureReport curvature(const PartialConnection& conn);

/**
 * Solves nabla S = 0 with S = boundary on N = {fiber variables = 0}, one fiber variable after
 * another. Throws ObstructionError naming a curvature component when the connection is not flat.
 */
CheckedSection parallel_extend(const PartialConnection& conn, const CheckedSection& boundary);

}  // namespace lieq

#endif
