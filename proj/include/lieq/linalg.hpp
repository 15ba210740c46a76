#ifndef LIEQ_LINALG_HPP
#define LIEQ_LINALG_HPP

#include "lieq/rational.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace lieq {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = DenseMatrix<Rational>;
using RationalVector = DenseVector<Rational>;

/** Reduced row echelon form over an exact field. */
template <class Scalar>
struct RowEchelon {
  DenseMatrix<Scalar> reduced;
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
};

template <class Derived>
RowEchelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> out;
  out.reduced = a;
  DenseMatrix<Scalar>& m = out.reduced;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Scalar f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <class Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& a) {
  return static_cast<Eigen::Index>(row_echelon(a).pivots.size());
}

/** Columns form a basis of the right kernel {v : a v = 0}. */
template <class Derived>
DenseMatrix<typename Derived::Scalar> exact_kernel(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  auto ech = row_echelon(a);
  const Eigen::Index n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  DenseMatrix<Scalar> k = DenseMatrix<Scalar>::Zero(n, static_cast<Eigen::Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) k(ech.pivots[r], f) = -ech.reduced(r, free[f]);
  }
  return k;
}

/** Some x with a x = b, if one exists. */
template <class DA, class DB>
std::optional<DenseVector<typename DA::Scalar>> exact_solve(const Eigen::MatrixBase<DA>& a,
                                                            const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  DenseMatrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto ech = row_echelon(aug);
  DenseVector<Scalar> x = DenseVector<Scalar>::Zero(a.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    if (ech.pivots[r] == a.cols()) return std::nullopt;
    x(ech.pivots[r]) = ech.reduced(r, a.cols());
  }
  return x;
}

/** True when the column spans of a and b coincide. */
template <class DA, class DB>
bool same_column_span(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  if (a.rows() != b.rows()) return false;
  DenseMatrix<Scalar> both(a.rows(), a.cols() + b.cols());
  both << a, b;
  auto r = exact_rank(both);
  return r == exact_rank(a) && r == exact_rank(b);
}

}  // namespace lieq

#endif
