#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nondegen/core/eigen_support.hpp"
#include "nondegen/core/errors.hpp"

namespace nondegen {

/// Reduced row echelon form over an exact field.
template <class S>
struct RowEchelon {
  Matrix<S> reduced;
  std::vector<Eigen::Index> pivot_columns;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_columns.size()); }
};

template <class Derived>
RowEchelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& input) {
  using S = typename Derived::Scalar;
  static_assert(ScalarTraits<S>::exact, "row_echelon requires exact scalars");
  RowEchelon<S> out{input.eval(), {}};
  Matrix<S>& m = out.reduced;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && ScalarTraits<S>::is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const S inv = S(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || ScalarTraits<S>::is_zero(m(r, col))) continue;
      const S factor = m(r, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(r, j) -= factor * m(row, j);
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  return out;
}

/// Exact rank by fraction-carrying forward elimination.
template <class Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& input) {
  using S = typename Derived::Scalar;
  static_assert(ScalarTraits<S>::exact, "exact_rank requires exact scalars");
  Matrix<S> m = input.eval();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && ScalarTraits<S>::is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    for (Eigen::Index r = row + 1; r < m.rows(); ++r) {
      if (ScalarTraits<S>::is_zero(m(r, col))) continue;
      const S factor = m(r, col) / m(row, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(r, j) -= factor * m(row, j);
    }
    ++row;
  }
  return row;
}

/// Basis of {x : M x = 0} as matrix columns (zero columns when trivial).
template <class Derived>
Matrix<typename Derived::Scalar> exact_nullspace(const Eigen::MatrixBase<Derived>& input) {
  using S = typename Derived::Scalar;
  const auto ech = row_echelon(input);
  const Eigen::Index n = input.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : ech.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = true;
  Matrix<S> basis(n, n - ech.rank());
  basis.setConstant(S(0));
  Eigen::Index out_col = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, out_col) = S(1);
    for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r)
      basis(ech.pivot_columns[r], out_col) = -ech.reduced(static_cast<Eigen::Index>(r), free);
    ++out_col;
  }
  return basis;
}

/// Some solution of A x = b, or nullopt when inconsistent.
template <class DerivedA, class DerivedB>
std::optional<Vector<typename DerivedA::Scalar>> exact_particular_solution(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using S = typename DerivedA::Scalar;
  Matrix<S> augmented(a.rows(), a.cols() + 1);
  augmented << a, b;
  const auto ech = row_echelon(augmented);
  if (!ech.pivot_columns.empty() && ech.pivot_columns.back() == a.cols()) return std::nullopt;
  Vector<S> x = Vector<S>::Constant(a.cols(), S(0));
  for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r)
    x(ech.pivot_columns[r]) = ech.reduced(static_cast<Eigen::Index>(r), a.cols());
  return x;
}

/// Unique solution of a square system; nullopt when singular.
/// Exact scalars use Gaussian elimination, floating ones a full-pivot LU.
template <class DerivedA, class DerivedB>
std::optional<Vector<typename DerivedA::Scalar>> solve_square(const Eigen::MatrixBase<DerivedA>& a,
                                                              const Eigen::MatrixBase<DerivedB>& b) {
  using S = typename DerivedA::Scalar;
  require(a.rows() == a.cols() && a.rows() == b.rows(), "solve_square: shape mismatch");
  if constexpr (ScalarTraits<S>::exact) {
    const Eigen::Index n = a.rows();
    Matrix<S> m(n, n + 1);
    m << a, b;
    for (Eigen::Index col = 0; col < n; ++col) {
      Eigen::Index pivot = col;
      while (pivot < n && ScalarTraits<S>::is_zero(m(pivot, col))) ++pivot;
      if (pivot == n) return std::nullopt;
      if (pivot != col) m.row(pivot).swap(m.row(col));
      const S inv = S(1) / m(col, col);
      for (Eigen::Index r = col + 1; r < n; ++r) {
        if (ScalarTraits<S>::is_zero(m(r, col))) continue;
        const S factor = m(r, col) * inv;
        for (Eigen::Index j = col; j <= n; ++j) m(r, j) -= factor * m(col, j);
      }
    }
    Vector<S> x(n);
    for (Eigen::Index r = n; r-- > 0;) {
      S acc = m(r, n);
      for (Eigen::Index j = r + 1; j < n; ++j)
        if (!ScalarTraits<S>::is_zero(m(r, j))) acc -= m(r, j) * x(j);
      x(r) = acc / m(r, r);
    }
    return x;
  } else {
    Eigen::FullPivLU<Matrix<S>> lu(a.eval());
    if (!lu.isInvertible()) return std::nullopt;
    return Vector<S>(lu.solve(b.eval()));
  }
}

}  // namespace nondegen
