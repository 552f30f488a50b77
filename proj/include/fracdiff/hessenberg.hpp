#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>
#include <vector>

#include "fracdiff/errors.hpp"

namespace fracdiff {

// LU factorization of a lower-Hessenberg matrix (A(i,k) = 0 for k > i+1).
//
// Reversing the index order maps A to an upper-Hessenberg matrix, whose single
// subdiagonal is eliminated row by row with partial pivoting restricted to the
// two adjacent candidate rows. Factorization and each solve cost O(n^2).
template <typename Scalar = double>
class LowerHessenbergLU {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  // Pivots smaller than this fraction of the max-norm count as singular.
  static constexpr double kSingularTolerance = 1e-14;

  LowerHessenbergLU() = default;

  template <typename Derived>
  explicit LowerHessenbergLU(const Eigen::MatrixBase<Derived>& a) {
    compute(a);
  }

  template <typename Derived>
  LowerHessenbergLU& compute(const Eigen::MatrixBase<Derived>& a) {
    using std::abs;
    const Eigen::Index n = a.rows();
    if (a.cols() != n || n == 0) {
      throw DomainError("LowerHessenbergLU: matrix must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index k = i + 2; k < n; ++k) {
        if (a(i, k) != Scalar(0)) {
          throw DomainError("LowerHessenbergLU: matrix is not lower Hessenberg");
        }
      }
    }
    max_norm_ = a.cwiseAbs().maxCoeff();
    const Scalar threshold = Scalar(kSingularTolerance) * max_norm_;

    // Reversed copy is upper Hessenberg.
    lu_ = a.reverse();
    multipliers_.assign(n > 0 ? n - 1 : 0, Scalar(0));
    swapped_.assign(n > 0 ? n - 1 : 0, false);

    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (abs(lu_(k + 1, k)) > abs(lu_(k, k))) {
        lu_.row(k).tail(n - k).swap(lu_.row(k + 1).tail(n - k));
        swapped_[k] = true;
      }
      const Scalar pivot = lu_(k, k);
      if (!(abs(pivot) >= threshold) || pivot == Scalar(0)) {
        throw SingularMatrixError("LowerHessenbergLU: pivot " + std::to_string(k) +
                                  " below singularity threshold");
      }
      const Scalar l = lu_(k + 1, k) / pivot;
      multipliers_[k] = l;
      lu_(k + 1, k) = Scalar(0);
      lu_.row(k + 1).tail(n - k - 1) -= l * lu_.row(k).tail(n - k - 1);
    }
    if (!(abs(lu_(n - 1, n - 1)) >= threshold) || lu_(n - 1, n - 1) == Scalar(0)) {
      throw SingularMatrixError("LowerHessenbergLU: last pivot below singularity threshold");
    }
    return *this;
  }

  Eigen::Index size() const noexcept { return lu_.rows(); }

  // Upper-triangular factor of the reversed, row-pivoted matrix.
  const Matrix& upper() const noexcept { return lu_; }

  template <typename Derived>
  Vector solve(const Eigen::MatrixBase<Derived>& rhs) const {
    const Eigen::Index n = lu_.rows();
    if (rhs.size() != n) {
      throw DomainError("LowerHessenbergLU::solve: right-hand side size mismatch");
    }
    Vector y = rhs.reverse();
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (swapped_[k]) std::swap(y(k), y(k + 1));
      y(k + 1) -= multipliers_[k] * y(k);
    }
    lu_.template triangularView<Eigen::Upper>().solveInPlace(y);
    return y.reverse();
  }

 private:
  Matrix lu_;
  std::vector<Scalar> multipliers_;
  std::vector<bool> swapped_;
  Scalar max_norm_{0};
};

}  // namespace fracdiff
