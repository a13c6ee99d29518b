#pragma once

// Small dense linear algebra that works for double and for dual scalars.
//
// Everything differentiated through (frames, projections, null spaces) goes
// through the templated routines here. Pivot and gauge decisions are made once
// on double data and then replayed with whatever scalar type is in use, so the
// resulting bases are smooth functions of the point.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "sgl/dual.hpp"
#include "sgl/errors.hpp"

namespace sgl {

template <class T> using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T> using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
using VecX = Vec<double>;
using MatX = Mat<double>;

template <class T>
Mat<double> values(const Mat<T>& m) {
  Mat<double> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = value_of(m(i, j));
  return out;
}

template <class T>
Vec<double> values(const Vec<T>& v) {
  Vec<double> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = value_of(v(i));
  return out;
}

/// First-order derivative part of a dual-valued vector.
inline VecX derivatives(const Vec<D1>& v) {
  VecX out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).d;
  return out;
}

inline MatX derivatives(const Mat<D1>& m) {
  MatX out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).d;
  return out;
}

template <Scalar T>
Vec<T> lift(const VecX& v) {
  return v.template cast<T>();
}

template <Scalar T>
Mat<T> lift(const MatX& m) {
  return m.template cast<T>();
}

/// x(i) + t*dir(i) as first-order duals.
inline Vec<D1> seeded(const VecX& x, const VecX& dir) {
  Vec<D1> out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = D1(x(i), dir(i));
  return out;
}

/// Solve A X = B by Gaussian elimination with partial pivoting on values.
///
/// The solution of a linear system is a smooth function of its data no matter
/// which rows get swapped, so pivoting on values is safe for dual scalars.
template <class T>
Mat<T> solve(Mat<T> a, Mat<T> b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.rows() != n)
    throw StructuralError("solve: shape mismatch");
  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) scale = std::max(scale, std::abs(value_of(a(i, j))));
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    double best = std::abs(value_of(a(k, k)));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      double c = std::abs(value_of(a(i, k)));
      if (c > best) { best = c; p = i; }
    }
    if (!(best > 1e-14 * scale) || scale == 0.0)
      throw DegeneracyError("solve: singular matrix", INFINITY);
    if (p != k) {
      a.row(k).swap(a.row(p));
      b.row(k).swap(b.row(p));
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      T f = a(i, k) / a(k, k);
      if (value_of(f) == 0.0 && !is_dual_v<T>) continue;
      for (Eigen::Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
    }
  }
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      T s = b(k, j);
      for (Eigen::Index i = k + 1; i < n; ++i) s -= a(k, i) * b(i, j);
      b(k, j) = s / a(k, k);
    }
  }
  return b;
}

template <class T>
Vec<T> solve(const Mat<T>& a, const Vec<T>& b) {
  Mat<T> bm = b;
  return solve<T>(a, bm).col(0);
}

/// Singular values (descending) of a double matrix.
VecX singular_values(const MatX& m);

/// Singular values at or below this count as zero whatever the scale, so an
/// all-roundoff matrix has rank 0.
inline constexpr double kRankFloor = 1e-12;

/// Rank counting singular values above max(rel_tol * largest, kRankFloor).
int numerical_rank(const MatX& m, double rel_tol = 1e-9);

/// Ratio of extreme singular values; infinity for rank-deficient input.
double condition_number(const MatX& m);

/// Orthonormal basis of the null space via SVD, using the relative threshold.
MatX null_space(const MatX& m, double rel_tol = 1e-9);

/// Indices of columns, scanned in index order, each of which raises the rank
/// of the columns kept so far.
std::vector<int> independent_columns(const MatX& m, double rel_tol = 1e-9);

/// A fixed elimination pattern for the null space of a family of matrices.
///
/// Fitted once on a representative matrix, it records which columns are free
/// (the null basis is the identity there) and which rows and pivot columns
/// carry the constraints. `basis` then produces a smooth null-space basis for
/// any nearby matrix of the same rank and any scalar type.
class NullGauge {
 public:
  NullGauge() = default;

  static NullGauge fit(const MatX& representative, double rel_tol = 1e-9);

  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(pivots_.size()); }
  int nullity() const { return static_cast<int>(free_.size()); }
  const std::vector<int>& free_columns() const { return free_; }
  const std::vector<int>& pivot_columns() const { return pivots_; }
  const std::vector<int>& rows() const { return rows_; }

  template <class T>
  Mat<T> basis(const Mat<T>& a) const {
    if (a.cols() != cols_) throw StructuralError("NullGauge: column count mismatch");
    const int k = rank();
    Mat<T> out = Mat<T>::Zero(cols_, nullity());
    if (nullity() == 0) return out;
    if (k == 0) {
      for (int f = 0; f < nullity(); ++f) out(free_[f], f) = T(1.0);
      return out;
    }
    Mat<T> ap(k, k), af(k, nullity());
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) ap(i, j) = a(rows_[i], pivots_[j]);
      for (int f = 0; f < nullity(); ++f) af(i, f) = -a(rows_[i], free_[f]);
    }
    Mat<T> xp = solve<T>(ap, af);
    for (int f = 0; f < nullity(); ++f) {
      out(free_[f], f) = T(1.0);
      for (int j = 0; j < k; ++j) out(pivots_[j], f) = xp(j, f);
    }
    return out;
  }

 private:
  int cols_ = 0;
  std::vector<int> rows_;
  std::vector<int> pivots_;
  std::vector<int> free_;
};

}  // namespace sgl
