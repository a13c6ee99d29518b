#include "sgl/linalg.hpp"

#include <algorithm>
#include <limits>

namespace sgl {

VecX singular_values(const MatX& m) {
  if (m.size() == 0) return VecX();
  Eigen::JacobiSVD<MatX> svd(m);
  return svd.singularValues();
}

int numerical_rank(const MatX& m, double rel_tol) {
  VecX s = singular_values(m);
  if (s.size() == 0) return 0;
  const double cut = std::max(rel_tol * s(0), kRankFloor);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

double condition_number(const MatX& m) {
  VecX s = singular_values(m);
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  if (m.rows() != m.cols()) {
    if (std::min(m.rows(), m.cols()) > s.size()) return std::numeric_limits<double>::infinity();
  }
  return s(0) / smin;
}

MatX null_space(const MatX& m, double rel_tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return MatX::Identity(n, n);
  Eigen::JacobiSVD<MatX> svd(m, Eigen::ComputeFullV);
  const VecX& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0) {
    const double cut = std::max(rel_tol * s(0), kRankFloor);
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > cut) ++r;
  }
  return svd.matrixV().rightCols(n - r);
}

std::vector<int> independent_columns(const MatX& m, double rel_tol) {
  std::vector<int> kept;
  MatX acc(m.rows(), 0);
  const double scale = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (m.col(j).norm() <= rel_tol * std::max(scale, 1e-300)) continue;
    MatX trial(m.rows(), acc.cols() + 1);
    trial << acc, m.col(j);
    // Normalise columns so the threshold compares directions, not lengths.
    for (Eigen::Index c = 0; c < trial.cols(); ++c) trial.col(c).normalize();
    if (numerical_rank(trial, rel_tol) == trial.cols()) {
      acc = trial;
      kept.push_back(static_cast<int>(j));
    }
  }
  return kept;
}

NullGauge NullGauge::fit(const MatX& a, double rel_tol) {
  NullGauge g;
  g.cols_ = static_cast<int>(a.cols());
  const MatX ns = null_space(a, rel_tol);
  const int nullity = static_cast<int>(ns.cols());
  // Free columns: the best-conditioned row block of the null basis, picked by
  // column-pivoted QR and kept in index order.
  std::vector<int> free_rows;
  if (nullity > 0) {
    Eigen::ColPivHouseholderQR<MatX> qr(MatX(ns.transpose()));
    for (int k = 0; k < nullity; ++k) free_rows.push_back(static_cast<int>(qr.colsPermutation().indices()(k)));
    std::sort(free_rows.begin(), free_rows.end());
    MatX block(nullity, nullity);
    for (int k = 0; k < nullity; ++k) block.row(k) = ns.row(free_rows[k]);
    if (numerical_rank(block, 1e-8) != nullity) throw FrameError("NullGauge: could not select free columns");
  }
  g.free_ = free_rows;
  for (int j = 0; j < g.cols_; ++j)
    if (std::find(g.free_.begin(), g.free_.end(), j) == g.free_.end()) g.pivots_.push_back(j);
  if (!g.pivots_.empty()) {
    MatX ap(a.rows(), g.pivots_.size());
    for (std::size_t j = 0; j < g.pivots_.size(); ++j) ap.col(j) = a.col(g.pivots_[j]);
    g.rows_ = independent_columns(ap.transpose(), rel_tol);
    if (g.rows_.size() != g.pivots_.size())
      throw FrameError("NullGauge: constraint rows do not match pivot count");
  }
  return g;
}

}  // namespace sgl
