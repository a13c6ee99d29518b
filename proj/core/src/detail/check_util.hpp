#pragma once

// Small helpers shared by the check implementations.

#include <algorithm>
#include <cmath>
#include <vector>

#include "sgl/linalg.hpp"

namespace sgl::detail {

inline double inf_norm(const VecX& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }
inline double inf_norm(const MatX& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline double gram_condition(const MatX& b, const MatX& g) {
  if (b.cols() == 0) return 1.0;
  return condition_number(MatX(b.transpose() * g * b));
}

/// Running per-check maxima of absolute values at one point.
struct Acc {
  std::vector<double> r;
  explicit Acc(std::size_t n) : r(n, 0.0) {}
  void upd(std::size_t k, double v) { r[k] = std::max(r[k], std::abs(v)); }
  void upd(std::size_t k, const VecX& v) { upd(k, inf_norm(v)); }
  void upd(std::size_t k, const MatX& m) { upd(k, inf_norm(m)); }
};

}  // namespace sgl::detail
