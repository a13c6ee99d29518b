#pragma once

// Hand-rolled generators for property tests: seeded vectors, matrices and
// points, so every case replays from its seed.

#include <cstdint>

#include "sgl/sampling.hpp"

namespace gen {

inline sgl::VecX vec(sgl::Rng& r, int n, double lo = -1.0, double hi = 1.0) {
  sgl::VecX v(n);
  for (int i = 0; i < n; ++i) v(i) = r.uniform(lo, hi);
  return v;
}

inline sgl::MatX mat(sgl::Rng& r, int rows, int cols, double lo = -1.0, double hi = 1.0) {
  sgl::MatX m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = r.uniform(lo, hi);
  return m;
}

template <class Derived>
double inf_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? m.eval().template lpNorm<Eigen::Infinity>() : 0.0;
}

/// Number of cases each property runs.
constexpr int kCases = 25;

}  // namespace gen
