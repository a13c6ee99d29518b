#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sgl/linalg.hpp"

namespace sgl {

/// mt19937_64 with a fixed double conversion, so sequences match across
/// standard libraries (std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Axis-aligned parameter box.
struct Box {
  VecX lo;
  VecX hi;

  static Box cube(int dim, double half_width) {
    return {VecX::Constant(dim, -half_width), VecX::Constant(dim, half_width)};
  }
};

/// n uniform points in the box. Throws UsageError when n < 1 or the box is
/// empty or flat in some coordinate.
std::vector<VecX> sample_points(const Box& box, int n, std::uint64_t seed);

}  // namespace sgl
