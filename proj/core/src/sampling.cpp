#include "sgl/sampling.hpp"

#include <cmath>

namespace sgl {

std::vector<VecX> sample_points(const Box& box, int n, std::uint64_t seed) {
  if (n < 1) throw UsageError("sample_points: need at least one point");
  if (box.lo.size() == 0 || box.lo.size() != box.hi.size())
    throw UsageError("sample_points: box bounds have mismatched dimensions");
  for (Eigen::Index i = 0; i < box.lo.size(); ++i)
    if (!(box.hi(i) > box.lo(i)) || !std::isfinite(box.hi(i) - box.lo(i)))
      throw UsageError("sample_points: degenerate box in coordinate " + std::to_string(i));
  Rng rng(seed);
  std::vector<VecX> pts;
  pts.reserve(n);
  for (int k = 0; k < n; ++k) {
    VecX p(box.lo.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = rng.uniform(box.lo(i), box.hi(i));
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace sgl
