#include "sgl/smooth_map.hpp"

namespace sgl {

VecX SmoothMap::directional(const VecX& x, const VecX& v) const {
  if (v.size() != domain_) throw StructuralError("SmoothMap: direction has wrong dimension");
  return derivatives(eval<D1>(seeded(x, v)));
}

VecX SmoothMap::second_directional(const VecX& x, const VecX& v, const VecX& w) const {
  if (v.size() != domain_ || w.size() != domain_)
    throw StructuralError("SmoothMap: direction has wrong dimension");
  Vec<D2> xs(domain_);
  for (int i = 0; i < domain_; ++i) xs(i) = D2(D1(x(i), w(i)), D1(v(i), 0.0));
  Vec<D2> y = eval<D2>(xs);
  VecX out(codomain_);
  for (int i = 0; i < codomain_; ++i) out(i) = y(i).d.d;
  return out;
}

MatX SmoothMap::jacobian(const VecX& x) const {
  MatX j(codomain_, domain_);
  VecX e = VecX::Zero(domain_);
  for (int k = 0; k < domain_; ++k) {
    e(k) = 1.0;
    j.col(k) = directional(x, e);
    e(k) = 0.0;
  }
  return j;
}

Mat<D1> SmoothMap::jacobian(const Vec<D1>& x) const {
  check_domain(x.size());
  Mat<D1> j(codomain_, domain_);
  Vec<D2> xs(domain_);
  for (int k = 0; k < domain_; ++k) {
    for (int i = 0; i < domain_; ++i) xs(i) = D2(x(i), D1(i == k ? 1.0 : 0.0, 0.0));
    Vec<D2> y = eval<D2>(xs);
    for (int i = 0; i < codomain_; ++i) j(i, k) = y(i).d;
  }
  return j;
}

VecX central_difference(const SmoothMap& f, const VecX& x, const VecX& v, double step) {
  return (f(x + step * v) - f(x - step * v)) / (2.0 * step);
}

}  // namespace sgl
