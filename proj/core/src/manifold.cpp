#include "sgl/manifold.hpp"

#include <Eigen/Eigenvalues>

#include "sgl/sampling.hpp"

namespace sgl {

MetricField::MetricField(SmoothMap map, int index) : map_(std::move(map)), index_(index) {
  int d = 0;
  while (d * d < map_.codomain_dim()) ++d;
  if (d * d != map_.codomain_dim() || map_.domain_dim() != d)
    throw StructuralError("MetricField: map must be R^D -> R^(D*D)");
  if (index < 0 || index > d) throw StructuralError("MetricField: index out of range");
  dim_ = d;
}

int MetricField::signature_negatives(const VecX& p) const {
  MatX g = at<double>(p);
  Eigen::SelfAdjointEigenSolver<MatX> es(0.5 * (g + g.transpose()));
  int neg = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < 0.0) ++neg;
  return neg;
}

VectorField::VectorField(SmoothMap map) : map_(std::move(map)) {
  if (map_.domain_dim() != map_.codomain_dim())
    throw StructuralError("VectorField: map must be R^D -> R^D");
}

VectorField VectorField::constant(const VecX& v) {
  const int d = static_cast<int>(v.size());
  return VectorField(SmoothMap(d, d, [v](const auto& p) {
    using T = typename std::decay_t<decltype(p)>::Scalar;
    return lift<T>(v);
  }));
}

VectorField VectorField::coordinate(int dim, int i) {
  VecX e = VecX::Zero(dim);
  e(i) = 1.0;
  return constant(e);
}

OneForm::OneForm(SmoothMap map) : map_(std::move(map)) {
  if (map_.domain_dim() != map_.codomain_dim())
    throw StructuralError("OneForm: map must be R^D -> R^D");
}

TensorField11::TensorField11(SmoothMap map, int dim) : map_(std::move(map)), dim_(dim) {
  if (map_.domain_dim() != dim || map_.codomain_dim() != dim * dim)
    throw StructuralError("TensorField11: map must be R^D -> R^(D*D)");
}

TensorField11 TensorField11::identity(int dim) {
  return TensorField11(SmoothMap(dim, dim * dim, [dim](const auto& p) {
                         using T = typename std::decay_t<decltype(p)>::Scalar;
                         Mat<T> id = Mat<T>::Identity(dim, dim);
                         return flatten<T>(id);
                       }),
                       dim);
}

VectorField apply(const TensorField11& a, const VectorField& x) {
  if (a.dim() != x.dim()) throw StructuralError("apply: dimension mismatch");
  return VectorField(SmoothMap(a.dim(), a.dim(), [a, x](const auto& p) {
    using T = typename std::decay_t<decltype(p)>::Scalar;
    return Vec<T>(a.at<T>(p) * x.at<T>(p));
  }));
}

VecX Christoffel::contract(const VecX& x, const VecX& y) const {
  VecX out(gamma.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) out(k) = x.dot(gamma[k] * y);
  return out;
}

Christoffel christoffel(const MetricField& g, const VecX& p) {
  const int d = g.dim();
  if (p.size() != d) throw StructuralError("christoffel: point dimension mismatch");
  const MatX gp = g(p);
  Eigen::FullPivLU<MatX> lu(gp);
  const double cond = condition_number(gp);
  if (!(cond < 1e12)) throw DegeneracyError("christoffel: metric Gram matrix is degenerate", cond);

  std::vector<MatX> dg(d);
  VecX e = VecX::Zero(d);
  for (int l = 0; l < d; ++l) {
    e(l) = 1.0;
    dg[l] = reshape<double>(g.map().directional(p, e), d, d);
    e(l) = 0.0;
  }
  // first kind: lower(l)(i, j) = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
  MatX lower(d, d * d);
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        lower(l, i * d + j) = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
  const MatX upper = lu.solve(lower);

  Christoffel c;
  c.gamma.assign(d, MatX(d, d));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) c.gamma[k](i, j) = upper(k, i * d + j);
  return c;
}

VecX lie_bracket(const VectorField& x, const VectorField& y, const VecX& p) {
  if (x.dim() != y.dim() || p.size() != x.dim())
    throw StructuralError("lie_bracket: dimension mismatch");
  return y.map().directional(p, x(p)) - x.map().directional(p, y(p));
}

VecX levi_civita(const Christoffel& gamma, const VectorField& x, const VectorField& y,
                 const VecX& p) {
  const VecX xv = x(p);
  return y.map().directional(p, xv) + gamma.contract(xv, y(p));
}

VecX levi_civita(const MetricField& g, const VectorField& x, const VectorField& y, const VecX& p) {
  if (x.dim() != g.dim() || y.dim() != g.dim())
    throw StructuralError("levi_civita: dimension mismatch");
  return levi_civita(christoffel(g, p), x, y, p);
}

double derivative_of_inner(const MetricField& g, const VectorField& x, const VectorField& y,
                           const VectorField& z, const VecX& p) {
  Vec<D1> ps = seeded(p, x(p));
  D1 s = y.at<D1>(ps).dot(g.at<D1>(ps) * z.at<D1>(ps));
  return s.d;
}

double exterior_derivative(const OneForm& eta, const VectorField& x, const VectorField& y,
                           const VecX& p) {
  if (eta.dim() != x.dim() || x.dim() != y.dim())
    throw StructuralError("exterior_derivative: dimension mismatch");
  auto along = [&](const VectorField& dir, const VectorField& arg) {
    Vec<D1> ps = seeded(p, dir(p));
    return eta.at<D1>(ps).dot(arg.at<D1>(ps)).d;
  };
  return along(x, y) - along(y, x) - eta.apply(p, lie_bracket(x, y, p));
}

std::vector<VectorField> test_fields(int dim, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VectorField> out;
  for (int f = 0; f < count; ++f) {
    VecX a(dim), c(dim);
    MatX b(dim, dim);
    for (int k = 0; k < dim; ++k) a(k) = rng.uniform(-1.0, 1.0);
    for (int k = 0; k < dim; ++k)
      for (int l = 0; l < dim; ++l) b(k, l) = rng.uniform(-1.0, 1.0);
    for (int k = 0; k < dim; ++k) c(k) = rng.uniform(-1.0, 1.0);
    out.emplace_back(SmoothMap(dim, dim, [a, b, c, dim](const auto& p) {
      using T = typename std::decay_t<decltype(p)>::Scalar;
      Vec<T> v = lift<T>(a) + lift<T>(b) * p;
      for (int k = 0; k < dim; ++k) {
        using std::sin;
        v(k) += c(k) * sin(p((k + 1) % dim));
      }
      return v;
    }));
  }
  return out;
}

VecX nijenhuis(const TensorField11& phi, const VectorField& x, const VectorField& y,
               const VecX& p) {
  const VectorField px = apply(phi, x);
  const VectorField py = apply(phi, y);
  const MatX ph = phi(p);
  return lie_bracket(px, py, p) - ph * lie_bracket(px, y, p) - ph * lie_bracket(x, py, p) +
         ph * ph * lie_bracket(x, y, p);
}

}  // namespace sgl
