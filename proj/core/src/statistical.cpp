#include "sgl/statistical.hpp"

#include <cmath>

namespace sgl {

DifferenceTensorK::DifferenceTensorK(SmoothMap map, int dim) : map_(std::move(map)), dim_(dim) {
  if (map_.domain_dim() != dim || map_.codomain_dim() != dim * dim * dim)
    throw StructuralError("DifferenceTensorK: map must be R^D -> R^(D^3)");
}

DifferenceTensorK DifferenceTensorK::zero(int dim) {
  return DifferenceTensorK(SmoothMap(dim, dim * dim * dim,
                                     [dim](const auto& p) {
                                       using T = typename std::decay_t<decltype(p)>::Scalar;
                                       return Vec<T>(Vec<T>::Zero(dim * dim * dim));
                                     }),
                           dim);
}

DifferenceTensorK DifferenceTensorK::eta_eta_nu(const OneForm& eta, const VectorField& nu,
                                                double lambda) {
  const int d = eta.dim();
  if (nu.dim() != d) throw StructuralError("eta_eta_nu: dimension mismatch");
  return DifferenceTensorK(SmoothMap(d, d * d * d,
                                     [eta, nu, lambda, d](const auto& p) {
                                       using T = typename std::decay_t<decltype(p)>::Scalar;
                                       const Vec<T> e = eta.at<T>(p);
                                       const Vec<T> n = nu.at<T>(p);
                                       Vec<T> out(d * d * d);
                                       for (int j = 0; j < d; ++j)
                                         for (int i = 0; i < d; ++i) {
                                           const T ee = lambda * e(i) * e(j);
                                           for (int k = 0; k < d; ++k)
                                             out(k + d * (i + d * j)) = ee * n(k);
                                         }
                                       return out;
                                     }),
                           d);
}

DifferenceTensorK DifferenceTensorK::perturbed(const DifferenceTensorK& base, double eps, int a,
                                               int b, int c) {
  const int d = base.dim();
  if (b == c || a < 0 || b < 0 || c < 0 || a >= d || b >= d || c >= d)
    throw UsageError("DifferenceTensorK::perturbed: need distinct in-range slots");
  const int idx = a + d * (b + d * c);
  return DifferenceTensorK(SmoothMap(d, d * d * d,
                                     [base, eps, idx](const auto& p) {
                                       using T = typename std::decay_t<decltype(p)>::Scalar;
                                       Vec<T> out = base.map().eval<T>(p);
                                       out(idx) += eps;
                                       return out;
                                     }),
                           d);
}

StatisticalStructure StatisticalStructure::dual() const {
  const DifferenceTensorK base = k;
  const int d = base.dim();
  return {g, DifferenceTensorK(SmoothMap(d, d * d * d,
                                         [base](const auto& p) {
                                           using T = typename std::decay_t<decltype(p)>::Scalar;
                                           return Vec<T>(-base.map().eval<T>(p));
                                         }),
                               d)};
}

VecX nabla(const StatisticalStructure& s, const VectorField& x, const VectorField& y, const VecX& p) {
  return levi_civita(s.g, x, y, p) + s.k(p, x(p), y(p));
}

VecX nabla_star(const StatisticalStructure& s, const VectorField& x, const VectorField& y,
                const VecX& p) {
  return levi_civita(s.g, x, y, p) - s.k(p, x(p), y(p));
}

std::vector<ResidualReport> check_statistical(const StatisticalStructure& s,
                                              const std::vector<VecX>& samples, double tol,
                                              int threads, std::uint64_t field_seed) {
  if (samples.empty()) throw UsageError("check_statistical: empty sample set");
  const std::vector<CheckSpec> specs = {
      {"statistical.torsion_free", "∇̄_X Y − ∇̄_Y X = [X,Y]", tol},
      {"statistical.dual_torsion_free", "∇̄*_X Y − ∇̄*_Y X = [X,Y]", tol},
      {"statistical.codazzi", "(∇̄_X ρ̃)(Y,Z) = (∇̄_Y ρ̃)(X,Z)", tol},
      {"statistical.duality", "X ρ̃(Y,Z) = ρ̃(∇̄_X Y, Z) + ρ̃(Y, ∇̄*_X Z)", tol},
      {"statistical.K_symmetric", "K(X,Y) = K(Y,X)", tol},
      {"statistical.K_self_adjoint", "ρ̃(K_X Y, Z) = ρ̃(Y, K_X Z)", tol},
      {"statistical.mean_is_levi_civita", "½(∇̄ + ∇̄*) = ∇°", tol},
  };
  const int d = s.g.dim();
  const auto fields = test_fields(d, 3, field_seed);
  auto eval = [&](int i) {
    const VecX& p = samples[i];
    const Christoffel gam = christoffel(s.g, p);
    const MatX gp = s.g(p);
    std::vector<VecX> val(fields.size());
    for (std::size_t a = 0; a < fields.size(); ++a) val[a] = fields[a](p);
    auto lc = [&](std::size_t a, std::size_t b) { return levi_civita(gam, fields[a], fields[b], p); };
    auto kk = [&](std::size_t a, std::size_t b) { return s.k(p, val[a], val[b]); };
    std::vector<double> r(specs.size(), 0.0);
    auto upd = [&](int c, double v) { r[c] = std::max(r[c], std::abs(v)); };
    auto updv = [&](int c, const VecX& v) { r[c] = std::max(r[c], v.cwiseAbs().maxCoeff()); };
    const std::size_t nf = fields.size();
    for (std::size_t a = 0; a < nf; ++a)
      for (std::size_t b = 0; b < nf; ++b) {
        const VecX br = lie_bracket(fields[a], fields[b], p);
        const VecX lab = lc(a, b), lba = lc(b, a);
        const VecX kab = kk(a, b), kba = kk(b, a);
        updv(0, (lab + kab) - (lba + kba) - br);
        updv(1, (lab - kab) - (lba - kba) - br);
        updv(4, kab - kba);
        const VecX bar = lab + kab, star = lab - kab;
        updv(6, 0.5 * (bar + star) - lab);
        for (std::size_t c = 0; c < nf; ++c) {
          const double xg = derivative_of_inner(s.g, fields[a], fields[b], fields[c], p);
          const VecX nac = lc(a, c) + kk(a, c);
          const VecX nac_star = lc(a, c) - kk(a, c);
          upd(3, xg - bar.dot(gp * val[c]) - val[b].dot(gp * nac_star));
          const double nabla_g_abc = xg - bar.dot(gp * val[c]) - val[b].dot(gp * nac);
          const double yg = derivative_of_inner(s.g, fields[b], fields[a], fields[c], p);
          const VecX nbc = lc(b, c) + kk(b, c);
          const VecX nba = lba + kba;
          const double nabla_g_bac = yg - nba.dot(gp * val[c]) - val[a].dot(gp * nbc);
          upd(2, nabla_g_abc - nabla_g_bac);
          upd(5, kab.dot(gp * val[c]) - val[b].dot(gp * kk(a, c)));
        }
      }
    std::vector<Measurement> out;
    for (double v : r) out.push_back({v, 0.0});
    return out;
  };
  return evaluate_checks(specs, static_cast<int>(samples.size()), eval, threads);
}

}  // namespace sgl
