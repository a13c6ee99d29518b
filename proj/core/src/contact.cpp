#include "sgl/contact.hpp"

#include <cmath>

namespace sgl {

namespace {

double inf_norm(const VecX& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

std::vector<Measurement> as_measurements(const std::vector<double>& r) {
  std::vector<Measurement> out;
  out.reserve(r.size());
  for (double v : r) out.push_back({v, 0.0});
  return out;
}

std::vector<VectorField> fields_with_nu(const ContactTriple& t, std::uint64_t seed) {
  auto f = test_fields(t.dim(), 3, seed);
  f.push_back(t.nu);
  return f;
}

}  // namespace

std::vector<ResidualReport> check_contact_metric(const ContactTriple& t,
                                                 const std::vector<VecX>& samples, double tol,
                                                 int threads, std::uint64_t field_seed) {
  if (samples.empty()) throw UsageError("check_contact_metric: empty sample set");
  const std::vector<CheckSpec> specs = {
      {"contact.phi_nu", "φν = 0", tol},
      {"contact.eta_phi", "η∘φ = 0", tol},
      {"contact.eta_nu", "η(ν) = 1", tol},
      {"contact.nu_unit", "ρ̃(ν,ν) = 1", tol},
      {"contact.eta_metric_dual", "ρ̃(X,ν) = η(X)", tol},
      {"contact.phi_squared", "φ²X = −X + η(X)ν", tol},
      {"contact.phi_skew", "ρ̃(φX,Y) + ρ̃(X,φY) = 0", tol},
      {"contact.phi_metric", "ρ̃(φX,φY) = ρ̃(X,Y) − η(X)η(Y)", tol},
      {"contact.d_eta", "ρ̃(X,φY) = ½ dη(X,Y), dη(X,Y) = Xη(Y) − Yη(X) − η([X,Y])", tol,
       CheckKind::residual, "scale 1/2 relative to the unnormalised dη"},
      {"contact.d_eta_scale", "fitted c in ρ̃(X,φY) = c dη(X,Y)", tol, CheckKind::info,
       "max_residual holds the fitted c"},
  };
  const auto fields = fields_with_nu(t, field_seed);
  auto eval = [&](int i) {
    const VecX& p = samples[i];
    const MatX g = t.g(p), ph = t.phi(p);
    const VecX nu = t.nu(p), eta = t.eta.at<double>(p);
    std::vector<double> r(specs.size(), 0.0);
    r[0] = inf_norm(ph * nu);
    r[1] = inf_norm(ph.transpose() * eta);
    r[2] = std::abs(eta.dot(nu) - 1.0);
    r[3] = std::abs(nu.dot(g * nu) - 1.0);
    double num = 0.0, den = 0.0;
    for (std::size_t a = 0; a < fields.size(); ++a) {
      const VecX x = fields[a](p);
      r[4] = std::max(r[4], std::abs(x.dot(g * nu) - eta.dot(x)));
      r[5] = std::max(r[5], inf_norm(ph * (ph * x) + x - eta.dot(x) * nu));
      for (std::size_t b = 0; b < fields.size(); ++b) {
        const VecX y = fields[b](p);
        r[6] = std::max(r[6], std::abs((ph * x).dot(g * y) + x.dot(g * (ph * y))));
        r[7] = std::max(r[7], std::abs((ph * x).dot(g * (ph * y)) - x.dot(g * y) +
                                       eta.dot(x) * eta.dot(y)));
        const double lhs = x.dot(g * (ph * y));
        const double de = exterior_derivative(t.eta, fields[a], fields[b], p);
        r[8] = std::max(r[8], std::abs(lhs - 0.5 * de));
        num += lhs * de;
        den += de * de;
      }
    }
    r[9] = den > 0.0 ? num / den : 0.0;
    return as_measurements(r);
  };
  return evaluate_checks(specs, static_cast<int>(samples.size()), eval, threads);
}

std::vector<ResidualReport> check_sasakian(const ContactTriple& t, const std::vector<VecX>& samples,
                                           double tol, int threads, std::uint64_t field_seed) {
  if (samples.empty()) throw UsageError("check_sasakian: empty sample set");
  const std::vector<CheckSpec> specs = {
      {"sasakian.nabla_nu", "∇°_X ν = −φX", tol},
      {"sasakian.nabla_phi", "(∇°_X φ)Y = ρ̃(X,Y)ν − η(Y)X", tol},
      {"sasakian.normality", "N_φ(X,Y) + dη(X,Y)ν = 0", tol},
  };
  const auto fields = fields_with_nu(t, field_seed);
  auto eval = [&](int i) {
    const VecX& p = samples[i];
    const Christoffel gam = christoffel(t.g, p);
    const MatX g = t.g(p), ph = t.phi(p);
    const VecX nu = t.nu(p), eta = t.eta.at<double>(p);
    std::vector<double> r(specs.size(), 0.0);
    for (std::size_t a = 0; a < fields.size(); ++a) {
      const VecX x = fields[a](p);
      r[0] = std::max(r[0], inf_norm(levi_civita(gam, fields[a], t.nu, p) + ph * x));
      for (std::size_t b = 0; b < fields.size(); ++b) {
        const VecX y = fields[b](p);
        const VecX dphi = levi_civita(gam, fields[a], apply(t.phi, fields[b]), p) -
                          ph * levi_civita(gam, fields[a], fields[b], p);
        r[1] = std::max(r[1], inf_norm(dphi - x.dot(g * y) * nu + eta.dot(y) * x));
        const double de = exterior_derivative(t.eta, fields[a], fields[b], p);
        r[2] = std::max(r[2], inf_norm(nijenhuis(t.phi, fields[a], fields[b], p) + de * nu));
      }
    }
    return as_measurements(r);
  };
  return evaluate_checks(specs, static_cast<int>(samples.size()), eval, threads);
}

std::vector<ResidualReport> check_sasakian_statistical(const ContactTriple& t,
                                                       const StatisticalStructure& s,
                                                       const std::vector<VecX>& samples,
                                                       double tol, int threads,
                                                       std::uint64_t field_seed) {
  if (samples.empty()) throw UsageError("check_sasakian_statistical: empty sample set");
  const std::vector<CheckSpec> specs = {
      {"sasakian_statistical.K_phi", "K(X,φY) + φK(X,Y) = 0", tol},
      {"sasakian_statistical.nabla_phi", "∇̄_X φY − φ∇̄*_X Y = ρ̃(X,Y)ν − η(Y)X", tol},
      {"sasakian_statistical.nabla_nu", "∇̄_X ν = −φX + ρ̃(∇̄_X ν, ν)ν", tol},
      {"sasakian_statistical.dual_nabla_phi", "∇̄*_X φY − φ∇̄_X Y = ρ̃(X,Y)ν − η(Y)X", tol},
      {"sasakian_statistical.dual_nabla_nu", "∇̄*_X ν = −φX + ρ̃(∇̄*_X ν, ν)ν", tol},
      {"sasakian_statistical.nu_component", "ρ̃(∇̄_X ν, ν) = η(∇̄_X ν)", tol},
  };
  const auto fields = fields_with_nu(t, field_seed);
  auto eval = [&](int i) {
    const VecX& p = samples[i];
    const Christoffel gam = christoffel(t.g, p);
    const MatX g = t.g(p), ph = t.phi(p);
    const VecX nu = t.nu(p), eta = t.eta.at<double>(p);
    std::vector<double> r(specs.size(), 0.0);
    for (std::size_t a = 0; a < fields.size(); ++a) {
      const VecX x = fields[a](p);
      const VecX lc_nu = levi_civita(gam, fields[a], t.nu, p);
      const VecX k_nu = s.k(p, x, nu);
      for (int sign : {1, -1}) {
        const VecX dn = lc_nu + sign * k_nu;
        const int c = sign > 0 ? 2 : 4;
        r[c] = std::max(r[c], inf_norm(dn + ph * x - dn.dot(g * nu) * nu));
        if (sign > 0) r[5] = std::max(r[5], std::abs(dn.dot(g * nu) - eta.dot(dn)));
      }
      for (std::size_t b = 0; b < fields.size(); ++b) {
        const VecX y = fields[b](p);
        const VecX py = ph * y;
        r[0] = std::max(r[0], inf_norm(s.k(p, x, py) + ph * s.k(p, x, y)));
        const VecX lc_phi = levi_civita(gam, fields[a], apply(t.phi, fields[b]), p);
        const VecX lc_xy = levi_civita(gam, fields[a], fields[b], p);
        const VecX rhs = x.dot(g * y) * nu - eta.dot(y) * x;
        const VecX kpy = s.k(p, x, py), kxy = s.k(p, x, y);
        r[1] = std::max(r[1], inf_norm((lc_phi + kpy) - ph * (lc_xy - kxy) - rhs));
        r[3] = std::max(r[3], inf_norm((lc_phi - kpy) - ph * (lc_xy + kxy) - rhs));
      }
    }
    return as_measurements(r);
  };
  return evaluate_checks(specs, static_cast<int>(samples.size()), eval, threads);
}

}  // namespace sgl
