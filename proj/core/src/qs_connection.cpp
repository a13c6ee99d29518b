#include "sgl/qs_connection.hpp"

#include <cmath>

namespace sgl {

namespace {

double inf_norm(const VecX& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

QSConnection::QSConnection(ContactTriple t, StatisticalStructure s, bool drop_eta_term)
    : t_(std::move(t)), s_(std::move(s)), drop_(drop_eta_term) {
  if (t_.dim() != s_.g.dim() || s_.k.dim() != t_.dim())
    throw StructuralError("QSConnection: dimension mismatch");
}

QSConnection::QSConnection(const AmbientStructure& a, bool drop_eta_term)
    : drop_(drop_eta_term) {
  if (!a.has_contact()) throw UsageError("QSConnection: ambient has no contact structure");
  t_ = *a.contact;
  s_ = a.statistical();
}

VecX QSConnection::apply(const Christoffel& gam, const VectorField& x, const VectorField& y,
                         const VecX& p) const {
  const VecX xv = x(p), yv = y(p);
  const VecX bar = levi_civita(gam, x, y, p) + s_.k(p, xv, yv);
  VecX out = bar - s_.k(p, xv, yv);
  if (!drop_) out -= t_.eta.apply(p, xv) * (t_.phi(p) * yv);
  return out;
}

VecX QSConnection::apply(const VectorField& x, const VectorField& y, const VecX& p) const {
  return apply(christoffel(s_.g, p), x, y, p);
}

VecX QSConnection::apply_from_dual(const VectorField& x, const VectorField& y, const VecX& p) const {
  const VecX xv = x(p), yv = y(p);
  VecX out = nabla_star(s_, x, y, p) + s_.k(p, xv, yv);
  if (!drop_) out -= t_.eta.apply(p, xv) * (t_.phi(p) * yv);
  return out;
}

VecX qs_apply(const QSConnection& c, const VectorField& x, const VectorField& y, const VecX& p) {
  return c.apply(x, y, p);
}

VecX qs_torsion(const QSConnection& c, const VectorField& x, const VectorField& y, const VecX& p) {
  const Christoffel gam = christoffel(c.statistical().g, p);
  return c.apply(gam, x, y, p) - c.apply(gam, y, x, p) - lie_bracket(x, y, p);
}

std::vector<ResidualReport> check_qs_axioms(const QSConnection& c, const std::vector<VecX>& samples,
                                            double tol, int threads, std::uint64_t field_seed) {
  if (samples.empty()) throw UsageError("check_qs_axioms: empty sample set");
  const std::vector<CheckSpec> specs = {
      {"qs.constructions_agree", "∇̄_X Y − K(X,Y) − η(X)φY = ∇̄*_X Y + K(X,Y) − η(X)φY", tol},
      {"qs.metric", "(D̃_X ρ̃)(Y,Z) = 0", tol},
      {"qs.torsion", "T^D̃(X,Y) = η(Y)φX − η(X)φY", tol},
      {"qs.phi", "(D̃_X φ)Y = ρ̃(X,Y)ν − η(Y)X", tol},
      {"qs.nu", "D̃_X ν = −φX + η(D̃_X ν)ν", tol},
      {"qs.torsion_antisymmetric", "T^D̃(X,Y) + T^D̃(Y,X) = 0", tol},
      {"qs.phi_nu_consistency", "φ(D̃_X ν) = −(D̃_X φ)ν", tol},
  };
  const ContactTriple& t = c.contact();
  auto fields = test_fields(t.dim(), 3, field_seed);
  fields.push_back(t.nu);
  auto eval = [&](int i) {
    const VecX& p = samples[i];
    const Christoffel gam = christoffel(t.g, p);
    const MatX g = t.g(p), ph = t.phi(p);
    const VecX nu = t.nu(p), eta = t.eta.at<double>(p);
    const std::size_t nf = fields.size();
    std::vector<VecX> val(nf);
    for (std::size_t a = 0; a < nf; ++a) val[a] = fields[a](p);
    std::vector<std::vector<VecX>> dd(nf, std::vector<VecX>(nf));
    for (std::size_t a = 0; a < nf; ++a)
      for (std::size_t b = 0; b < nf; ++b) dd[a][b] = c.apply(gam, fields[a], fields[b], p);
    std::vector<double> r(specs.size(), 0.0);
    auto upd = [&](int k, double v) { r[k] = std::max(r[k], std::abs(v)); };
    for (std::size_t a = 0; a < nf; ++a) {
      const VecX& x = val[a];
      const VecX dnu = c.apply(gam, fields[a], t.nu, p);
      upd(4, inf_norm(dnu + ph * x - eta.dot(dnu) * nu));
      const VecX dphi_nu = c.apply(gam, fields[a], apply(t.phi, t.nu), p) - ph * dnu;
      upd(6, inf_norm(ph * dnu + dphi_nu));
      for (std::size_t b = 0; b < nf; ++b) {
        const VecX& y = val[b];
        upd(0, inf_norm(dd[a][b] - c.apply_from_dual(fields[a], fields[b], p)));
        const VecX br = lie_bracket(fields[a], fields[b], p);
        const VecX tab = dd[a][b] - dd[b][a] - br;
        const VecX tba = dd[b][a] - dd[a][b] + br;
        upd(2, inf_norm(tab - (eta.dot(y) * (ph * x) - eta.dot(x) * (ph * y))));
        upd(5, inf_norm(tab + tba));
        const VecX dphi = c.apply(gam, fields[a], apply(t.phi, fields[b]), p) - ph * dd[a][b];
        upd(3, inf_norm(dphi - x.dot(g * y) * nu + eta.dot(y) * x));
        for (std::size_t z = 0; z < nf; ++z) {
          const double xg = derivative_of_inner(t.g, fields[a], fields[b], fields[z], p);
          upd(1, xg - dd[a][b].dot(g * val[z]) - y.dot(g * dd[a][z]));
        }
      }
    }
    std::vector<Measurement> out;
    for (double v : r) out.push_back({v, 0.0});
    return out;
  };
  return evaluate_checks(specs, static_cast<int>(samples.size()), eval, threads);
}

}  // namespace sgl
