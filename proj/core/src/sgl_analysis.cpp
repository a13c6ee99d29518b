#include "sgl/sgl_analysis.hpp"

#include <cmath>

#include "detail/check_util.hpp"

namespace sgl {

namespace {

using detail::Acc;
using detail::gram_condition;
using detail::inf_norm;

/// Frame algebra at one point with the QS connection.
struct Pt {
  const PointContext& ctx;
  const Frame& f;

  explicit Pt(const PointContext& c) : ctx(c), f(c.frame()) {}

  double g(const VecX& a, const VecX& b) const { return a.dot(f.g * b); }
  double eta(const VecX& v) const { return f.eta.dot(v); }
  VecX phi(const VecX& v) const { return f.phi * v; }
  VecX T(const VecX& v) const { return tangent_part(f, phi(v)); }
  VecX w(const VecX& v) const { return transversal_part(f, phi(v)); }
  VecX val(const FieldAlongN& x) const { return ctx.value(x); }

  /// Part of v outside the tangent subbundle d (transversal parts included).
  VecX outside(Distribution d, const VecX& v) const {
    return v - project(f, d, tangent_part(f, v));
  }
  /// max(|E₀ part|, |radical part|) of the tangential part of v.
  double e0_rad_component(const VecX& v) const {
    const auto c = sgl_components(f, tangent_part(f, v));
    return std::max(inf_norm(c[0]), inf_norm(c[1]));
  }

  GaussWeingartenParts gauss(const FieldAlongN& x, const FieldAlongN& y) const {
    return gauss_decompose(ctx, Conn::qs, x, y);
  }
  /// D̃_X V = −Ã_V X + D̃^l(X,V) + ∇̃^s_X V for transversal V.
  GaussWeingartenParts wein(const FieldAlongN& x, const FieldAlongN& v,
                            Conn c = Conn::qs) const {
    return weingarten_decompose(ctx, c, x, v);
  }
  VecX D(const FieldAlongN& x, const FieldAlongN& y) const { return gauss(x, y).tangential; }
  VecX A(const FieldAlongN& v, const FieldAlongN& x) const { return VecX(-wein(x, v).tangential); }

  /// 2ρ̃(Y,φX) − η(D̃_Xν)η(Y) + η(D̃_Yν)η(X), which equals ρ̃([X,Y],ν).
  double nu_formula(const FieldAlongN& x, const FieldAlongN& y) const {
    const FieldAlongN nu = FieldAlongN::nu();
    const VecX xv = val(x), yv = val(y);
    const VecX dxn = ctx.connection(Conn::qs, xv, nu);
    const VecX dyn = ctx.connection(Conn::qs, yv, nu);
    return 2.0 * g(yv, phi(xv)) - eta(dxn) * eta(yv) + eta(dyn) * eta(xv);
  }
};

using Fields = std::vector<FieldAlongN>;
using Rule = std::function<Measurement(const Pt&)>;

/// One check: its spec and the per-point rule.
struct Entry {
  CheckSpec spec;
  Rule rule;
};

/// Several checks sharing one per-point computation.
struct Group {
  std::vector<CheckSpec> specs;
  std::function<std::vector<Measurement>(const Pt&)> rule;
};

std::vector<ResidualReport> run_groups(const FrameBuilder& b, const std::vector<VecX>& us,
                                       const std::vector<Group>& groups, int threads) {
  std::vector<CheckSpec> specs;
  for (const auto& g : groups) specs.insert(specs.end(), g.specs.begin(), g.specs.end());
  auto eval = [&](int i) {
    const PointContext ctx(b, us[i]);
    const Pt pt(ctx);
    std::vector<Measurement> out;
    out.reserve(specs.size());
    for (const auto& g : groups) {
      if (!g.rule) {
        out.insert(out.end(), g.specs.size(), Measurement{});
        continue;
      }
      const auto v = g.rule(pt);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  };
  return evaluate_checks(specs, static_cast<int>(us.size()), eval, threads);
}

Group single(const Entry& e) {
  if (!e.rule) return {{e.spec}, nullptr};
  return {{e.spec}, [r = e.rule](const Pt& pt) { return std::vector<Measurement>{r(pt)}; }};
}

std::vector<ResidualReport> run_entries(const FrameBuilder& b, const std::vector<VecX>& us,
                                        const std::vector<Entry>& entries, int threads) {
  std::vector<Group> groups;
  for (const auto& e : entries) groups.push_back(single(e));
  return run_groups(b, us, groups, threads);
}

Entry info_entry(const std::string& id, const std::string& ref, double tol, const std::string& note) {
  return {{id, ref, tol, CheckKind::info, note}, nullptr};
}

std::string insufficient(int have, int need) {
  return "insufficient rank: " + std::to_string(have) + " independent section(s), need " +
         std::to_string(need);
}

/// Common preconditions of the SGL theorem checks; empty string when met.
std::string sgl_skip_reason(const FrameBuilder& b) {
  if (!b.ambient().has_contact()) return "ambient has no contact structure";
  if (!b.gauge().sgl) return b.gauge().sgl_skip_reason;
  return {};
}

std::vector<ResidualReport> skipped(const std::string& id, const std::string& reason,
                                    const std::vector<VecX>& us, double tol) {
  CheckSpec s{id, "SGL structure unavailable", tol, CheckKind::info, reason};
  return {reduce_check(s, std::vector<Measurement>(us.size()))};
}

template <class F>
double max_pairs(const Fields& a, const Fields& c, F&& fn) {
  double m = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = 0; q < c.size(); ++q) m = std::max(m, std::abs(fn(a[p], c[q])));
  return m;
}

/// Max over unordered distinct pairs of |outside(d, [X,Y])|.
double bracket_outside(const Pt& pt, Distribution d, const Fields& s) {
  double m = 0.0;
  for (std::size_t p = 0; p < s.size(); ++p)
    for (std::size_t q = p + 1; q < s.size(); ++q)
      m = std::max(m, inf_norm(pt.outside(d, pt.ctx.bracket(s[p], s[q]))));
  return m;
}

/// Max over ordered pairs of |outside(d, D_X Y)|.
double derivative_outside(const Pt& pt, Distribution d, const Fields& s) {
  return max_pairs(s, s, [&](const FieldAlongN& x, const FieldAlongN& y) {
    return inf_norm(pt.outside(d, pt.D(x, y)));
  });
}

std::string label(Distribution d) {
  switch (d) {
    case Distribution::E0: return "E₀";
    case Distribution::E0_nu: return "E₀⊥ν";
    case Distribution::E: return "E";
    case Distribution::E_nu: return "E⊥ν";
    case Distribution::Eprime: return "E′";
    case Distribution::Eprime_nu: return "E′⊥ν";
    default: return to_string(d);
  }
}

/// Relative distance of φξ from span(ξ), over the radical columns.
double radical_invariance_defect(const Frame& f) {
  if (f.r() == 0 || !f.has_contact) return 0.0;
  const MatX pxi = f.phi * f.xi;
  const MatX fit = f.xi * f.xi.colPivHouseholderQr().solve(pxi);
  const double scale = std::max(1.0, inf_norm(pxi));
  return inf_norm(MatX(pxi - fit)) / scale;
}

}  // namespace

// ---- classification and splits --------------------------------------------

SGLClassification classify_sgl(const FrameBuilder& b, const std::vector<VecX>& us) {
  if (us.empty()) throw UsageError("classify_sgl: empty sample set");
  radical_rank_over(b.immersion(), b.ambient().g, us, b.options().rank_tol);
  SGLClassification c;
  c.radical_rank = b.gauge().radical_rank;
  c.lightlike = c.radical_rank >= 1;
  c.has_contact = b.ambient().has_contact();
  if (!c.has_contact) {
    c.reason = "ambient has no contact structure";
    return c;
  }
  c.nu_tangent = true;
  c.radical_invariant = true;
  c.e0_nondegenerate = true;
  c.w_eprime_in_stv = true;
  bool w_nonzero = false;
  for (const VecX& u : us) {
    const Frame f = b(u);
    c.nu_tangent = c.nu_tangent && inf_norm(transversal_part(f, f.nu)) < 1e-8;
    c.radical_invariance_defect = std::max(c.radical_invariance_defect, radical_invariance_defect(f));
    if (!f.has_sgl) continue;
    c.e0_dim = static_cast<int>(f.e0.cols());
    c.eprime_dim = static_cast<int>(f.eprime.cols());
    c.e0_condition = std::max(c.e0_condition, gram_condition(f.e0, f.g));
    for (int k = 0; k < f.eprime.cols(); ++k) {
      const VecX wy = transversal_part(f, VecX(f.phi * f.eprime.col(k)));
      if (inf_norm(ltr_part(f, wy)) >= 1e-8) c.w_eprime_in_stv = false;
      if (inf_norm(wy) >= 1e-8) w_nonzero = true;
    }
  }
  c.radical_invariant = c.radical_invariance_defect < 1e-6;
  c.e0_nondegenerate = b.gauge().sgl && c.e0_condition < 1e6;
  c.eprime_trivial = b.gauge().sgl && c.eprime_dim == 0;
  c.w_eprime_in_stv = c.w_eprime_in_stv && w_nonzero;
  c.sgl = c.lightlike && c.nu_tangent && b.gauge().sgl && c.radical_invariant && c.e0_nondegenerate;
  if (!c.lightlike) c.reason = "radical rank is 0";
  else if (!c.nu_tangent) c.reason = "ν is not tangent";
  else if (!b.gauge().sgl) c.reason = b.gauge().sgl_skip_reason;
  else if (!c.radical_invariant) c.reason = "φ(Rad) ≠ Rad";
  else if (!c.e0_nondegenerate) c.reason = "E₀ is degenerate";
  return c;
}

TangentDecomposition decompose_tangent(const Frame& f, const VecX& x) {
  if (!f.has_sgl) throw UsageError("decompose_tangent: frame has no SGL structure");
  if (inf_norm(transversal_part(f, x)) > 1e-8 * std::max(1.0, inf_norm(x)))
    throw UsageError("decompose_tangent: vector is not tangent");
  const auto c = sgl_components(f, x);
  return {c[0], c[1], c[2], f.eta.dot(x - c[1])};
}

PhiSplit phi_split(const Frame& f, const VecX& v) {
  if (!f.has_contact) throw UsageError("phi_split: ambient has no contact structure");
  const double scale = 1e-8 * std::max(1.0, inf_norm(v));
  const bool tangent = inf_norm(transversal_part(f, v)) <= scale;
  const bool transversal = inf_norm(tangent_part(f, v)) <= scale;
  if (!tangent && !transversal)
    throw UsageError("phi_split: vector is neither tangent nor transversal");
  const VecX pv = f.phi * v;
  return {tangent_part(f, pv), transversal_part(f, pv)};
}

std::vector<FieldAlongN> distribution_sections(const FrameBuilder& b, Distribution d) {
  const bool structural = d == Distribution::tangent || d == Distribution::radical ||
                          d == Distribution::screen;
  if (!structural && !b.gauge().sgl) return {};
  const Frame f = b(b.anchor());
  const int m = f.m();
  std::vector<FieldAlongN> all;
  MatX vals(f.dim(), m);
  for (int k = 0; k < m; ++k) {
    all.push_back(FieldAlongN::section(d, k));
    vals.col(k) = all.back().at(f);
  }
  std::vector<FieldAlongN> out;
  if (inf_norm(vals) < kRankFloor) return out;
  for (int k : independent_columns(vals, 1e-8)) out.push_back(all[k]);
  return out;
}

std::vector<ResidualReport> check_sgl(const FrameBuilder& b, const std::vector<VecX>& us,
                                      double tol, int threads, std::uint64_t seed) {
  if (us.empty()) throw UsageError("check_sgl: empty sample set");
  if (!b.ambient().has_contact())
    return skipped("sgl.skipped", "ambient has no contact structure", us, tol);
  const FrameGauge& gauge = b.gauge();
  const int m = b.immersion().param_dim();
  std::vector<Entry> es;

  es.push_back({{"sgl.radical_rank", "r = dim Rad(TN)", tol, CheckKind::info, "max_residual is r"},
                [r = gauge.radical_rank](const Pt&) { return Measurement{double(r), 0.0}; }});
  es.push_back({{"sgl.radical_invariant", "φ(Rad(TN)) = Rad(TN)", tol, CheckKind::residual,
                 "relative distance of φξ from span ξ"},
                [](const Pt& pt) { return Measurement{radical_invariance_defect(pt.f), 0.0}; }});
  es.push_back({{"sgl.nu_tangent", "ν ∈ Γ(TN)", 1e-8},
                [](const Pt& pt) { return Measurement{inf_norm(transversal_part(pt.f, pt.f.nu)), 0.0}; }});
  if (!gauge.sgl) {
    es.push_back(info_entry("sgl.structure", "E₀, E′ not built", tol, gauge.sgl_skip_reason));
    return run_entries(b, us, es, threads);
  }

  // Parameter directions for sampled tangent vectors: the coordinate fields,
  // two seeded combinations and ν.
  std::vector<VecX> coeffs;
  for (int k = 0; k < m; ++k) coeffs.push_back(VecX::Unit(m, k));
  Rng rng(seed);
  for (int t = 0; t < 2; ++t) {
    VecX a(m);
    for (int k = 0; k < m; ++k) a(k) = rng.uniform(-1.0, 1.0);
    coeffs.push_back(a);
  }
  const auto tangent_samples = [coeffs](const Pt& pt) {
    std::vector<VecX> xs;
    for (const VecX& a : coeffs) xs.push_back(pt.f.J * a);
    xs.push_back(pt.f.nu);
    return xs;
  };

  es.push_back({{"sgl.E0_dim", "dim E₀", tol, CheckKind::info, "max_residual is dim E₀"},
                [](const Pt& pt) { return Measurement{double(pt.f.e0.cols()), 0.0}; }});
  es.push_back({{"sgl.Eprime_dim", "dim E′", tol, CheckKind::info, "max_residual is dim E′"},
                [](const Pt& pt) { return Measurement{double(pt.f.eprime.cols()), 0.0}; }});
  es.push_back({{"sgl.E0_nondegenerate", "ρ̃ nondegenerate on E₀", 1e6, CheckKind::residual,
                 "max_residual is cond(E₀ Gram)"},
                [](const Pt& pt) { return Measurement{gram_condition(pt.f.e0, pt.f.g), 0.0}; }});
  es.push_back({{"sgl.E0_invariant", "φE₀ = E₀", 1e-8},
                [](const Pt& pt) {
                  double v = 0.0;
                  for (int k = 0; k < pt.f.e0.cols(); ++k)
                    v = std::max(v, inf_norm(pt.outside(Distribution::E0, pt.phi(pt.f.e0.col(k)))));
                  return Measurement{v, 0.0};
                }});
  es.push_back({{"sgl.decomposition", "X = P₀X + P₁X + QX + η(X)ν", 1e-10},
                [=](const Pt& pt) {
                  double v = 0.0;
                  for (const VecX& x : tangent_samples(pt)) {
                    const auto d = decompose_tangent(pt.f, x);
                    v = std::max(v, inf_norm(VecX(d.p0 + d.p1 + d.q + d.eta * pt.f.nu - x)) /
                                        std::max(1.0, inf_norm(x)));
                  }
                  return Measurement{v, 0.0};
                }});
  es.push_back({{"sgl.decomposition_oracle", "P₀, P₁, Q, η agree with a block solve in [E₀|ξ|E′|ν]",
                 1e-8},
                [=](const Pt& pt) {
                  const Frame& f = pt.f;
                  const int a = f.e0.cols(), r = f.r(), e = f.eprime.cols();
                  MatX basis(f.dim(), a + r + e + 1);
                  basis << f.e0, f.xi, f.eprime, f.nu;
                  double v = 0.0;
                  for (const VecX& x : tangent_samples(pt)) {
                    const VecX c = basis.colPivHouseholderQr().solve(x);
                    const auto d = decompose_tangent(f, x);
                    v = std::max(v, inf_norm(VecX(d.p0 - f.e0 * c.head(a))));
                    v = std::max(v, inf_norm(VecX(d.p1 - f.xi * c.segment(a, r))));
                    v = std::max(v, inf_norm(VecX(d.q - f.eprime * c.segment(a + r, e))));
                    v = std::max(v, std::abs(d.eta - c(a + r + e)));
                  }
                  return Measurement{v, 0.0};
                }});
  es.push_back({{"sgl.phi_split_tangent", "φX − TX − wX = 0", 1e-10},
                [=](const Pt& pt) {
                  double v = 0.0;
                  for (const VecX& x : tangent_samples(pt)) {
                    const PhiSplit s = phi_split(pt.f, x);
                    v = std::max(v, inf_norm(VecX(pt.phi(x) - s.tangential - s.transversal)));
                  }
                  return Measurement{v, 0.0};
                }});
  es.push_back({{"sgl.phi_split_transversal", "φV − BV − CV = 0", 1e-10},
                [](const Pt& pt) {
                  double v = 0.0;
                  MatX tr(pt.f.dim(), pt.f.r() + pt.f.s());
                  tr << pt.f.ltr, pt.f.stv;
                  for (int k = 0; k < tr.cols(); ++k) {
                    const VecX x = tr.col(k);
                    const PhiSplit s = phi_split(pt.f, x);
                    v = std::max(v, inf_norm(VecX(pt.phi(x) - s.tangential - s.transversal)));
                  }
                  return Measurement{v, 0.0};
                }});
  es.push_back({{"sgl.w_on_E", "wX = 0 for X ∈ E ⊥ ν", 1e-8},
                [](const Pt& pt) {
                  MatX e(pt.f.dim(), pt.f.e0.cols() + pt.f.r() + 1);
                  e << pt.f.e0, pt.f.xi, pt.f.nu;
                  double v = 0.0;
                  for (int k = 0; k < e.cols(); ++k) v = std::max(v, inf_norm(pt.w(e.col(k))));
                  return Measurement{v, 0.0};
                }});
  es.push_back({{"sgl.T_squared", "T²X = −X + η(X)ν for X ∈ E ⊥ ν", 1e-8},
                [](const Pt& pt) {
                  MatX e(pt.f.dim(), pt.f.e0.cols() + pt.f.r() + 1);
                  e << pt.f.e0, pt.f.xi, pt.f.nu;
                  double v = 0.0;
                  for (int k = 0; k < e.cols(); ++k) {
                    const VecX x = e.col(k);
                    v = std::max(v, inf_norm(VecX(pt.T(pt.T(x)) + x - pt.eta(x) * pt.f.nu)));
                  }
                  return Measurement{v, 0.0};
                }});
  es.push_back({{"sgl.T_Eprime", "TY ∈ E′ for Y ∈ E′", 1e-8},
                [](const Pt& pt) {
                  double v = 0.0;
                  for (int k = 0; k < pt.f.eprime.cols(); ++k)
                    v = std::max(v, inf_norm(pt.outside(Distribution::Eprime, pt.T(pt.f.eprime.col(k)))));
                  return Measurement{v, 0.0};
                }});
  es.push_back({{"sgl.w_Eprime_stv", "wY ∈ S(TN⊥) for Y ∈ E′", 1e-8},
                [](const Pt& pt) {
                  double v = 0.0;
                  for (int k = 0; k < pt.f.eprime.cols(); ++k)
                    v = std::max(v, inf_norm(ltr_part(pt.f, pt.w(pt.f.eprime.col(k)))));
                  return Measurement{v, 0.0};
                }});
  if (gauge.eprime.nullity() > 0)
    es.push_back({{"sgl.phi_Eprime_not_invariant", "φ(E′) ≠ E′", tol, CheckKind::claim,
                   "measure: max |wY| over the E′ basis"},
                  [](const Pt& pt) {
                    double v = 0.0;
                    for (int k = 0; k < pt.f.eprime.cols(); ++k)
                      v = std::max(v, inf_norm(pt.w(pt.f.eprime.col(k))));
                    return Measurement{v, 0.0};
                  }});
  else
    es.push_back(info_entry("sgl.phi_Eprime_not_invariant", "φ(E′) ≠ E′", tol,
                            "E′ = 0 (invariant case); claim not applicable"));
  return run_entries(b, us, es, threads);
}

// ---- integrability ----------------------------------------------------------

std::vector<ResidualReport> check_integrability(const FrameBuilder& b, const std::vector<VecX>& us,
                                                double tol, int threads) {
  if (us.empty()) throw UsageError("check_integrability: empty sample set");
  if (const auto why = sgl_skip_reason(b); !why.empty())
    return skipped("thm.integrability.skipped", why, us, tol);
  using D = Distribution;
  const Fields e0 = distribution_sections(b, D::E0), e0n = distribution_sections(b, D::E0_nu),
               e = distribution_sections(b, D::E), en = distribution_sections(b, D::E_nu),
               ep = distribution_sections(b, D::Eprime),
               epn = distribution_sections(b, D::Eprime_nu);
  const int r = b.gauge().radical_rank;
  std::vector<Entry> es;

  auto id = [](D d) { return "thm." + to_string(d) + ".integrability"; };
  auto ref = [](D d) { return label(d) + " integrable ⇔ stated condition"; };
  auto add_iff = [&](D d, const Fields& s, const std::string& note, Rule cond) {
    if (s.size() < 2) {
      es.push_back(info_entry(id(d), ref(d), tol, insufficient(static_cast<int>(s.size()), 2)));
      return;
    }
    es.push_back({{id(d), ref(d), tol, CheckKind::iff, note},
                  [d, s, cond](const Pt& pt) {
                    return Measurement{bracket_outside(pt, d, s), cond(pt).direct};
                  }});
  };

  // (D′_XφY − D′_YφX, TZ) − (h̃^s(Y,φX) − h̃^s(X,φY), wZ) for X, Y in xs, Z in zs.
  auto screen_condition = [](const Pt& pt, const Fields& xs, const Fields& zs) {
    double m = 0.0;
    for (std::size_t p = 0; p < xs.size(); ++p)
      for (std::size_t q = p + 1; q < xs.size(); ++q) {
        const FieldAlongN px = FieldAlongN::phi_of(xs[p]), py = FieldAlongN::phi_of(xs[q]);
        const VecX dxy = screen_split(pt.ctx, Conn::qs, xs[p], py).screen;
        const VecX dyx = screen_split(pt.ctx, Conn::qs, xs[q], px).screen;
        const VecX hs_yx = pt.gauss(xs[q], px).screen_transversal;
        const VecX hs_xy = pt.gauss(xs[p], py).screen_transversal;
        for (const auto& z : zs) {
          const VecX zv = pt.val(z);
          m = std::max(m, std::abs(pt.g(VecX(dxy - dyx), pt.T(zv)) -
                                   pt.g(VecX(hs_yx - hs_xy), pt.w(zv))));
        }
      }
    return m;
  };
  auto nu_condition = [](const Pt& pt, const Fields& s) {
    double m = 0.0;
    for (std::size_t p = 0; p < s.size(); ++p)
      for (std::size_t q = p + 1; q < s.size(); ++q)
        m = std::max(m, std::abs(pt.nu_formula(s[p], s[q])));
    return m;
  };

  add_iff(D::E0, e0, "condition: 2ρ̃(Y,φX) − η(D̃_Xν)η(Y) + η(D̃_Yν)η(X)",
          [e0, nu_condition](const Pt& pt) { return Measurement{nu_condition(pt, e0), 0.0}; });
  add_iff(D::E0_nu, e0n,
          "condition: screen pairing with TZ, wZ (Z ∈ E′) and h̃′ pairing with φN′, X, Y ∈ E₀",
          [e0, ep, r, screen_condition](const Pt& pt) {
            double m = screen_condition(pt, e0, ep);
            for (std::size_t p = 0; p < e0.size(); ++p)
              for (std::size_t q = p + 1; q < e0.size(); ++q) {
                const VecX hxy =
                    screen_split(pt.ctx, Conn::qs, e0[p], FieldAlongN::phi_of(e0[q])).radical;
                const VecX hyx =
                    screen_split(pt.ctx, Conn::qs, e0[q], FieldAlongN::phi_of(e0[p])).radical;
                for (int l = 0; l < r; ++l)
                  m = std::max(m, std::abs(pt.g(VecX(hxy - hyx), pt.phi(pt.f.ltr.col(l)))));
              }
            return Measurement{m, 0.0};
          });
  if (e.size() < 2) {
    es.push_back(info_entry(id(D::E), "E is not integrable", tol, insufficient(int(e.size()), 2)));
  } else {
    es.push_back({{id(D::E), "E is not integrable", tol, CheckKind::claim,
                   "measure: max |[X,Y] outside E|"},
                  [e](const Pt& pt) { return Measurement{bracket_outside(pt, D::E, e), 0.0}; }});
    es.push_back({{"thm.E.integrability_nu", "ρ̃([X,Y],ν) = 2ρ̃(Y,φX) − η(D̃_Xν)η(Y) + η(D̃_Yν)η(X)",
                   tol, CheckKind::residual, "the ν-component identity on E sections"},
                  [e](const Pt& pt) {
                    double m = 0.0;
                    for (std::size_t p = 0; p < e.size(); ++p)
                      for (std::size_t q = p + 1; q < e.size(); ++q) {
                        const VecX br = pt.ctx.bracket(e[p], e[q]);
                        m = std::max(m, std::abs(pt.g(br, pt.f.nu) - pt.nu_formula(e[p], e[q])));
                      }
                    return Measurement{m, 0.0};
                  }});
  }
  add_iff(D::E_nu, en, "condition: screen pairing with TZ, wZ for X, Y ∈ E, Z ∈ E′",
          [e, ep, screen_condition](const Pt& pt) {
            return Measurement{screen_condition(pt, e, ep), 0.0};
          });
  add_iff(D::Eprime, ep, "condition: 2ρ̃(Y,φX) − η(D̃_Xν)η(Y) + η(D̃_Yν)η(X)",
          [ep, nu_condition](const Pt& pt) { return Measurement{nu_condition(pt, ep), 0.0}; });
  add_iff(D::Eprime_nu, epn,
          "condition: E₀ and Rad components of D_Y TZ − D_Z TY − Ã_{wZ}Y + Ã_{wY}Z",
          [epn](const Pt& pt) {
            double m = 0.0;
            for (std::size_t p = 0; p < epn.size(); ++p)
              for (std::size_t q = p + 1; q < epn.size(); ++q) {
                const FieldAlongN& y = epn[p];
                const FieldAlongN& z = epn[q];
                const VecX v = pt.D(y, FieldAlongN::T_of(z)) - pt.D(z, FieldAlongN::T_of(y)) -
                               pt.A(FieldAlongN::w_of(z), y) + pt.A(FieldAlongN::w_of(y), z);
                m = std::max(m, pt.e0_rad_component(v));
              }
            return Measurement{m, 0.0};
          });
  return run_entries(b, us, es, threads);
}

// ---- parallelism ------------------------------------------------------------

std::vector<ResidualReport> check_parallelism(const FrameBuilder& b, const std::vector<VecX>& us,
                                              double tol, int threads) {
  if (us.empty()) throw UsageError("check_parallelism: empty sample set");
  if (const auto why = sgl_skip_reason(b); !why.empty())
    return skipped("thm.parallelism.skipped", why, us, tol);
  using D = Distribution;
  const Fields e = distribution_sections(b, D::E), en = distribution_sections(b, D::E_nu),
               ep = distribution_sections(b, D::Eprime),
               epn = distribution_sections(b, D::Eprime_nu);
  std::vector<Entry> es;
  auto id = [](D d) { return "thm." + to_string(d) + ".parallel"; };

  auto add_claim = [&](D d, const Fields& s) {
    const std::string ref = label(d) + " is not parallel";
    if (s.size() < 2) {
      es.push_back(info_entry(id(d), ref, tol, insufficient(int(s.size()), 2)));
      return;
    }
    es.push_back({{id(d), ref, tol, CheckKind::claim, "measure: max |D_X Y outside " + label(d) + "|"},
                  [d, s](const Pt& pt) { return Measurement{derivative_outside(pt, d, s), 0.0}; }});
  };
  auto add_iff = [&](const std::string& cid, D d, const Fields& s, const std::string& note,
                     Rule cond) {
    const std::string ref = label(d) + " parallel ⇔ stated condition";
    if (s.size() < 2) {
      es.push_back(info_entry(cid, ref, tol, insufficient(int(s.size()), 2)));
      return;
    }
    es.push_back({{cid, ref, tol, CheckKind::iff, note},
                  [d, s, cond](const Pt& pt) {
                    return Measurement{derivative_outside(pt, d, s), cond(pt).direct};
                  }});
  };

  add_claim(D::E, e);
  add_iff(id(D::E_nu), D::E_nu, en,
          "condition: ρ̃(D_X TZ, φY) − ρ̃(φY, Ã_{wZ}X) and h̃^l(X,TZ) + D̃^l(X,wZ); "
          "X, Y ∈ E⊥ν, Z ∈ E′",
          [en, ep](const Pt& pt) {
            double m = 0.0;
            for (const auto& x : en)
              for (const auto& z : ep) {
                const FieldAlongN tz = FieldAlongN::T_of(z), wz = FieldAlongN::w_of(z);
                const auto gp = pt.gauss(x, tz);
                const auto wp = pt.wein(x, wz);
                const VecX a = -wp.tangential;
                m = std::max(m, inf_norm(VecX(gp.ltr + wp.ltr)));
                for (const auto& y : en) {
                  const VecX py = pt.phi(pt.val(y));
                  m = std::max(m, std::abs(pt.g(gp.tangential, py) - pt.g(py, a)));
                }
              }
            return Measurement{m, 0.0};
          });
  add_claim(D::Eprime, ep);
  auto eprime_nu_condition = [epn](bool screen_only) {
    return [epn, screen_only](const Pt& pt) {
      double m = 0.0;
      for (const auto& y : epn)
        for (const auto& z : epn) {
          VecX d = pt.D(y, FieldAlongN::T_of(z));
          if (screen_only) d = screen_part(pt.f, d);
          m = std::max(m, pt.e0_rad_component(VecX(d - pt.A(FieldAlongN::w_of(z), y))));
        }
      return Measurement{m, 0.0};
    };
  };
  add_iff(id(D::Eprime_nu), D::Eprime_nu, epn,
          "condition: E₀ and Rad components of D′_Y TZ − Ã_{wZ}Y, as printed",
          eprime_nu_condition(true));
  add_iff("thm.Eprimenu.parallel_proof_form", D::Eprime_nu, epn,
          "condition: E₀ and Rad components of D_Y TZ − Ã_{wZ}Y, the form the proof derives",
          eprime_nu_condition(false));
  return run_entries(b, us, es, threads);
}

// ---- geodesicity ------------------------------------------------------------

std::vector<ResidualReport> check_geodesic(const FrameBuilder& b, const std::vector<VecX>& us,
                                           double tol, int threads) {
  if (us.empty()) throw UsageError("check_geodesic: empty sample set");
  if (const auto why = sgl_skip_reason(b); !why.empty())
    return skipped("thm.geodesic.skipped", why, us, tol);
  using D = Distribution;
  const Fields e = distribution_sections(b, D::E), en = distribution_sections(b, D::E_nu),
               ep = distribution_sections(b, D::Eprime),
               epn = distribution_sections(b, D::Eprime_nu);
  const int r = b.gauge().radical_rank;
  std::vector<Entry> es;

  auto h_size = [](const GaussWeingartenParts& p) {
    return std::max(inf_norm(p.ltr), inf_norm(p.screen_transversal));
  };
  es.push_back({{"def.E_geodesic", "max |h̃(X,Y)|, X, Y ∈ E", tol, CheckKind::info,
                 "E-geodesic when this vanishes"},
                [e, h_size](const Pt& pt) {
                  return Measurement{max_pairs(e, e, [&](const auto& x, const auto& y) {
                                       return h_size(pt.gauss(x, y));
                                     }),
                                     0.0};
                }});

  if (en.size() < 2) {
    es.push_back(info_entry("thm.Enu.foliation", "E⊥ν totally geodesic foliation", tol,
                            insufficient(int(en.size()), 2)));
  } else {
    es.push_back({{"thm.Enu.foliation",
                   "E⊥ν totally geodesic foliation ⇔ E⊥ν-geodesic and D-parallel", tol,
                   CheckKind::iff,
                   "direct: D̃_X Y outside E⊥ν; condition: max(|h̃(X,Y)|, |D_X Y outside E⊥ν|)"},
                  [en, h_size](const Pt& pt) {
                    double direct = 0.0, cond = 0.0;
                    for (const auto& x : en)
                      for (const auto& y : en) {
                        const auto p = pt.gauss(x, y);
                        direct = std::max(direct, inf_norm(pt.outside(D::E_nu, p.total)));
                        cond = std::max({cond, h_size(p), inf_norm(pt.outside(D::E_nu, p.tangential))});
                      }
                    return Measurement{direct, cond};
                  }});
    es.push_back({{"geodesic.foliation_pairings",
                   "ρ̃(D̃_X Y,ξ) = ρ̃(h̃^l(X,Y),ξ), ρ̃(D̃_X Y,W) = ρ̃(h̃^s(X,Y),W), "
                   "ρ̃(D̃_X Y,Z) = ρ̃(D_X Y,Z)",
                   tol},
                  [en, ep, r](const Pt& pt) {
                    double m = 0.0;
                    for (const auto& x : en)
                      for (const auto& y : en) {
                        const auto p = pt.gauss(x, y);
                        for (int l = 0; l < r; ++l) {
                          const VecX xi = pt.f.xi.col(l);
                          m = std::max(m, std::abs(pt.g(p.total, xi) - pt.g(p.ltr, xi)));
                        }
                        for (int a = 0; a < pt.f.s(); ++a) {
                          const VecX w = pt.f.stv.col(a);
                          m = std::max(m, std::abs(pt.g(p.total, w) - pt.g(p.screen_transversal, w)));
                        }
                        for (const auto& z : ep) {
                          const VecX zv = pt.val(z);
                          m = std::max(m, std::abs(pt.g(p.total, zv) - pt.g(p.tangential, zv)));
                        }
                      }
                    return Measurement{m, 0.0};
                  }});
  }

  // Mixed geodesicity: X ∈ E, Z ∈ E′⊥ν.
  if (e.empty() || epn.empty()) {
    const std::string why = insufficient(int(std::min(e.size(), epn.size())), 1);
    es.push_back(info_entry("thm.mixed_geodesic.pairing", "mixed geodesic ⇔ (1), (2)", tol, why));
    es.push_back(info_entry("thm.mixed_geodesic.w_form", "mixed geodesic ⇔ (1), w/C form", tol, why));
    return run_entries(b, us, es, threads);
  }
  struct MixedTerms {
    double direct = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
  };
  auto mixed = [e, epn, h_size](const Pt& pt) {
    MixedTerms t;
    for (const auto& x : e)
      for (const auto& z : epn) {
        t.direct = std::max(t.direct, h_size(pt.gauss(x, z)));
        const FieldAlongN tz = FieldAlongN::T_of(z), wz = FieldAlongN::w_of(z);
        const auto gp = pt.gauss(x, tz);
        const auto wq = pt.wein(x, wz);
        const auto wn = pt.wein(x, wz, Conn::nabla);
        t.c1 = std::max(t.c1, inf_norm(VecX(gp.ltr + wn.ltr)));
        const VecX left = -wq.tangential - gp.tangential;   // Ã_{wZ}X − D_X TZ
        const VecX right = gp.screen_transversal + wq.screen_transversal;
        for (int a = 0; a < pt.f.s(); ++a) {
          const VecX w = pt.f.stv.col(a);
          const VecX pw = pt.phi(w);
          t.c2 = std::max(t.c2, std::abs(pt.g(left, tangent_part(pt.f, pw)) -
                                         pt.g(right, transversal_part(pt.f, pw))));
        }
        t.c3 = std::max(t.c3, inf_norm(VecX(pt.w(left) - transversal_part(pt.f, pt.phi(right)))));
      }
    return t;
  };
  std::vector<Group> groups;
  for (const auto& x : es) groups.push_back(single(x));
  groups.push_back(
      {{{"thm.mixed_geodesic.pairing",
         "mixed geodesic ⇔ h̃^l(X,TZ) = −D^l(X,wZ) and "
         "ρ̃(Ã_{wZ}X − D_X TZ, BW) = ρ̃(h̃^s(X,TZ) + ∇̃^s_X wZ, CW)",
         tol, CheckKind::iff, "direct: max |h̃(X,Z)|, X ∈ E, Z ∈ E′⊥ν"},
        {"thm.mixed_geodesic.w_form",
         "mixed geodesic ⇔ h̃^l(X,TZ) = −D^l(X,wZ) and "
         "w(Ã_{wZ}X − D_X TZ) = C(h̃^s(X,TZ) + ∇̃^s_X wZ)",
         tol, CheckKind::iff, "direct: max |h̃(X,Z)|, X ∈ E, Z ∈ E′⊥ν"}},
       [mixed](const Pt& pt) {
         const auto t = mixed(pt);
         return std::vector<Measurement>{{t.direct, std::max(t.c1, t.c2)},
                                         {t.direct, std::max(t.c1, t.c3)}};
       }});
  return run_groups(b, us, groups, threads);
}

// ---- lemma splits -----------------------------------------------------------

std::vector<ResidualReport> check_lemma_splits(const FrameBuilder& b, const std::vector<VecX>& us,
                                               double tol, int threads, std::uint64_t seed) {
  if (us.empty()) throw UsageError("check_lemma_splits: empty sample set");
  if (const auto why = sgl_skip_reason(b); !why.empty())
    return skipped("lemma.skipped", why, us, tol);
  Fields xs = tangent_test_fields(b.immersion().param_dim(), 3, seed);
  xs.push_back(FieldAlongN::nu());
  const Fields e0 = distribution_sections(b, Distribution::E0);
  const Fields ep = distribution_sections(b, Distribution::Eprime);

  enum { l55, l55f, l56, l56f, l57, l57f, count };
  struct Terms {
    std::array<double, count> v{};
  };
  auto terms = [xs](const Pt& pt) {
    Terms t;
    const Frame& f = pt.f;
    auto B = [&](const VecX& v) { return tangent_part(f, pt.phi(v)); };
    auto C = [&](const VecX& v) { return transversal_part(f, pt.phi(v)); };
    for (const auto& x : xs)
      for (const auto& y : xs) {
        const VecX xv = pt.val(x), yv = pt.val(y);
        const auto h = pt.gauss(x, y);
        const auto ht = pt.gauss(x, FieldAlongN::T_of(y));
        const auto wy = pt.wein(x, FieldAlongN::w_of(y));
        const VecX lhs_t = ht.tangential + wy.tangential;  // D_X TY − Ã_{wY}X
        const VecX rhs_t = pt.T(h.tangential) + B(h.screen_transversal) - pt.eta(yv) * xv +
                           pt.g(xv, yv) * f.nu;
        auto up = [&](int k, const VecX& v) { t.v[k] = std::max(t.v[k], inf_norm(v)); };
        up(l55, VecX(lhs_t - rhs_t));
        up(l55f, VecX(lhs_t - rhs_t - B(h.ltr)));
        const VecX all_c = pt.w(h.tangential) + C(h.ltr) + C(h.screen_transversal);
        const VecX lhs_l = ht.ltr + wy.ltr;
        up(l56, VecX(lhs_l - C(h.ltr)));
        up(l56f, VecX(lhs_l - ltr_part(f, all_c)));
        const VecX lhs_s = ht.screen_transversal + wy.screen_transversal;
        up(l57, VecX(lhs_s - pt.w(h.tangential) - C(h.screen_transversal)));
        up(l57f, VecX(lhs_s - stv_part(f, all_c)));
      }
    return t;
  };
  std::array<CheckSpec, count> specs;
  specs[l55] = {"lemma.tangential", "D_X TY − Ã_{wY}X = TD_X Y + Bh̃^s(X,Y) − η(Y)X + ρ(X,Y)ν",
                tol, CheckKind::residual, "as printed"};
  specs[l55f] = {"lemma.tangential_full",
                 "D_X TY − Ã_{wY}X = TD_X Y + Bh̃^l(X,Y) + Bh̃^s(X,Y) − η(Y)X + ρ(X,Y)ν", tol,
                 CheckKind::residual, "with the Bh̃^l term"};
  specs[l56] = {"lemma.lightlike", "h̃^l(X,TY) + D̃^l(X,wY) = Ch̃^l(X,Y)", tol,
                CheckKind::residual, "as printed"};
  specs[l56f] = {"lemma.lightlike_full",
                 "h̃^l(X,TY) + D̃^l(X,wY) = ltr part of (wD_X Y + Ch̃^l + Ch̃^s)", tol,
                 CheckKind::residual, "all lightlike transversal terms"};
  specs[l57] = {"lemma.screen_transversal", "h̃^s(X,TY) + ∇̃^s_X wY = wD_X Y + Ch̃^s(X,Y)", tol,
                CheckKind::residual, "as printed"};
  specs[l57f] = {"lemma.screen_transversal_full",
                 "h̃^s(X,TY) + ∇̃^s_X wY = S(TN⊥) part of (wD_X Y + Ch̃^l + Ch̃^s)", tol,
                 CheckKind::residual, "all screen-transversal terms"};
  std::vector<Group> groups;
  groups.push_back({std::vector<CheckSpec>(specs.begin(), specs.end()), [terms](const Pt& pt) {
                      const Terms t = terms(pt);
                      std::vector<Measurement> out;
                      for (double v : t.v) out.push_back({v, 0.0});
                      return out;
                    }});
  std::vector<Entry> es;
  if (e0.empty() || ep.empty()) {
    es.push_back(info_entry("lemma.E0_Eprime_tangential", "D_X Z for X ∈ E₀, Z ∈ E′", tol,
                            insufficient(int(std::min(e0.size(), ep.size())), 1)));
    for (const auto& x : es) groups.push_back(single(x));
    return run_groups(b, us, groups, threads);
  }
  auto final_formula = [e0, ep](bool full) {
    return [e0, ep, full](const Pt& pt) {
      const Frame& f = pt.f;
      auto B = [&](const VecX& v) { return tangent_part(f, pt.phi(v)); };
      double m = 0.0;
      for (const auto& x : e0)
        for (const auto& z : ep) {
          const VecX xv = pt.val(x), zv = pt.val(z);
          const VecX dxz = pt.D(x, z);
          const auto gt = pt.gauss(x, FieldAlongN::T_of(z));
          const auto wz = pt.wein(x, FieldAlongN::w_of(z));
          VecX rhs = -pt.T(gt.tangential) + pt.T(VecX(-wz.tangential)) - B(gt.screen_transversal) -
                     B(wz.screen_transversal) + pt.eta(zv) * pt.phi(xv) + pt.eta(dxz) * f.nu;
          if (full) rhs -= B(gt.ltr) + B(wz.ltr);
          m = std::max(m, inf_norm(VecX(dxz - rhs)));
        }
      return Measurement{m, 0.0};
    };
  };
  es.push_back({{"lemma.E0_Eprime_tangential",
                 "D_X Z = −TD_X TZ + TÃ_{wZ}X − Bh̃^s(X,TZ) − B∇̃^s_X wZ + η(Z)φX + η(D_X Z)ν",
                 tol, CheckKind::residual, "X ∈ E₀, Z ∈ E′; as printed"},
                final_formula(false)});
  es.push_back({{"lemma.E0_Eprime_tangential_full",
                 "as printed, plus −Bh̃^l(X,TZ) − BD̃^l(X,wZ)", tol, CheckKind::residual,
                 "X ∈ E₀, Z ∈ E′"},
                final_formula(true)});
  for (const auto& x : es) groups.push_back(single(x));
  return run_groups(b, us, groups, threads);
}

}  // namespace sgl
