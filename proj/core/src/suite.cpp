#include "sgl/suite.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sgl/contact.hpp"
#include "sgl/sampling.hpp"
#include "sgl/sgl_analysis.hpp"
#include "sgl/statistical.hpp"

namespace sgl {

namespace {

const std::pair<Suite, const char*> kSuiteNames[] = {
    {Suite::axioms, "axioms"},         {Suite::frames, "frames"},
    {Suite::sgl, "sgl"},               {Suite::integrability, "integrability"},
    {Suite::parallelism, "parallelism"}, {Suite::geodesic, "geodesic"},
    {Suite::lemma, "lemma"}};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

ResidualReport info(const std::string& id, const std::string& ref, int samples, double value,
                    const std::string& note) {
  std::vector<Measurement> v(static_cast<std::size_t>(samples), Measurement{value, 0.0});
  return reduce_check({id, ref, 0.0, CheckKind::info, note}, v);
}

template <class V>
void append(std::vector<ResidualReport>& out, V&& more) {
  for (auto& r : more) out.push_back(std::move(r));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::vector<Suite> all_suites() {
  std::vector<Suite> out;
  for (const auto& [s, name] : kSuiteNames) out.push_back(s);
  return out;
}

std::string to_string(Suite s) {
  for (const auto& [k, name] : kSuiteNames)
    if (k == s) return name;
  return "?";
}

std::vector<Suite> parse_suites(const std::string& list) {
  std::vector<Suite> out;
  auto add = [&out](Suite s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item == "all") {
      for (Suite s : all_suites()) add(s);
      continue;
    }
    bool found = false;
    for (const auto& [s, name] : kSuiteNames)
      if (item == name) {
        add(s);
        found = true;
      }
    if (!found) throw UsageError("unknown suite '" + item + "'");
  }
  if (out.empty()) throw UsageError("empty suite list");
  return out;
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "text") return Format::text;
  throw UsageError("unknown format '" + name + "' (expected json or text)");
}

void RunConfig::validate() const {
  if (samples < 1) throw UsageError("samples must be >= 1");
  if (!(tol > 0.0)) throw UsageError("tol must be > 0");
  if (!(ad_tol > 0.0)) throw UsageError("ad_tol must be > 0");
  if (threads < 1) throw UsageError("threads must be >= 1");
  if (suites.empty()) throw UsageError("no suites selected");
  for (const auto& [id, v] : tol_overrides)
    if (!(v > 0.0)) throw UsageError("tolerance override for '" + id + "' must be > 0");
}

namespace {

/// Entry plus the λ in effect and the config's tolerance overrides.
struct Resolved {
  CatalogEntry entry;
  double lambda = 0.0;
  std::map<std::string, double> overrides;
};

Resolved resolve(const RunConfig& cfg) {
  if (cfg.config_path.empty())
    return {build_entry(cfg.entry, cfg.lambda, cfg.alpha, cfg.mapping), cfg.lambda, {}};
  ImmersionConfig ic = load_config(cfg.config_path);
  if (cfg.lambda_set) ic.lambda = cfg.lambda;
  return {build_config_entry(ic), ic.lambda, ic.tol_overrides};
}

}  // namespace

CatalogEntry resolve_entry(const RunConfig& cfg) { return resolve(cfg).entry; }

std::vector<VecX> parameter_samples(const CatalogEntry& e, const RunConfig& cfg) {
  return sample_points(e.immersion.box, cfg.samples, cfg.seed);
}

std::vector<ResidualReport> check_ambient_derivatives(const AmbientStructure& a,
                                                      const std::vector<VecX>& points,
                                                      double step, double tol) {
  struct Item {
    const char* id;
    const char* ref;
    const SmoothMap* map;
  };
  std::vector<Item> items = {{"oracle.ambient.metric", "d ρ̃ (AD vs central difference)", &a.g.map()},
                             {"oracle.ambient.K", "d K (AD vs central difference)", &a.k.map()}};
  if (a.has_contact()) {
    items.push_back({"oracle.ambient.phi", "d φ (AD vs central difference)", &a.contact->phi.map()});
    items.push_back({"oracle.ambient.eta", "d η (AD vs central difference)", &a.contact->eta.map()});
    items.push_back({"oracle.ambient.nu", "d ν (AD vs central difference)", &a.contact->nu.map()});
  }
  std::vector<CheckSpec> specs;
  for (const auto& it : items) specs.push_back({it.id, it.ref, tol});
  // Directions: the coordinate axes and one fixed random unit vector.
  const int d = a.dim();
  std::vector<VecX> dirs;
  for (int k = 0; k < d; ++k) dirs.push_back(VecX::Unit(d, k));
  Rng rng(5);
  VecX r(d);
  for (int k = 0; k < d; ++k) r(k) = rng.uniform(-1.0, 1.0);
  dirs.push_back(r.normalized());
  return evaluate_checks(
      specs, static_cast<int>(points.size()),
      [&](int i) {
        std::vector<Measurement> out;
        for (const auto& it : items) {
          double worst = 0.0;
          for (const auto& v : dirs) {
            const VecX ad = it.map->directional(points[i], v);
            const VecX fd = central_difference(*it.map, points[i], v, step);
            worst = std::max(worst, (ad - fd).lpNorm<Eigen::Infinity>());
          }
          out.push_back({worst, 0.0});
        }
        return out;
      },
      1);
}

std::vector<ResidualReport> run_axioms(const CatalogEntry& e, const RunConfig& cfg) {
  const AmbientStructure& a = e.ambient;
  const auto pts = sample_points(Box::cube(a.dim(), 1.0), cfg.samples, cfg.seed);
  std::vector<ResidualReport> out;
  append(out, check_statistical(a.statistical(), pts, cfg.ad_tol, cfg.threads));
  if (a.has_contact()) {
    append(out, check_contact_metric(*a.contact, pts, cfg.ad_tol, cfg.threads));
    append(out, check_sasakian(*a.contact, pts, cfg.ad_tol, cfg.threads));
    append(out, check_sasakian_statistical(*a.contact, a.statistical(), pts, cfg.ad_tol, cfg.threads));
    append(out, check_qs_axioms(QSConnection(a), pts, cfg.ad_tol, cfg.threads));
  } else {
    out.push_back(info("axioms.contact", "contact, Sasakian and QS axioms", cfg.samples, 0.0,
                       "skipped: ambient has no contact structure"));
  }
  // The FD oracle runs on a 10-point spot check.
  const auto spot = sample_points(Box::cube(a.dim(), 1.0), std::min(cfg.samples, 10), cfg.seed + 1);
  append(out, check_ambient_derivatives(a, spot));
  return out;
}

std::vector<ResidualReport> check_expected(const CatalogEntry& e, const FrameBuilder& b,
                                           const std::vector<VecX>& us, double tol, int threads) {
  const ExpectedFlags& x = e.expected;
  const int n = static_cast<int>(us.size());
  std::vector<ResidualReport> out;
  const SGLClassification c = classify_sgl(b, us);
  auto flag = [&](const std::string& id, const std::string& ref, bool asserted, double got,
                  double want, const std::string& what) {
    if (!asserted) {
      out.push_back(info(id, ref, n, got, what + " = " + fmt(got) + " (not asserted)"));
      return;
    }
    const double mismatch = got == want ? 0.0 : 1.0;
    std::vector<Measurement> v(static_cast<std::size_t>(n), Measurement{mismatch, 0.0});
    ResidualReport r = reduce_check({id, ref, 0.5}, v);
    r.notes = what + " = " + fmt(got) + ", expected " + fmt(want);
    out.push_back(r);
  };
  flag("catalog.radical_rank", "expected radical rank", x.radical_rank >= 0, c.radical_rank,
       x.radical_rank, "radical rank");
  flag("catalog.sgl", "expected SGL classification", e.expected.sgl, c.sgl ? 1 : 0, 1,
       "sgl" + (c.sgl ? std::string() : " (" + c.reason + ")"));
  flag("catalog.E0_dim", "expected dim E₀", x.e0_dim >= 0, c.e0_dim, x.e0_dim, "dim E₀");
  flag("catalog.Eprime_dim", "expected dim E′", x.eprime_dim >= 0, c.eprime_dim, x.eprime_dim,
       "dim E′");

  // Totally geodesic: h^l and h^s vanish on coordinate pairs (QS connection,
  // Levi-Civita without a contact structure).
  const Conn conn = b.ambient().has_contact() ? Conn::qs : Conn::levi_civita;
  const int m = b.immersion().param_dim();
  const CheckSpec tg{"catalog.totally_geodesic", "h^l(∂i,∂j) = h^s(∂i,∂j) = 0", tol,
                     x.totally_geodesic ? CheckKind::residual : CheckKind::info,
                     x.totally_geodesic ? "" : "max |h̃| (not asserted)"};
  append(out, evaluate_checks(
                  {tg}, n,
                  [&](int i) {
                    const PointContext ctx(b, us[i]);
                    double worst = 0.0;
                    for (int p = 0; p < m; ++p)
                      for (int q = 0; q < m; ++q) {
                        const auto parts = gauss_decompose(ctx, conn, FieldAlongN::coordinate(p),
                                                           FieldAlongN::coordinate(q));
                        worst = std::max({worst, parts.ltr.lpNorm<Eigen::Infinity>(),
                                          parts.screen_transversal.lpNorm<Eigen::Infinity>()});
                      }
                    return std::vector<Measurement>{{worst, 0.0}};
                  },
                  threads));
  return out;
}

std::vector<ResidualReport> run_suite(const RunConfig& cfg) {
  cfg.validate();
  Resolved res = resolve(cfg);
  const CatalogEntry& e = res.entry;
  std::map<std::string, double> overrides = res.overrides;
  for (const auto& [id, v] : cfg.tol_overrides) overrides[id] = v;
  const ToleranceScope scope(overrides);

  std::vector<ResidualReport> out;
  std::string suites;
  for (Suite s : cfg.suites) suites += (suites.empty() ? "" : ",") + to_string(s);
  out.push_back(info("run.config", e.description, cfg.samples, 0.0,
                     "entry=" + e.name + " suites=" + suites + " samples=" +
                         std::to_string(cfg.samples) + " seed=" + std::to_string(cfg.seed) +
                         " tol=" + fmt(cfg.tol) + " lambda=" + fmt(res.lambda) +
                         (cfg.config_path.empty()
                              ? " alpha=" + fmt(cfg.alpha) + " mapping=" + to_string(cfg.mapping)
                              : " config=" + cfg.config_path)));

  const auto has = [&](Suite s) {
    return std::find(cfg.suites.begin(), cfg.suites.end(), s) != cfg.suites.end();
  };
  if (has(Suite::axioms)) append(out, run_axioms(e, cfg));

  const bool needs_frames = has(Suite::frames) || has(Suite::sgl) || has(Suite::integrability) ||
                            has(Suite::parallelism) || has(Suite::geodesic) || has(Suite::lemma);
  if (!needs_frames) return out;
  const auto us = parameter_samples(e, cfg);
  const FrameBuilder b(e.immersion, e.ambient, us.front());
  for (Suite s : cfg.suites) {
    switch (s) {
      case Suite::axioms: break;
      case Suite::frames:
        append(out, check_frames(b, us, cfg.threads));
        append(out, check_induced_relations(b, us, cfg.tol, cfg.threads));
        break;
      case Suite::sgl:
        append(out, check_sgl(b, us, cfg.tol, cfg.threads));
        append(out, check_expected(e, b, us, cfg.tol, cfg.threads));
        break;
      case Suite::integrability: append(out, check_integrability(b, us, cfg.tol, cfg.threads)); break;
      case Suite::parallelism: append(out, check_parallelism(b, us, cfg.tol, cfg.threads)); break;
      case Suite::geodesic: append(out, check_geodesic(b, us, cfg.tol, cfg.threads)); break;
      case Suite::lemma: append(out, check_lemma_splits(b, us, cfg.tol, cfg.threads)); break;
    }
  }
  return out;
}

void emit_report(const std::vector<ResidualReport>& reports, Format format,
                 const std::string& path) {
  const std::string text = format == Format::json ? to_json_text(reports) : to_text_table(reports);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError("cannot write report to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

int exit_status(const std::vector<ResidualReport>& reports) { return all_pass(reports) ? 0 : 1; }

}  // namespace sgl
