#pragma once

// Check suites over a catalog entry or config immersion, and report output.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sgl/catalog.hpp"
#include "sgl/expression.hpp"
#include "sgl/report.hpp"

namespace sgl {

enum class Suite { axioms, frames, sgl, integrability, parallelism, geodesic, lemma };

/// Canonical order, as expanded by "all".
std::vector<Suite> all_suites();
std::string to_string(Suite s);
/// Comma-separated names or "all"; duplicates dropped, order kept.
std::vector<Suite> parse_suites(const std::string& list);

enum class Format { json, text };
Format parse_format(const std::string& name);

struct RunConfig {
  std::string entry = "example_3_2";
  std::string config_path;  // when set, replaces `entry`
  std::vector<Suite> suites = all_suites();
  int samples = 50;
  std::uint64_t seed = 42;
  double tol = 1e-6;         // mixed pipelines
  double ad_tol = 1e-8;      // pure-AD ambient identities
  double lambda = 0.3;
  bool lambda_set = false;   // an explicit λ overrides a config file's value
  double alpha = 0.4;
  SlotMapping mapping = SlotMapping::interleaved;
  Format format = Format::text;
  std::string output;        // empty or "-" for stdout
  int threads = 1;
  std::map<std::string, double> tol_overrides;

  /// Throws UsageError on samples < 1, tol <= 0 or threads < 1.
  void validate() const;
};

/// The entry a config designates: a config file or a catalog name.
CatalogEntry resolve_entry(const RunConfig& cfg);

/// Parameter samples of the entry's box (the anchor is the first).
std::vector<VecX> parameter_samples(const CatalogEntry& e, const RunConfig& cfg);

/// Ambient axioms: statistical, contact metric, Sasakian, Sasakian statistical,
/// QS axioms and the AD-versus-central-difference oracle on the ambient fields.
std::vector<ResidualReport> run_axioms(const CatalogEntry& e, const RunConfig& cfg);

/// Ambient field derivatives (ρ̃, φ, η, ν, K) against central differences.
std::vector<ResidualReport> check_ambient_derivatives(const AmbientStructure& a,
                                                      const std::vector<VecX>& points,
                                                      double step = 1e-5, double tol = 1e-6);

/// Expected catalog flags re-derived from the computed structure.
std::vector<ResidualReport> check_expected(const CatalogEntry& e, const FrameBuilder& b,
                                           const std::vector<VecX>& us, double tol, int threads);

/// Runs the configured suites. Deterministic in (entry, seed, samples, tol, λ,
/// α, mapping), independent of the thread count. Structural failures propagate
/// as exceptions.
std::vector<ResidualReport> run_suite(const RunConfig& cfg);

/// Writes the reports to cfg.output (stdout when empty or "-"). Throws IoError.
void emit_report(const std::vector<ResidualReport>& reports, Format format,
                 const std::string& path);

/// 0 when every non-informational report passes, else 1.
int exit_status(const std::vector<ResidualReport>& reports);

}  // namespace sgl
