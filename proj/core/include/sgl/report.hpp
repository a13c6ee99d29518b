#pragma once

// Residual reports and the per-point evaluation harness shared by every check.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace sgl {

/// How a report is judged. Stored in the notes prefix so the JSON schema stays
/// fixed: "[iff]", "[claim]", "[info]"; plain residual checks carry no prefix.
enum class CheckKind { residual, iff, claim, info };

struct ResidualReport {
  std::string check_id;
  std::string paper_ref;
  int samples_used = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tol = 0.0;
  bool pass = true;
  std::string notes;

  CheckKind kind() const;
  bool informational() const { return kind() == CheckKind::info; }

  bool operator==(const ResidualReport&) const = default;
};

void to_json(nlohmann::json& j, const ResidualReport& r);
void from_json(const nlohmann::json& j, ResidualReport& r);

std::string to_json_text(const std::vector<ResidualReport>& reports);
/// Throws UsageError on malformed input.
std::vector<ResidualReport> parse_json_reports(const std::string& text);

/// Aligned table with PASS/FAIL/INFO markers.
std::string to_text_table(const std::vector<ResidualReport>& reports);

/// True when every non-informational report passed.
bool all_pass(const std::vector<ResidualReport>& reports);

/// Declaration of one check evaluated over sample points.
struct CheckSpec {
  std::string id;
  std::string ref;  // formula description
  double tol = 1e-8;
  CheckKind kind = CheckKind::residual;
  std::string note;
};

/// One number per check at one point. For iff checks `direct` is the direct
/// measure and `condition` the stated equivalent; other kinds use `direct`.
struct Measurement {
  double direct = 0.0;
  double condition = 0.0;
};

using PointEvaluator = std::function<std::vector<Measurement>(int point_index)>;

/// Evaluate every point (possibly on several threads), then reduce in index
/// order. The reduction never depends on the thread count.
std::vector<ResidualReport> evaluate_checks(const std::vector<CheckSpec>& specs, int points,
                                            const PointEvaluator& eval, int threads = 1);

/// Per-check tolerance overrides, keyed by check id, applied by evaluate_checks
/// while the scope is alive. Scopes nest; the innermost wins.
class ToleranceScope {
 public:
  explicit ToleranceScope(std::map<std::string, double> overrides);
  ~ToleranceScope();
  ToleranceScope(const ToleranceScope&) = delete;
  ToleranceScope& operator=(const ToleranceScope&) = delete;

 private:
  std::map<std::string, double> overrides_;
  const std::map<std::string, double>* previous_;
};

/// Run fn(i) for i in [0, n) on up to `threads` workers; results in index order.
/// The first exception in index order is rethrown.
template <class R>
std::vector<R> parallel_map(int n, int threads, const std::function<R(int)>& fn);

/// Reduce per-point values of one check into a report.
ResidualReport reduce_check(const CheckSpec& spec, const std::vector<Measurement>& values);

}  // namespace sgl

#include "sgl/detail/parallel.hpp"
