#include "sgl/report.hpp"

#include "sgl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sgl {

namespace {

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fmt_percent(int agree, int total) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", total ? 100.0 * agree / total : 100.0);
  return buf;
}

std::string join_indices(const std::vector<int>& idx, std::size_t limit = 10) {
  std::string s;
  for (std::size_t i = 0; i < idx.size() && i < limit; ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i]);
  }
  if (idx.size() > limit) s += ",...";
  return s;
}

const std::map<std::string, double>* g_tolerances = nullptr;

}  // namespace

ToleranceScope::ToleranceScope(std::map<std::string, double> overrides)
    : overrides_(std::move(overrides)), previous_(g_tolerances) {
  g_tolerances = &overrides_;
}

ToleranceScope::~ToleranceScope() { g_tolerances = previous_; }

CheckKind ResidualReport::kind() const {
  if (starts_with(notes, "[iff]")) return CheckKind::iff;
  if (starts_with(notes, "[claim]")) return CheckKind::claim;
  if (starts_with(notes, "[info]")) return CheckKind::info;
  return CheckKind::residual;
}

void to_json(nlohmann::json& j, const ResidualReport& r) {
  j = nlohmann::json{{"check_id", r.check_id},         {"paper_ref", r.paper_ref},
                     {"samples_used", r.samples_used}, {"max_residual", r.max_residual},
                     {"mean_residual", r.mean_residual}, {"tol", r.tol},
                     {"pass", r.pass},                 {"notes", r.notes}};
}

void from_json(const nlohmann::json& j, ResidualReport& r) {
  j.at("check_id").get_to(r.check_id);
  j.at("paper_ref").get_to(r.paper_ref);
  j.at("samples_used").get_to(r.samples_used);
  j.at("max_residual").get_to(r.max_residual);
  j.at("mean_residual").get_to(r.mean_residual);
  j.at("tol").get_to(r.tol);
  j.at("pass").get_to(r.pass);
  j.at("notes").get_to(r.notes);
}

std::string to_json_text(const std::vector<ResidualReport>& reports) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) j.push_back(r);
  return j.dump(2) + "\n";
}

std::vector<ResidualReport> parse_json_reports(const std::string& text) {
  try {
    return nlohmann::json::parse(text).get<std::vector<ResidualReport>>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed report JSON: ") + e.what());
  }
}

std::string to_text_table(const std::vector<ResidualReport>& reports) {
  std::size_t wid = 8;
  for (const auto& r : reports) wid = std::max(wid, r.check_id.size());
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-6s %-*s %7s %11s %11s %9s  %s\n", "status",
                static_cast<int>(wid), "check", "samples", "max", "mean", "tol", "notes");
  os << line;
  int failed = 0, passed = 0, info = 0;
  for (const auto& r : reports) {
    const char* mark = r.informational() ? "INFO" : (r.pass ? "PASS" : "FAIL");
    if (r.informational()) ++info;
    else if (r.pass) ++passed;
    else ++failed;
    std::snprintf(line, sizeof line, "%-6s %-*s %7d %11.3e %11.3e %9.1e  ", mark,
                  static_cast<int>(wid), r.check_id.c_str(), r.samples_used, r.max_residual,
                  r.mean_residual, r.tol);
    os << line << r.notes << '\n';
  }
  os << passed << " passed, " << failed << " failed, " << info << " informational\n";
  return os.str();
}

bool all_pass(const std::vector<ResidualReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const ResidualReport& r) { return r.informational() || r.pass; });
}

ResidualReport reduce_check(const CheckSpec& spec, const std::vector<Measurement>& values) {
  ResidualReport r;
  r.check_id = spec.id;
  r.paper_ref = spec.ref;
  r.tol = spec.tol;
  r.samples_used = static_cast<int>(values.size());
  double mx = 0.0, sum = 0.0;
  bool finite = true;
  for (const auto& m : values) {
    const double v = spec.kind == CheckKind::iff ? m.condition : m.direct;
    if (!std::isfinite(v)) finite = false;
    mx = std::max(mx, std::abs(v));
    sum += std::abs(v);
  }
  r.max_residual = finite ? mx : INFINITY;
  r.mean_residual = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  const std::string tail = spec.note.empty() ? "" : "; " + spec.note;

  switch (spec.kind) {
    case CheckKind::residual:
      r.pass = finite && !values.empty() && mx < spec.tol;
      r.notes = spec.note;
      break;
    case CheckKind::info:
      r.pass = true;
      r.notes = "[info]" + (spec.note.empty() ? "" : " " + spec.note);
      break;
    case CheckKind::claim: {
      std::vector<int> vanishing;
      for (std::size_t i = 0; i < values.size(); ++i)
        if (!(std::abs(values[i].direct) >= spec.tol)) vanishing.push_back(static_cast<int>(i));
      const int nonzero = r.samples_used - static_cast<int>(vanishing.size());
      r.pass = !values.empty() && vanishing.empty();
      r.notes = "[claim] nonzero at " + std::to_string(nonzero) + "/" +
                std::to_string(r.samples_used) + " points";
      if (!vanishing.empty()) r.notes += "; vanishes at points " + join_indices(vanishing);
      r.notes += tail;
      break;
    }
    case CheckKind::iff: {
      std::vector<int> disagree;
      double dmax = 0.0;
      int zero_both = 0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        const bool a = std::abs(values[i].direct) < spec.tol;
        const bool b = std::abs(values[i].condition) < spec.tol;
        if (a != b) disagree.push_back(static_cast<int>(i));
        if (a && b) ++zero_both;
        dmax = std::max(dmax, std::abs(values[i].direct));
      }
      const int agree = r.samples_used - static_cast<int>(disagree.size());
      r.pass = !values.empty() && disagree.empty();
      r.notes = "[iff] agreement " + fmt_percent(agree, r.samples_used) + " (" +
                std::to_string(agree) + "/" + std::to_string(r.samples_used) +
                "); both vanish at " + std::to_string(zero_both) + "; direct max " +
                fmt_double(dmax);
      if (!disagree.empty()) r.notes += "; disagree at points " + join_indices(disagree);
      r.notes += tail;
      break;
    }
  }
  return r;
}

std::vector<ResidualReport> evaluate_checks(const std::vector<CheckSpec>& specs, int points,
                                            const PointEvaluator& eval, int threads) {
  if (points < 1) throw UsageError("evaluate_checks: empty sample set");
  std::function<std::vector<Measurement>(int)> fn = [&](int i) {
    auto v = eval(i);
    if (v.size() != specs.size()) throw StructuralError("evaluate_checks: measurement count mismatch");
    return v;
  };
  const auto per_point = parallel_map<std::vector<Measurement>>(points, threads, fn);
  std::vector<ResidualReport> out;
  out.reserve(specs.size());
  for (std::size_t c = 0; c < specs.size(); ++c) {
    std::vector<Measurement> col;
    col.reserve(per_point.size());
    for (const auto& p : per_point) col.push_back(p[c]);
    CheckSpec spec = specs[c];
    if (g_tolerances)
      if (auto it = g_tolerances->find(spec.id); it != g_tolerances->end()) spec.tol = it->second;
    out.push_back(reduce_check(spec, col));
  }
  return out;
}

}  // namespace sgl
