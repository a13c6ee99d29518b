// sglverify: run check suites on a catalog entry or config immersion.
//
// Exit status: 0 all checks pass, 1 some check fails, 2 usage or parse error,
// 3 structural failure, 4 I/O failure.

#include <iostream>

#include <CLI11.hpp>

#include "sgl/suite.hpp"

namespace {

int run(const sgl::RunConfig& cfg) {
  const auto reports = sgl::run_suite(cfg);
  sgl::emit_report(reports, cfg.format, cfg.output);
  return sgl::exit_status(reports);
}

void list() {
  for (const auto& name : sgl::catalog_names()) {
    const auto e = sgl::build_entry(name);
    std::cout << name << "  " << e.description << "\n";
  }
  std::cout << "\nsuites:";
  for (auto s : sgl::all_suites()) std::cout << " " << sgl::to_string(s);
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of SGL submanifolds with a QS metric connection"};
  app.require_subcommand(1);

  sgl::RunConfig cfg;
  std::string suites = "all", mapping = "interleaved", format = "text";
  std::vector<std::string> tol_over;

  auto* r = app.add_subcommand("run", "Run check suites and emit a report");
  auto* entry = r->add_option("--entry", cfg.entry, "Catalog entry name")->capture_default_str();
  r->add_option("--config", cfg.config_path, "Immersion config file")->excludes(entry);
  r->add_option("--suite", suites, "Comma list of suites or 'all'")->capture_default_str();
  r->add_option("--samples", cfg.samples, "Sample points")->capture_default_str();
  r->add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
  r->add_option("--tol", cfg.tol, "Tolerance for mixed pipelines")->capture_default_str();
  auto* lam = r->add_option("--lambda", cfg.lambda, "K = lambda η⊗η⊗ν")->capture_default_str();
  r->add_option("--alpha", cfg.alpha, "Example constant alpha")->capture_default_str();
  r->add_option("--mapping", mapping, "basis_order or interleaved")->capture_default_str();
  r->add_option("--format", format, "json or text")->capture_default_str();
  r->add_option("--output", cfg.output, "Report path ('-' for stdout)");
  r->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
  r->add_option("--tol-override", tol_over, "Per-check tolerance, ID=VALUE (repeatable)");

  app.add_subcommand("list", "List catalog entries and suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("list")) {
      list();
      return 0;
    }
    cfg.lambda_set = lam->count() > 0;
    cfg.suites = sgl::parse_suites(suites);
    cfg.mapping = sgl::parse_mapping(mapping);
    cfg.format = sgl::parse_format(format);
    for (const auto& kv : tol_over) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw sgl::UsageError("--tol-override expects ID=VALUE");
      try {
        cfg.tol_overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      } catch (const std::logic_error&) {
        throw sgl::UsageError("bad --tol-override value '" + kv + "'");
      }
    }
    return run(cfg);
  } catch (const sgl::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const sgl::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const sgl::Error& e) {
    std::cerr << "structural error: " << e.what() << "\n";
    return 3;
  }
}
