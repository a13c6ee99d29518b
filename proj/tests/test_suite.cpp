#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sgl/suite.hpp"

using namespace sgl;

namespace {

const std::string kConfig = std::string(SGL_CONFIG_DIR) + "/example_3_2.cfg";

const ResidualReport& find(const std::vector<ResidualReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.check_id == id) return r;
  FAIL("missing check " << id);
  return rs.front();
}

RunConfig quick(const std::string& entry, std::vector<Suite> suites) {
  RunConfig c;
  c.entry = entry;
  c.suites = std::move(suites);
  c.samples = 4;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("suite and format names") {
  CHECK(parse_suites("all") == all_suites());
  CHECK(all_suites().size() == 7);
  CHECK(parse_suites("sgl,frames,sgl") == std::vector<Suite>{Suite::sgl, Suite::frames});
  for (Suite s : all_suites()) CHECK(parse_suites(to_string(s)) == std::vector<Suite>{s});
  CHECK_THROWS_AS(parse_suites("sgl,bogus"), UsageError);
  CHECK_THROWS_AS(parse_suites(""), UsageError);
  CHECK(parse_format("json") == Format::json);
  CHECK(parse_format("text") == Format::text);
  CHECK_THROWS_AS(parse_format("xml"), UsageError);
}

TEST_CASE("run config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.samples = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = RunConfig{};
  c.tol = 0.0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = RunConfig{};
  c.threads = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = RunConfig{};
  c.tol_overrides["x"] = -1.0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = RunConfig{};
  c.entry = "nope";
  CHECK_THROWS_AS(run_suite(c), UsageError);
  c = RunConfig{};
  c.config_path = "/nonexistent/none.cfg";
  CHECK_THROWS_AS(run_suite(c), IoError);
}

TEST_CASE("run_suite is deterministic across thread counts") {
  RunConfig c = quick("example_3_2", all_suites());
  const auto one = run_suite(c);
  c.threads = 4;
  const auto four = run_suite(c);
  CHECK(one == four);
  CHECK(to_json_text(one) == to_json_text(four));
  CHECK(find(one, "run.config").informational());
  CHECK(find(one, "run.config").notes.find("threads") == std::string::npos);
}

TEST_CASE("controls run clean through every suite") {
  for (const char* name : {"null_line", "geodesic_subspace"}) {
    const auto rs = run_suite(quick(name, all_suites()));
    CHECK_MESSAGE(exit_status(rs) == 0, name);
  }
  const auto bo = [] {
    RunConfig c = quick("example_3_2", {Suite::sgl});
    c.mapping = SlotMapping::basis_order;
    return run_suite(c);
  }();
  CHECK_FALSE(find(bo, "sgl.radical_invariant").pass);
  CHECK_FALSE(find(bo, "catalog.sgl").pass);
  CHECK(exit_status(bo) == 1);
}

TEST_CASE("config λ applies unless overridden on the command line") {
  RunConfig c = quick("", {Suite::axioms});
  c.config_path = kConfig;
  c.lambda = 1.7;
  CHECK(find(run_suite(c), "run.config").notes.find("lambda=0.3") != std::string::npos);
  c.lambda_set = true;
  CHECK(find(run_suite(c), "run.config").notes.find("lambda=1.7") != std::string::npos);
}

TEST_CASE("config run matches the catalog run") {
  RunConfig a = quick("example_3_2", all_suites());
  RunConfig b = a;
  b.config_path = kConfig;
  const auto ra = run_suite(a), rb = run_suite(b);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 1; i < ra.size(); ++i) {
    CHECK(ra[i].check_id == rb[i].check_id);
    if (ra[i].check_id == "catalog.sgl") continue;
    CHECK(ra[i].pass == rb[i].pass);
    CHECK(ra[i].max_residual == doctest::Approx(rb[i].max_residual).epsilon(1e-9).scale(1e-9));
  }
}

TEST_CASE("tolerance overrides reach the checks") {
  RunConfig c = quick("example_3_2", {Suite::sgl});
  c.tol_overrides["sgl.radical_invariant"] = 1e-30;
  const auto& r = find(run_suite(c), "sgl.radical_invariant");
  CHECK(r.tol == 1e-30);
}

TEST_CASE("report output") {
  const auto rs = run_suite(quick("null_line", {Suite::frames}));
  const auto dir = std::filesystem::temp_directory_path() / "sgl_test_suite";
  std::filesystem::create_directories(dir);
  emit_report(rs, Format::json, (dir / "r.json").string());
  CHECK(parse_json_reports(slurp(dir / "r.json")) == rs);
  emit_report(rs, Format::text, (dir / "r.txt").string());
  CHECK(slurp(dir / "r.txt") == to_text_table(rs));
  CHECK_THROWS_AS(emit_report(rs, Format::json, "/nonexistent/dir/r.json"), IoError);
  std::filesystem::remove_all(dir);
}

#ifdef SGLVERIFY_PATH
namespace {
int cli(const std::string& args) {
  const std::string cmd = std::string(SGLVERIFY_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}
}  // namespace

TEST_CASE("command line exit codes") {
  CHECK(cli("--help") == 0);
  CHECK(cli("list") == 0);
  CHECK(cli("run --entry null_line --samples 4") == 0);
  CHECK(cli("run --entry example_3_2 --suite sgl --samples 4 --mapping basis_order") == 1);
  CHECK(cli("run --entry nope") == 2);
  CHECK(cli("run --suite bogus") == 2);
  CHECK(cli("run --samples 0") == 2);
  CHECK(cli("run --samples abc") == 2);
  CHECK(cli("run --format xml") == 2);
  CHECK(cli("run --tol-override broken") == 2);
  CHECK(cli("frobnicate") == 2);
  CHECK(cli("run --entry null_line --suite frames --output /nonexistent/dir/x.json") == 4);
  CHECK(cli("run --config /nonexistent/none.cfg") == 4);
  CHECK(cli("run --entry null_line --suite sgl --tol-override sgl.radical_invariant=1e-4") == 0);
}

TEST_CASE("command line json is byte identical across thread counts") {
  const auto dir = std::filesystem::temp_directory_path() / "sgl_test_cli";
  std::filesystem::create_directories(dir);
  const std::string base = "run --entry example_3_2 --samples 5 --format json --output ";
  cli(base + (dir / "a.json").string() + " --threads 1");
  cli(base + (dir / "b.json").string() + " --threads 6");
  const std::string a = slurp(dir / "a.json");
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(dir / "b.json"));
  std::filesystem::remove_all(dir);
}
#endif
