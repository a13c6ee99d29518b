#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "sgl/report.hpp"

using namespace sgl;

namespace {

CheckSpec spec(const std::string& id, CheckKind kind, double tol = 1e-6) {
  CheckSpec s;
  s.id = id;
  s.ref = "ref " + id;
  s.tol = tol;
  s.kind = kind;
  return s;
}

std::vector<Measurement> direct(std::initializer_list<double> xs) {
  std::vector<Measurement> out;
  for (double x : xs) out.push_back({x, 0.0});
  return out;
}

}  // namespace

TEST_CASE("residual reduction") {
  const auto ok = reduce_check(spec("a", CheckKind::residual), direct({1e-9, -2e-9, 0.0}));
  CHECK(ok.pass);
  CHECK(ok.samples_used == 3);
  CHECK(ok.max_residual == doctest::Approx(2e-9));
  CHECK(ok.mean_residual == doctest::Approx(1e-9));
  CHECK(ok.kind() == CheckKind::residual);
  CHECK_FALSE(reduce_check(spec("b", CheckKind::residual), direct({0.0, 1e-5})).pass);
  const auto nan = reduce_check(spec("c", CheckKind::residual), direct({0.0, NAN}));
  CHECK_FALSE(nan.pass);
  CHECK(std::isinf(nan.max_residual));
  CHECK_FALSE(reduce_check(spec("d", CheckKind::residual), {}).pass);
}

TEST_CASE("iff, claim and info reduction") {
  const auto agree = reduce_check(spec("i", CheckKind::iff), {{0.0, 0.0}, {1.0, 2.0}, {1e-9, 1e-8}});
  CHECK(agree.pass);
  CHECK(agree.kind() == CheckKind::iff);
  CHECK(agree.max_residual == doctest::Approx(2.0));
  const auto split = reduce_check(spec("j", CheckKind::iff), {{0.0, 0.0}, {0.0, 1.0}});
  CHECK_FALSE(split.pass);
  CHECK(split.notes.find("disagree at points 1") != std::string::npos);

  CHECK(reduce_check(spec("k", CheckKind::claim), direct({0.5, -3.0})).pass);
  const auto claim = reduce_check(spec("l", CheckKind::claim), direct({0.5, 0.0}));
  CHECK_FALSE(claim.pass);
  CHECK(claim.kind() == CheckKind::claim);
  CHECK(claim.notes.find("vanishes at points 1") != std::string::npos);

  const auto info = reduce_check(spec("m", CheckKind::info), direct({1e9}));
  CHECK(info.pass);
  CHECK(info.informational());
}

TEST_CASE("all_pass ignores informational entries") {
  ResidualReport info;
  info.check_id = "x";
  info.pass = false;
  info.notes = "[info] not asserted";
  ResidualReport ok;
  ok.check_id = "y";
  CHECK(all_pass({info, ok}));
  ok.pass = false;
  CHECK_FALSE(all_pass({info, ok}));
  CHECK(all_pass({}));
}

TEST_CASE("json round trip") {
  CHECK(to_json_text({}) == "[]\n");
  Rng r(401);
  std::vector<ResidualReport> rs;
  for (int k = 0; k < gen::kCases; ++k) {
    ResidualReport x;
    x.check_id = "check." + std::to_string(k);
    x.paper_ref = "g(X, Y) = 0 ∀ X";
    x.samples_used = k + 1;
    x.max_residual = std::abs(gen::vec(r, 1)(0)) * 1e-3;
    x.mean_residual = x.max_residual / 2;
    x.tol = 1e-6;
    x.pass = k % 3 != 0;
    x.notes = k % 2 ? "[iff] agreement" : "";
    rs.push_back(x);
  }
  const std::string text = to_json_text(rs);
  CHECK(parse_json_reports(text) == rs);
  CHECK(to_json_text(parse_json_reports(text)) == text);
  const auto j = nlohmann::json::parse(to_json_text({rs[1]}));
  CHECK(j.is_array());
  CHECK(j[0]["pass"] == true);
  for (const char* key : {"check_id", "paper_ref", "samples_used", "max_residual",
                          "mean_residual", "tol", "pass", "notes"})
    CHECK(j[0].contains(key));
  CHECK_THROWS_AS(parse_json_reports("{not json"), UsageError);
}

TEST_CASE("text table marks each row") {
  const auto t = to_text_table({reduce_check(spec("p", CheckKind::residual), direct({0.0})),
                                reduce_check(spec("f", CheckKind::residual), direct({1.0})),
                                reduce_check(spec("n", CheckKind::info), direct({1.0}))});
  CHECK(t.find("PASS") != std::string::npos);
  CHECK(t.find("FAIL") != std::string::npos);
  CHECK(t.find("INFO") != std::string::npos);
}

TEST_CASE("evaluate_checks is independent of the thread count") {
  const std::vector<CheckSpec> specs = {spec("a", CheckKind::residual, 0.5),
                                        spec("b", CheckKind::iff, 0.1)};
  const PointEvaluator eval = [](int i) {
    Rng r(1000 + static_cast<std::uint64_t>(i));
    const VecX v = gen::vec(r, 2);
    return std::vector<Measurement>{{v(0), 0.0}, {v(1), i % 4 == 0 ? 0.0 : v(1)}};
  };
  const auto one = evaluate_checks(specs, 40, eval, 1);
  for (int t : {2, 3, 8}) CHECK(evaluate_checks(specs, 40, eval, t) == one);
  CHECK_THROWS_AS(evaluate_checks(specs, 0, eval), UsageError);
  const PointEvaluator bad = [](int) { return std::vector<Measurement>(1); };
  CHECK_THROWS_AS(evaluate_checks(specs, 3, bad), StructuralError);
}

TEST_CASE("tolerance scopes nest and restore") {
  const std::vector<CheckSpec> specs = {spec("a", CheckKind::residual, 1e-6)};
  const PointEvaluator eval = [](int) { return std::vector<Measurement>{{1e-4, 0.0}}; };
  CHECK_FALSE(evaluate_checks(specs, 2, eval).front().pass);
  {
    ToleranceScope outer({{"a", 1e-3}});
    CHECK(evaluate_checks(specs, 2, eval).front().tol == 1e-3);
    CHECK(evaluate_checks(specs, 2, eval).front().pass);
    {
      ToleranceScope inner({{"a", 1e-5}});
      CHECK_FALSE(evaluate_checks(specs, 2, eval).front().pass);
    }
    CHECK(evaluate_checks(specs, 2, eval).front().pass);
  }
  CHECK(evaluate_checks(specs, 2, eval).front().tol == 1e-6);
}

TEST_CASE("parallel_map keeps order and rethrows the first error") {
  const std::function<int(int)> sq = [](int i) { return i * i; };
  const auto v = parallel_map<int>(50, 4, sq);
  for (int i = 0; i < 50; ++i) CHECK(v[i] == i * i);
  const std::function<int(int)> boom = [](int i) -> int {
    if (i == 7) throw StructuralError("seven");
    if (i == 30) throw UsageError("thirty");
    return i;
  };
  CHECK_THROWS_AS(parallel_map<int>(50, 4, boom), StructuralError);
}
