#include <doctest.h>

#include <fstream>
#include <sstream>

#include "gen.hpp"
#include "sgl/expression.hpp"

using namespace sgl;

namespace {

int column_of(const std::string& text, int params = 2) {
  try {
    Expression::parse(text, params);
  } catch (const ParseError& e) {
    return e.column();
  }
  return -1;
}

int line_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kMinimal =
    "ambient 1 0 0.3\n"
    "params 1\n"
    "component_1 = u1\n"
    "component_2 = 0\n"
    "component_3 = u1^2\n";

}  // namespace

TEST_CASE("expression values and precedence") {
  VecX u(2);
  u << 0.7, -1.3;
  CHECK(Expression::parse("1 + 2 * 3", 2)(u) == doctest::Approx(7.0));
  CHECK(Expression::parse("-u1^2", 2)(u) == doctest::Approx(-0.49));
  CHECK(Expression::parse("2^-1", 2)(u) == doctest::Approx(0.5));
  CHECK(Expression::parse("(u1 + u2) / 2", 2)(u) == doctest::Approx(-0.3));
  CHECK(Expression::parse("sin(u1)*cosh(u2) - exp(u1)", 2)(u) ==
        doctest::Approx(std::sin(0.7) * std::cosh(-1.3) - std::exp(0.7)));
  CHECK(Expression::parse("u1 × u2 − 1 ÷ 4", 2)(u) == doctest::Approx(0.7 * -1.3 - 0.25));
  CHECK(Expression::parse("pi", 2)(u) == doctest::Approx(M_PI));
  CHECK(Expression::parse("a*u1", 2, {{"a", 3.0}})(u) == doctest::Approx(2.1));
  CHECK(Expression::parse("1.5e-1", 2)(u) == doctest::Approx(0.15));
  CHECK(Expression::parse("sinh(0.2)", 2).is_constant());
  CHECK_FALSE(Expression::parse("u2", 2).is_constant());
}

TEST_CASE("parse errors carry the column") {
  CHECK(column_of("1 + ") == 5);
  CHECK(column_of("u3") == 1);
  CHECK(column_of("u0") == 1);
  CHECK(column_of("2 * foo") == 5);
  CHECK(column_of("(u1") == 4);
  CHECK(column_of("u1 u2") == 4);
  CHECK(column_of("u1 ^ u2") == 6);
  CHECK(column_of("tan(u1)") == 1);
  CHECK(column_of("1 $ 2") == 3);
  CHECK(column_of("") == 1);
  CHECK_THROWS_AS(Expression::parse("u1", 1)(VecX::Zero(2)), StructuralError);
}

TEST_CASE("expression derivatives match finite differences") {
  const Expression e = Expression::parse("sin(u1)*u2^3 + cosh(u1*u2) / (2 + u2^2) + u1^2.5", 2);
  const SmoothMap f(2, 1, [e](const auto& u) {
    using T = typename std::decay_t<decltype(u)>::Scalar;
    Vec<T> out(1);
    out(0) = e.eval<T>(u);
    return out;
  });
  Rng r(301);
  for (int c = 0; c < gen::kCases; ++c) {
    VecX x = gen::vec(r, 2, 0.2, 1.0);
    const VecX v = gen::vec(r, 2), w = gen::vec(r, 2);
    CHECK(gen::inf_norm(VecX(f.directional(x, v) - central_difference(f, x, v))) < 1e-8);
    const double h = 1e-5;
    const VecX fd = (f.directional(x + h * w, v) - f.directional(x - h * w, v)) / (2 * h);
    CHECK(gen::inf_norm(VecX(f.second_directional(x, v, w) - fd)) < 1e-6);
  }
}

TEST_CASE("config parsing and its errors") {
  const ImmersionConfig c = parse_config(std::string("# comment\nname demo\n") + kMinimal +
                                         "tol sgl.radical_invariant 1e-4\n");
  CHECK(c.name == "demo");
  CHECK(c.n == 1);
  CHECK(c.m == 1);
  CHECK(c.lambda == doctest::Approx(0.3));
  CHECK(c.components.size() == 3);
  CHECK(c.tol_overrides.at("sgl.radical_invariant") == doctest::Approx(1e-4));

  CHECK(line_of("ambient 1 0 0.3\nparams 1\ncomponent_1 = u1 +\n") == 3);
  // A missing component is not tied to one line.
  CHECK(line_of("ambient 1 0 0.3\nparams 1\ncomponent_1 = u1\ncomponent_2 = 0\n") == 0);
  CHECK(line_of("ambient 1 0\n") == 1);
  CHECK(line_of("params 1\nbogus 3\n") == 2);
  CHECK(line_of(std::string(kMinimal) + "component_4 = 0\n") == 6);
  CHECK(line_of(std::string("const b = u1\n") + kMinimal) == 1);
  CHECK_THROWS_AS(load_config("/nonexistent/dir/none.cfg"), IoError);
}

TEST_CASE("shipped config reproduces the example immersion") {
  const ImmersionConfig c = load_config(std::string(SGL_CONFIG_DIR) + "/example_3_2.cfg");
  const CatalogEntry e = build_config_entry(c);
  const Immersion ref = build_example_submanifold(0.4, SlotMapping::interleaved);
  CHECK(e.immersion.param_dim() == 7);
  CHECK(e.immersion.ambient_dim() == 13);
  CHECK(e.ambient.dim() == 13);
  CHECK(e.expected.radical_rank == -1);
  Rng r(302);
  for (int k = 0; k < gen::kCases; ++k) {
    const VecX u = gen::vec(r, 7);
    const VecX v = gen::vec(r, 7), w = gen::vec(r, 7);
    CHECK(gen::inf_norm(VecX(e.immersion(u) - ref(u))) < 1e-12);
    CHECK(gen::inf_norm(VecX(e.immersion.map.directional(u, v) - ref.map.directional(u, v))) <
          1e-12);
    CHECK(gen::inf_norm(VecX(e.immersion.map.second_directional(u, v, w) -
                             ref.map.second_directional(u, v, w))) < 1e-12);
  }
  CHECK_FALSE(read_file(std::string(SGL_CONFIG_DIR) + "/example_3_2.cfg").empty());
}
