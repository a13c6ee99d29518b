#include <doctest.h>

#include "gen.hpp"
#include "sgl/smooth_map.hpp"

using namespace sgl;

namespace {

// f(x) = (sin x0 cosh x1 + x2^3 / (1 + x0^2), exp(x1) sqrt(2 + x2), x0 x1 x2)
SmoothMap sample_map() {
  return SmoothMap(3, 3, [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    using std::sin, std::cosh, std::exp, std::sqrt;
    Vec<T> y(3);
    y(0) = sin(x(0)) * cosh(x(1)) + x(2) * x(2) * x(2) / (1.0 + x(0) * x(0));
    y(1) = exp(x(1)) * sqrt(2.0 + x(2));
    y(2) = x(0) * x(1) * x(2);
    return y;
  });
}

}  // namespace

TEST_CASE("dual arithmetic matches hand derivatives") {
  const double x = 0.7;
  const D1 a = seed(x, 1.0);
  const D1 f = sin(a) * exp(a);
  CHECK(f.v == doctest::Approx(std::sin(x) * std::exp(x)).epsilon(1e-15));
  CHECK(f.d == doctest::Approx((std::cos(x) + std::sin(x)) * std::exp(x)).epsilon(1e-14));

  const D1 q = 1.0 / (a * a + 1.0);
  CHECK(q.d == doctest::Approx(-2.0 * x / std::pow(x * x + 1.0, 2)).epsilon(1e-14));

  const D1 s = sqrt(a);
  CHECK(s.d == doctest::Approx(0.5 / std::sqrt(x)).epsilon(1e-14));

  const D1 h = sinh(a) * cosh(a);
  CHECK(h.d == doctest::Approx(std::cosh(2 * x)).epsilon(1e-14));
}

TEST_CASE("nested duals give exact second derivatives") {
  const double x = 1.3;
  const D2 a(D1(x, 1.0), D1(1.0, 0.0));
  const D2 cube = a * a * a;
  CHECK(cube.d.d == doctest::Approx(6 * x).epsilon(1e-14));
  const D2 sn = sin(a);
  CHECK(sn.d.d == doctest::Approx(-std::sin(x)).epsilon(1e-14));
  const D2 p = pow(a, 2.5);
  CHECK(p.d.d == doctest::Approx(2.5 * 1.5 * std::pow(x, 0.5)).epsilon(1e-13));
}

TEST_CASE("comparisons only see values") {
  CHECK(D1(1.0, 5.0) < D1(2.0, -5.0));
  CHECK(abs(D1(-2.0, 3.0)).d == -3.0);
}

TEST_CASE("directional derivatives agree with central differences") {
  const SmoothMap f = sample_map();
  Rng r(101);
  for (int c = 0; c < gen::kCases; ++c) {
    const VecX x = gen::vec(r, 3);
    const VecX v = gen::vec(r, 3);
    const VecX ad = f.directional(x, v);
    const VecX fd = central_difference(f, x, v, 1e-5);
    CHECK(gen::inf_norm(ad - fd) < 1e-8);
  }
}

TEST_CASE("second directional derivative agrees with differences of first") {
  const SmoothMap f = sample_map();
  Rng r(102);
  for (int c = 0; c < gen::kCases; ++c) {
    const VecX x = gen::vec(r, 3), v = gen::vec(r, 3), w = gen::vec(r, 3);
    const double h = 1e-5;
    const VecX fd = (f.directional(x + h * w, v) - f.directional(x - h * w, v)) / (2 * h);
    CHECK(gen::inf_norm(f.second_directional(x, v, w) - fd) < 1e-7);
    // symmetry of mixed partials
    CHECK(gen::inf_norm(f.second_directional(x, v, w) - f.second_directional(x, w, v)) < 1e-12);
  }
}

TEST_CASE("directional derivative is linear in the direction and matches the jacobian") {
  const SmoothMap f = sample_map();
  Rng r(103);
  for (int c = 0; c < gen::kCases; ++c) {
    const VecX x = gen::vec(r, 3), v = gen::vec(r, 3), w = gen::vec(r, 3);
    const double a = r.uniform(-2, 2);
    const VecX lhs = f.directional(x, a * v + w);
    const VecX rhs = a * f.directional(x, v) + f.directional(x, w);
    CHECK(gen::inf_norm(lhs - rhs) < 1e-12);
    CHECK(gen::inf_norm(f.jacobian(x) * v - f.directional(x, v)) < 1e-12);
  }
}

TEST_CASE("first-order maps refuse second derivatives") {
  const SmoothMap f = SmoothMap::first_order(1, 1, [](const auto& x) { return x; });
  CHECK_THROWS_AS(f.second_directional(VecX::Zero(1), VecX::Ones(1), VecX::Ones(1)), UsageError);
  CHECK_THROWS_AS(f(VecX::Zero(2)), StructuralError);
}
