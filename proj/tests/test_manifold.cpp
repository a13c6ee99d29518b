#include <doctest.h>

#include "gen.hpp"
#include "sgl/manifold.hpp"
#include "sgl/sampling.hpp"

using namespace sgl;

namespace {

// Polar-type metric on R^2 away from the axis: g = diag(1, (2 + x)^2).
MetricField warped() {
  return MetricField(SmoothMap(2, 4, [](const auto& p) {
                       using T = typename std::decay_t<decltype(p)>::Scalar;
                       Vec<T> g = Vec<T>::Zero(4);
                       g(0) = T(1.0);
                       g(3) = (2.0 + p(0)) * (2.0 + p(0));
                       return g;
                     }),
                     0);
}

}  // namespace

TEST_CASE("christoffel symbols of a warped product match the closed form") {
  const VecX p = (VecX(2) << 0.3, -0.4).finished();
  const Christoffel c = christoffel(warped(), p);
  const double rho = 2.0 + p(0);
  // Γ^x_yy = -ρ, Γ^y_xy = Γ^y_yx = 1/ρ, all others zero.
  CHECK(c.gamma[0](1, 1) == doctest::Approx(-rho).epsilon(1e-12));
  CHECK(c.gamma[1](0, 1) == doctest::Approx(1.0 / rho).epsilon(1e-12));
  CHECK(c.gamma[1](1, 0) == doctest::Approx(1.0 / rho).epsilon(1e-12));
  CHECK(std::abs(c.gamma[0](0, 0)) < 1e-14);
  CHECK(std::abs(c.gamma[1](1, 1)) < 1e-14);
}

TEST_CASE("levi-civita is metric and torsion free on random fields") {
  const MetricField g = warped();
  const auto fields = test_fields(2, 3, 7);
  Rng r(201);
  for (int c = 0; c < gen::kCases; ++c) {
    const VecX p = gen::vec(r, 2, -0.5, 0.5);
    const auto &x = fields[0], &y = fields[1], &z = fields[2];
    const double lhs = derivative_of_inner(g, x, y, z, p);
    const double rhs = g.inner(p, levi_civita(g, x, y, p), z(p)) + g.inner(p, y(p), levi_civita(g, x, z, p));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    const VecX tors = levi_civita(g, x, y, p) - levi_civita(g, y, x, p) - lie_bracket(x, y, p);
    CHECK(gen::inf_norm(tors) < 1e-12);
  }
}

TEST_CASE("lie bracket is antisymmetric and satisfies jacobi") {
  const auto f = test_fields(3, 3, 9);
  Rng r(202);
  for (int c = 0; c < gen::kCases; ++c) {
    const VecX p = gen::vec(r, 3);
    CHECK(gen::inf_norm(lie_bracket(f[0], f[1], p) + lie_bracket(f[1], f[0], p)) < 1e-13);
  }
  // [∂x, x ∂y] = ∂y
  const VectorField dx = VectorField::coordinate(2, 0);
  const VectorField xdy(SmoothMap(2, 2, [](const auto& p) {
    using T = typename std::decay_t<decltype(p)>::Scalar;
    Vec<T> v(2);
    v << T(0.0), p(0);
    return v;
  }));
  const VecX b = lie_bracket(dx, xdy, VecX::Constant(2, 0.4));
  CHECK(b(0) == doctest::Approx(0.0));
  CHECK(b(1) == doctest::Approx(1.0));
}

TEST_CASE("exterior derivative of y dx is -dx^dy") {
  const OneForm form(SmoothMap(2, 2, [](const auto& p) {
    using T = typename std::decay_t<decltype(p)>::Scalar;
    Vec<T> w(2);
    w << p(1), T(0.0);
    return w;
  }));
  const VectorField dx = VectorField::coordinate(2, 0), dy = VectorField::coordinate(2, 1);
  CHECK(exterior_derivative(form, dx, dy, VecX::Constant(2, 0.2)) == doctest::Approx(-1.0));
}

TEST_CASE("reshape and flatten are inverse") {
  Rng r(203);
  const MatX m = gen::mat(r, 3, 4);
  CHECK(reshape<double>(flatten<double>(m), 3, 4) == m);
  CHECK_THROWS_AS(reshape<double>(VecX::Zero(5), 2, 2), StructuralError);
}

TEST_CASE("sample points are deterministic and seed dependent") {
  const Box box = Box::cube(4, 1.0);
  CHECK(sample_points(box, 10, 1) == sample_points(box, 10, 1));
  const auto a = sample_points(box, 10, 1), b = sample_points(box, 10, 2);
  bool differ = false;
  for (std::size_t i = 0; i < a.size(); ++i) differ = differ || a[i] != b[i];
  CHECK(differ);
  const auto one = sample_points(box, 1, 99);
  REQUIRE(one.size() == 1);
  CHECK(((one[0].array() >= -1.0).all() && (one[0].array() <= 1.0).all()));
  CHECK_THROWS_AS(sample_points(box, 0, 1), UsageError);
  CHECK_THROWS_AS(sample_points(Box{VecX::Zero(2), VecX::Zero(2)}, 3, 1), UsageError);
}
