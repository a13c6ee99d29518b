#include "sgl/catalog.hpp"

#include <cmath>

namespace sgl {

namespace {

template <class P>
using ScalarOf = typename std::decay_t<P>::Scalar;

}  // namespace

AmbientStructure build_ambient(int n, int q, double lambda) {
  if (n < 1 || q < 0 || 2 * q >= 2 * n + 1)
    throw UsageError("build_ambient: need n >= 1 and 0 <= 2q < 2n+1");
  const int d = 2 * n + 1;
  auto eps = [q](int i) { return i < q ? -1.0 : 1.0; };

  OneForm eta(SmoothMap(d, d, [n, d, eps](const auto& p) {
    using T = ScalarOf<decltype(p)>;
    Vec<T> e = Vec<T>::Zero(d);
    for (int i = 0; i < n; ++i) e(i) = -0.5 * eps(i) * p(n + i);
    e(2 * n) = T(0.5);
    return e;
  }));

  MetricField g(SmoothMap(d, d * d,
                          [n, d, eps, eta](const auto& p) {
                            using T = ScalarOf<decltype(p)>;
                            const Vec<T> e = eta.at<T>(p);
                            Mat<T> m = e * e.transpose();
                            for (int i = 0; i < n; ++i) {
                              m(i, i) += 0.25 * eps(i);
                              m(n + i, n + i) += 0.25 * eps(i);
                            }
                            return flatten<T>(m);
                          }),
                2 * q);

  TensorField11 phi(SmoothMap(d, d * d,
                              [n, d, eps](const auto& p) {
                                using T = ScalarOf<decltype(p)>;
                                Mat<T> m = Mat<T>::Zero(d, d);
                                for (int i = 0; i < n; ++i) {
                                  m(n + i, i) = T(-1.0);
                                  m(i, n + i) = T(1.0);
                                  m(2 * n, n + i) = eps(i) * p(n + i);
                                }
                                return flatten<T>(m);
                              }),
                    d);

  VecX nu0 = VecX::Zero(d);
  nu0(2 * n) = 2.0;
  const VectorField nu = VectorField::constant(nu0);

  AmbientStructure a;
  a.name = "R^" + std::to_string(d) + "_" + std::to_string(2 * q);
  a.g = g;
  a.k = DifferenceTensorK::eta_eta_nu(eta, nu, lambda);
  a.contact = ContactTriple{g, phi, nu, eta};
  return a;
}

SlotMapping parse_mapping(const std::string& name) {
  if (name == "basis_order") return SlotMapping::basis_order;
  if (name == "interleaved") return SlotMapping::interleaved;
  throw UsageError("unknown mapping '" + name + "' (expected basis_order or interleaved)");
}

std::string to_string(SlotMapping m) {
  return m == SlotMapping::basis_order ? "basis_order" : "interleaved";
}

Immersion build_example_submanifold(double alpha, SlotMapping mapping) {
  // Tuple slot k goes to ambient coordinate slot[k]. The interleaved order
  // reads the tuple as (x1, y1, x2, y2, ..., x6, y6, z).
  std::array<int, 13> slot{};
  for (int k = 0; k < 13; ++k) slot[k] = k;
  if (mapping == SlotMapping::interleaved) slot = {0, 6, 1, 7, 2, 8, 3, 9, 4, 10, 5, 11, 12};
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cha = std::cosh(alpha), sha = std::sinh(alpha);
  Immersion imm;
  imm.name = "example_3_2";
  imm.box = Box::cube(7, 1.0);
  imm.map = SmoothMap(7, 13, [=](const auto& u) {
    using T = ScalarOf<decltype(u)>;
    using std::sin, std::cos, std::sinh, std::cosh;
    const std::array<T, 13> t = {T(0.0),
                                 u(4) * ca,
                                 -u(4),
                                 -u(5),
                                 u(0) * cha,
                                 u(1) * cha,
                                 u(0) * sha - u(1),
                                 u(0) + u(1) * sha,
                                 u(4) * sa,
                                 u(5) * sa,
                                 sin(u(2)) * sinh(u(3)),
                                 cos(u(2)) * cosh(u(3)),
                                 u(6)};
    Vec<T> x(13);
    for (int k = 0; k < 13; ++k) x(slot[k]) = t[k];
    return x;
  });
  return imm;
}

std::vector<std::string> catalog_names() {
  return {"example_3_2", "null_line", "invariant_plane", "geodesic_subspace"};
}

CatalogEntry build_control(const std::string& name, double lambda) {
  CatalogEntry e;
  e.name = name;
  if (name == "null_line") {
    e.description = "the line t(1,1) in the Minkowski plane diag(-1,1)";
    AmbientStructure a;
    a.name = "R^2_1";
    a.g = MetricField(SmoothMap(2, 4,
                                [](const auto& p) {
                                  using T = ScalarOf<decltype(p)>;
                                  Vec<T> m(4);
                                  m << T(-1.0), T(0.0), T(0.0), T(1.0);
                                  return m;
                                }),
                      1);
    a.k = DifferenceTensorK::zero(2);
    e.ambient = a;
    e.immersion.name = name;
    e.immersion.box = Box::cube(1, 1.0);
    e.immersion.map = SmoothMap(1, 2, [](const auto& u) {
      using T = ScalarOf<decltype(u)>;
      Vec<T> x(2);
      x << u(0), u(0);
      return x;
    });
    e.expected.radical_rank = 1;
    return e;
  }
  if (name == "invariant_plane") {
    e.description = "x1 = x2, y1 = y2 in R^7_2: a phi-invariant radical plane with free x3, y3, z";
    e.ambient = build_ambient(3, 1, lambda);
    e.immersion.name = name;
    e.immersion.box = Box::cube(5, 1.0);
    e.immersion.map = SmoothMap(5, 7, [](const auto& u) {
      using T = ScalarOf<decltype(u)>;
      Vec<T> x(7);
      x << u(0), u(0), u(2), u(1), u(1), u(3), u(4);
      return x;
    });
    e.expected = {2, true, 2, 0, false};
    return e;
  }
  if (name == "geodesic_subspace") {
    e.description = "the slice x2 = y2 = 0 in R^5_2, fixed by an isometry and phi-invariant";
    e.ambient = build_ambient(2, 1, lambda);
    e.immersion.name = name;
    e.immersion.box = Box::cube(3, 1.0);
    e.immersion.map = SmoothMap(3, 5, [](const auto& u) {
      using T = ScalarOf<decltype(u)>;
      Vec<T> x = Vec<T>::Zero(5);
      x(0) = u(0);
      x(2) = u(1);
      x(4) = u(2);
      return x;
    });
    e.expected = {0, false, 2, 0, true};
    return e;
  }
  throw UsageError("unknown control '" + name + "'");
}

CatalogEntry build_entry(const std::string& name, double lambda, double alpha, SlotMapping mapping) {
  if (name == "example_3_2") {
    CatalogEntry e;
    e.name = name;
    e.description = "seven-parameter SGL submanifold of R^13_6 (alpha = " + std::to_string(alpha) +
                    ", mapping " + to_string(mapping) + ")";
    e.ambient = build_ambient(6, 3, lambda);
    e.immersion = build_example_submanifold(alpha, mapping);
    e.expected.sgl = true;
    return e;
  }
  return build_control(name, lambda);
}

}  // namespace sgl
