#include <doctest.h>

#include "gen.hpp"
#include "sgl/catalog.hpp"
#include "sgl/contact.hpp"
#include "sgl/suite.hpp"

using namespace sgl;

namespace {

// Independent construction of the flat model from its coordinate formulas.
struct Model {
  MatX g, phi;
  VecX eta, nu;
};

Model model(int n, int q, const VecX& p) {
  const int d = 2 * n + 1;
  Model m{MatX::Zero(d, d), MatX::Zero(d, d), VecX::Zero(d), VecX::Zero(d)};
  m.eta(d - 1) = 0.5;
  for (int i = 0; i < n; ++i) {
    const double eps = i < q ? -1.0 : 1.0;
    m.eta(i) = -0.5 * eps * p(n + i);
  }
  m.nu(d - 1) = 2.0;
  m.g = m.eta * m.eta.transpose();
  for (int i = 0; i < n; ++i) {
    const double eps = i < q ? -1.0 : 1.0;
    m.g(i, i) += 0.25 * eps;
    m.g(n + i, n + i) += 0.25 * eps;
    // φ∂x^i = −∂y^i, φ∂y^i = ∂x^i + ε y^i ∂z
    m.phi(n + i, i) = -1.0;
    m.phi(i, n + i) = 1.0;
    m.phi(d - 1, n + i) = eps * p(n + i);
  }
  return m;
}

bool every_pass(const std::vector<ResidualReport>& rs) {
  bool ok = all_pass(rs);
  for (const auto& r : rs)
    if (!r.informational() && !r.pass) MESSAGE("failed: " << r.check_id << " max " << r.max_residual);
  return ok;
}

}  // namespace

TEST_CASE("ambient fields match the coordinate formulas") {
  Rng r(301);
  for (int n : {1, 2, 6}) {
    const int q = n / 2;
    const AmbientStructure a = build_ambient(n, q, 0.3);
    REQUIRE(a.has_contact());
    for (int c = 0; c < 5; ++c) {
      const VecX p = gen::vec(r, 2 * n + 1);
      const Model m = model(n, q, p);
      CHECK(gen::inf_norm(a.g(p) - m.g) < 1e-15);
      CHECK(gen::inf_norm(a.contact->phi(p) - m.phi) < 1e-15);
      CHECK(gen::inf_norm(a.contact->eta.at<double>(p) - m.eta) < 1e-15);
      CHECK(gen::inf_norm(a.contact->nu(p) - m.nu) < 1e-15);
      CHECK(a.g.signature_negatives(p) == 2 * q);
    }
  }
}

TEST_CASE("K = λ η⊗η⊗ν on explicit vectors") {
  const AmbientStructure a = build_ambient(2, 1, 0.7);
  Rng r(302);
  const VecX p = gen::vec(r, 5), x = gen::vec(r, 5), y = gen::vec(r, 5);
  const Model m = model(2, 1, p);
  const VecX want = 0.7 * m.eta.dot(x) * m.eta.dot(y) * m.nu;
  CHECK(gen::inf_norm(a.k(p, x, y) - want) < 1e-14);
}

TEST_CASE("ambient axioms hold for several models and λ") {
  for (double lambda : {0.0, 0.3, -1.2}) {
    const AmbientStructure a = build_ambient(3, 1, lambda);
    const auto pts = sample_points(Box::cube(a.dim(), 1.0), 12, 5);
    CHECK(every_pass(check_statistical(a.statistical(), pts)));
    CHECK(every_pass(check_contact_metric(*a.contact, pts)));
    CHECK(every_pass(check_sasakian(*a.contact, pts)));
    CHECK(every_pass(check_sasakian_statistical(*a.contact, a.statistical(), pts)));
    CHECK(every_pass(check_qs_axioms(QSConnection(a), pts)));
  }
}

TEST_CASE("negative controls break the matching axioms") {
  const AmbientStructure a = build_ambient(2, 1, 0.3);
  const auto pts = sample_points(Box::cube(a.dim(), 1.0), 8, 6);

  StatisticalStructure bad = a.statistical();
  bad.k = DifferenceTensorK::perturbed(bad.k, 0.1);
  CHECK_FALSE(all_pass(check_statistical(bad, pts)));

  CHECK_FALSE(all_pass(check_qs_axioms(QSConnection(a, true), pts)));

  // A K that is not compatible with φ breaks the Sasakian statistical identities.
  StatisticalStructure skew{a.g, DifferenceTensorK(SmoothMap(5, 125, [](const auto& p) {
                                                     using T = typename std::decay_t<decltype(p)>::Scalar;
                                                     Vec<T> k = Vec<T>::Zero(125);
                                                     k(0) = T(1.0);  // K(∂x1, ∂x1) = ∂x1
                                                     return k;
                                                   }),
                                                   5)};
  CHECK_FALSE(all_pass(check_sasakian_statistical(*a.contact, skew, pts)));
}

TEST_CASE("AD derivatives of the ambient fields agree with central differences") {
  const AmbientStructure a = build_ambient(6, 3, 0.3);
  const auto pts = sample_points(Box::cube(a.dim(), 1.0), 10, 43);
  const auto rs = check_ambient_derivatives(a, pts);
  CHECK(rs.size() == 5);
  CHECK(every_pass(rs));
}
