#include <doctest.h>

#include "gen.hpp"
#include "sgl/catalog.hpp"
#include "sgl/sgl_analysis.hpp"

using namespace sgl;

namespace {

struct Setup {
  CatalogEntry e;
  std::vector<VecX> us;
  FrameBuilder b;
};

Setup setup(const std::string& name, int n = 6, SlotMapping m = SlotMapping::interleaved,
            double lambda = 0.3) {
  CatalogEntry e = build_entry(name, lambda, 0.4, m);
  auto us = sample_points(e.immersion.box, n, 42);
  FrameBuilder b(e.immersion, e.ambient, us.front());
  return {std::move(e), std::move(us), std::move(b)};
}

const ResidualReport& find(const std::vector<ResidualReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.check_id == id) return r;
  FAIL("missing check " << id);
  return rs.front();
}

}  // namespace

TEST_CASE("classification of the example and the controls") {
  const Setup ex = setup("example_3_2");
  const SGLClassification c = classify_sgl(ex.b, ex.us);
  CHECK(c.sgl);
  CHECK(c.radical_rank == 2);
  CHECK(c.radical_invariant);
  CHECK(c.radical_invariance_defect < 1e-6);
  CHECK(c.e0_condition < 1e6);
  CHECK(c.e0_dim == 2);
  CHECK(c.eprime_dim == 2);
  CHECK_FALSE(c.eprime_trivial);
  CHECK(c.w_eprime_in_stv);

  const Setup plane = setup("invariant_plane");
  const SGLClassification p = classify_sgl(plane.b, plane.us);
  CHECK(p.sgl);
  CHECK(p.eprime_dim == 0);
  CHECK(p.eprime_trivial);

  const Setup geo = setup("geodesic_subspace");
  const SGLClassification g = classify_sgl(geo.b, geo.us);
  CHECK_FALSE(g.sgl);
  CHECK(g.radical_rank == 0);
  CHECK_FALSE(g.reason.empty());

  const Setup line = setup("null_line");
  const SGLClassification l = classify_sgl(line.b, line.us);
  CHECK(l.radical_rank == 1);
  CHECK_FALSE(l.has_contact);
  CHECK_FALSE(l.sgl);
}

TEST_CASE("basis order slot mapping breaks radical invariance") {
  const Setup bo = setup("example_3_2", 6, SlotMapping::basis_order);
  const SGLClassification c = classify_sgl(bo.b, bo.us);
  CHECK_FALSE(c.radical_invariant);
  CHECK_FALSE(c.sgl);
  CHECK(c.radical_invariance_defect > 0.1);
  const auto rs = check_sgl(bo.b, bo.us);
  CHECK_FALSE(find(rs, "sgl.radical_invariant").pass);
}

TEST_CASE("tangent decomposition reconstructs and lands in each piece") {
  const Setup ex = setup("example_3_2", gen::kCases);
  Rng r(501);
  for (const VecX& u : ex.us) {
    const Frame f = ex.b(u);
    const VecX x = f.J * gen::vec(r, f.m());
    const TangentDecomposition d = decompose_tangent(f, x);
    CHECK(gen::inf_norm(VecX(d.p0 + d.p1 + d.q + d.eta * f.nu - x)) < 1e-10);
    CHECK(d.eta == doctest::Approx(f.eta.dot(x)).epsilon(1e-10));
    CHECK(gen::inf_norm(VecX(project(f, Distribution::E0, d.p0) - d.p0)) < 1e-10);
    CHECK(gen::inf_norm(VecX(project(f, Distribution::radical, d.p1) - d.p1)) < 1e-10);
    CHECK(gen::inf_norm(VecX(project(f, Distribution::Eprime, d.q) - d.q)) < 1e-10);
    // φ maps E₀ and the radical into the tangent bundle; φ(E′) leaves it.
    CHECK(gen::inf_norm(transversal_part(f, VecX(f.phi * d.p0))) < 1e-8);
    CHECK(gen::inf_norm(transversal_part(f, VecX(f.phi * d.p1))) < 1e-8);
  }
  const Frame f = ex.b(ex.us[0]);
  CHECK_THROWS_AS(decompose_tangent(f, f.ltr.col(0)), UsageError);
}

TEST_CASE("φ split into tangential and transversal parts") {
  const Setup ex = setup("example_3_2", gen::kCases);
  Rng r(502);
  for (const VecX& u : ex.us) {
    const Frame f = ex.b(u);
    const VecX x = f.J * gen::vec(r, f.m());
    const PhiSplit s = phi_split(f, x);
    CHECK(gen::inf_norm(VecX(s.tangential + s.transversal - f.phi * x)) < 1e-10);
    CHECK(gen::inf_norm(transversal_part(f, s.tangential)) < 1e-10);
    CHECK(gen::inf_norm(tangent_part(f, s.transversal)) < 1e-10);
    const VecX v = f.ltr * gen::vec(r, f.r()) + f.stv * gen::vec(r, f.s());
    const PhiSplit t = phi_split(f, v);
    CHECK(gen::inf_norm(VecX(t.tangential + t.transversal - f.phi * v)) < 1e-10);
  }
}

TEST_CASE("theorem suites pass on every entry for λ in {0, 0.3}") {
  for (const auto& name : catalog_names())
    for (double lambda : {0.0, 0.3}) {
      const Setup s = setup(name, 4, SlotMapping::interleaved, lambda);
      for (const auto& rs : {check_sgl(s.b, s.us), check_integrability(s.b, s.us),
                             check_parallelism(s.b, s.us), check_geodesic(s.b, s.us),
                             check_lemma_splits(s.b, s.us)})
        for (const auto& r : rs)
          if (!r.informational()) CHECK_MESSAGE(r.pass, name << " λ=" << lambda << ": " << r.check_id);
    }
}

TEST_CASE("iff verdicts are invariant under rescaling the parameters") {
  // u = s u' rescales every section by s; vanishing, and so agreement, is unchanged.
  const Setup ex = setup("example_3_2", 4);
  const double s = 0.5;
  Immersion scaled = ex.e.immersion;
  const SmoothMap base = ex.e.immersion.map;
  scaled.map = SmoothMap(7, 13, [base, s](const auto& u) {
    using T = typename std::decay_t<decltype(u)>::Scalar;
    return Vec<T>(base.eval<T>(Vec<T>(u * T(s))));
  });
  std::vector<VecX> us2;
  for (const VecX& u : ex.us) us2.push_back(u / s);
  const FrameBuilder b2(scaled, ex.e.ambient, us2.front());
  const auto a1 = check_integrability(ex.b, ex.us), a2 = check_integrability(b2, us2);
  const auto g1 = check_geodesic(ex.b, ex.us), g2 = check_geodesic(b2, us2);
  REQUIRE(a1.size() == a2.size());
  REQUIRE(g1.size() == g2.size());
  int iff = 0;
  for (const auto* pair : {&a1, &g1}) {
    const auto& x = *pair;
    const auto& y = pair == &a1 ? a2 : g2;
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(x[i].check_id == y[i].check_id);
      CHECK(x[i].pass == y[i].pass);
      if (x[i].kind() == CheckKind::iff) {
        ++iff;
        CHECK(x[i].notes.substr(0, 30) == y[i].notes.substr(0, 30));
      }
    }
  }
  CHECK(iff > 0);
}

TEST_CASE("insufficient rank becomes an informational entry") {
  const Setup plane = setup("invariant_plane", 3);
  for (const auto& r : check_integrability(plane.b, plane.us))
    if (r.check_id.find("Eprime") != std::string::npos) CHECK(r.informational());
}
