#include <doctest.h>

#include "gen.hpp"
#include "sgl/catalog.hpp"

using namespace sgl;

namespace {

FrameBuilder builder(const CatalogEntry& e, const std::vector<VecX>& us) {
  return FrameBuilder(e.immersion, e.ambient, us.front());
}

}  // namespace

TEST_CASE("radical rank of the catalog entries") {
  struct Case {
    const char* name;
    int r;
  };
  for (const Case c : {Case{"example_3_2", 2}, Case{"null_line", 1}, Case{"invariant_plane", 2},
                       Case{"geodesic_subspace", 0}}) {
    const CatalogEntry e = build_entry(c.name);
    const auto us = sample_points(e.immersion.box, 10, 42);
    CHECK_MESSAGE(radical_rank_over(e.immersion, e.ambient.g, us) == c.r, c.name);
    const Frame f = builder(e, us)(us[3]);
    CHECK(f.r() == c.r);
    CHECK(f.ltr.cols() == c.r);
  }
}

TEST_CASE("frame pairings and reconstruction at random points") {
  const CatalogEntry e = build_entry("example_3_2");
  const auto us = sample_points(e.immersion.box, gen::kCases, 7);
  const FrameBuilder b = builder(e, us);
  Rng r(401);
  for (const VecX& u : us) {
    const Frame f = b(u);
    const MatX& g = f.g;
    const int rr = f.r();
    CHECK(gen::inf_norm(MatX(f.ltr.transpose() * g * f.xi - MatX::Identity(rr, rr))) < 1e-8);
    CHECK(gen::inf_norm(MatX(f.ltr.transpose() * g * f.ltr)) < 1e-8);
    CHECK(gen::inf_norm(MatX(f.xi.transpose() * g * f.J)) < 1e-8);
    CHECK(gen::inf_norm(MatX(f.stv.transpose() * g * f.J)) < 1e-8);
    CHECK(gen::inf_norm(MatX(f.screen.transpose() * g * f.ltr)) < 1e-8);
    const VecX v = gen::vec(r, f.dim());
    CHECK(gen::inf_norm(VecX(tangent_part(f, v) + transversal_part(f, v) - v)) < 1e-10);
    CHECK(gen::inf_norm(VecX(ltr_part(f, v) + stv_part(f, v) - transversal_part(f, v))) < 1e-10);
  }
}

TEST_CASE("frame contract passes on all catalog entries") {
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = build_entry(name);
    const auto us = sample_points(e.immersion.box, 8, 42);
    const auto rs = check_frames(builder(e, us), us);
    for (const auto& r : rs)
      if (!r.informational()) CHECK_MESSAGE(r.pass, name << ": " << r.check_id << " " << r.max_residual);
  }
}

TEST_CASE("r = 0 gives empty radical and ltr blocks") {
  const CatalogEntry e = build_entry("geodesic_subspace");
  const auto us = sample_points(e.immersion.box, 3, 1);
  const Frame f = builder(e, us)(us[1]);
  CHECK(f.xi.cols() == 0);
  CHECK(f.ltr.cols() == 0);
  CHECK(f.full.rows() == f.full.cols());
}

TEST_CASE("rank deficient immersions and rank changes are reported") {
  const CatalogEntry line = build_entry("null_line");
  Immersion flat = line.immersion;
  flat.map = SmoothMap(1, 2, [](const auto& u) {
    using T = typename std::decay_t<decltype(u)>::Scalar;
    Vec<T> x(2);
    x << u(0) * u(0), u(0) * u(0);
    return x;
  });
  CHECK_THROWS_AS(FrameBuilder(flat, line.ambient, VecX::Zero(1)), ImmersionError);

  // t -> (t, t + t²/2) is null only at t = 0.
  Immersion bend = line.immersion;
  bend.map = SmoothMap(1, 2, [](const auto& u) {
    using T = typename std::decay_t<decltype(u)>::Scalar;
    Vec<T> x(2);
    x << u(0), u(0) + 0.5 * u(0) * u(0);
    return x;
  });
  const std::vector<VecX> us = {VecX::Zero(1), VecX::Constant(1, 0.5)};
  CHECK_THROWS_AS(radical_rank_over(bend, line.ambient.g, us), ClassificationError);
  const FrameBuilder b(bend, line.ambient, us[0]);
  CHECK_THROWS_AS(b(us[1]), ClassificationError);
}

TEST_CASE("induced relations pass on the example for λ in {0, 0.3}") {
  for (double lambda : {0.0, 0.3}) {
    const CatalogEntry e = build_entry("example_3_2", lambda);
    const auto us = sample_points(e.immersion.box, 6, 42);
    const auto rs = check_induced_relations(builder(e, us), us);
    int failed = 0;
    for (const auto& r : rs)
      if (!r.informational() && !r.pass) {
        ++failed;
        // Only the as-printed forms and the unconditional non-metric claim fail;
        // their corrected counterparts must pass.
        const bool known = r.check_id == "weingarten.ltr_connection" || r.check_id == "screen.A_prime" ||
                           r.check_id == "screen.radical_connection" || r.check_id == "thm.D_nonmetric";
        CHECK_MESSAGE(known, r.check_id);
      }
    CHECK(failed == 4);
    for (const auto& r : rs)
      if (r.check_id == "weingarten.ltr_connection_full" || r.check_id == "screen.A_prime_screen" ||
          r.check_id == "screen.radical_connection_full")
        CHECK(r.pass);
  }
}
