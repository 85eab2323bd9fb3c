#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>

#include "doctest.h"
#include "twwc/channel.hpp"
#include "twwc/errors.hpp"
#include "twwc/region.hpp"
#include "twwc/rng.hpp"

using namespace twwc;

namespace {

using Pt = std::array<double, 2>;

double bern_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

AdditiveChannelSpec binary_additive(double p1, double p2, double p3) {
  return AdditiveChannelSpec(2, 1, 1, 1, 1, 1, 1, Pmf({1 - p1, p1}), Pmf({1 - p2, p2}),
                             Pmf({1 - p3, p3}));
}

bool close(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

bool has_vertex(const RateRegion2D& r, double x, double y, double tol = 1e-9) {
  for (const Pt& v : r.vertices)
    if (close(v[0], x, tol) && close(v[1], y, tol)) return true;
  return false;
}

}  // namespace

TEST_CASE("make_region orders pentagon vertices counterclockwise") {
  const RateRegion2D r = make_region({{1, 0, 0.4}, {0, 1, 0.5}, {1, 1, 0.7}});
  REQUIRE(r.vertices.size() == 5);
  CHECK(r.vertices[0] == Pt{0.0, 0.0});
  CHECK(close(r.vertices[1][0], 0.4));
  CHECK(close(r.vertices[1][1], 0.0));
  CHECK(close(r.vertices[2][0], 0.4));
  CHECK(close(r.vertices[2][1], 0.3));
  CHECK(close(r.vertices[3][0], 0.2));
  CHECK(close(r.vertices[3][1], 0.5));
  CHECK(close(r.vertices[4][0], 0.0));
  CHECK(close(r.vertices[4][1], 0.5));
}

TEST_CASE("make_region degenerate shapes") {
  // slack sum constraint leaves a rectangle
  const RateRegion2D rect = make_region({{1, 0, 0.3}, {0, 1, 0.2}, {1, 1, 0.9}});
  CHECK(rect.vertices.size() == 4);
  CHECK(has_vertex(rect, 0.3, 0.2));
  // dominant sum constraint leaves a triangle
  const RateRegion2D tri = make_region({{1, 0, 0.4}, {0, 1, 0.4}, {1, 1, 0.25}});
  CHECK(tri.vertices.size() == 3);
  CHECK(has_vertex(tri, 0.25, 0.0));
  CHECK(has_vertex(tri, 0.0, 0.25));
  // zero-capacity region collapses to the origin
  const RateRegion2D zero = make_region({{1, 0, 0.0}, {0, 1, 0.0}});
  REQUIRE(zero.vertices.size() == 1);
  CHECK(zero.vertices[0] == Pt{0.0, 0.0});
}

TEST_CASE("region_contains honors boundary tolerance") {
  const RateRegion2D r = make_region({{1, 0, 0.4}, {0, 1, 0.5}, {1, 1, 0.7}});
  CHECK(region_contains(r, 0.2, 0.2));
  CHECK(region_contains(r, 0.4, 0.3));
  CHECK(region_contains(r, 0.4 + 1e-10, 0.3));
  CHECK_FALSE(region_contains(r, 0.41, 0.3));
  CHECK_FALSE(region_contains(r, 0.36, 0.36));
  CHECK_FALSE(region_contains(r, -0.1, 0.1));
}

TEST_CASE("region_from_points closes downward and caps both axes") {
  const RateRegion2D r = region_from_points({{0.3, 0.2}});
  CHECK(r.vertices.size() == 4);
  CHECK(has_vertex(r, 0.3, 0.2));
  CHECK(region_contains(r, 0.1, 0.1));
  CHECK_FALSE(region_contains(r, 0.31, 0.0));
  CHECK_FALSE(region_contains(r, 0.0, 0.21));

  const RateRegion2D two = region_from_points({{0.4, 0.1}, {0.1, 0.4}});
  CHECK(region_contains(two, 0.25, 0.25));  // midpoint of the hull edge
  CHECK_FALSE(region_contains(two, 0.35, 0.35));

  // a segment on the R1 axis still gets explicit caps
  const RateRegion2D seg = region_from_points({{0.3, 0.0}});
  CHECK(region_contains(seg, 0.2, 0.0));
  CHECK_FALSE(region_contains(seg, 0.2, 0.05));
  CHECK_FALSE(region_contains(seg, 0.35, 0.0));
}

TEST_CASE("flavor strings round-trip") {
  for (Flavor f : {Flavor::joint, Flavor::individual, Flavor::outer})
    CHECK(flavor_from_str(flavor_str(f)) == f);
  CHECK_THROWS_AS(flavor_from_str("inner"), ValidationError);
}

TEST_CASE("additive closed forms match the generic tensor path") {
  const auto spec = binary_additive(0.1, 0.15, 0.25);
  const ChannelTensor t = additive_to_tensor(spec);
  const JointInputLaw law = JointInputLaw::identity_uniform(2, 2);

  const RateRegion2D aj = region_additive(spec, Flavor::joint);
  const RateRegion2D tj = region_joint(t, law);
  REQUIRE(aj.halfspaces.size() == 3);
  REQUIRE(tj.halfspaces.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(close(aj.halfspaces[i].a, tj.halfspaces[i].a));
    CHECK(close(aj.halfspaces[i].b, tj.halfspaces[i].b));
    CHECK(close(aj.halfspaces[i].c, tj.halfspaces[i].c, 1e-11));
  }
  const double g1 = std::log(2.0) - bern_entropy(0.15);
  const double g2 = std::log(2.0) - bern_entropy(0.1);
  const double g12 = std::log(2.0) + bern_entropy(0.25) - bern_entropy(0.1) - bern_entropy(0.15);
  CHECK(close(aj.halfspaces[0].c, g1, 1e-12));
  CHECK(close(aj.halfspaces[1].c, g2, 1e-12));
  CHECK(close(aj.halfspaces[2].c, g12, 1e-12));

  const RateRegion2D ai = region_additive(spec, Flavor::individual);
  const RateRegion2D ti = region_individual(t, law);
  REQUIRE(ai.halfspaces.size() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(close(ai.halfspaces[i].c, ti.halfspaces[i].c, 1e-11));
  CHECK(close(ai.halfspaces[0].c, std::min(g1, g12), 1e-12));

  const RateRegion2D ao = region_additive(spec, Flavor::outer);
  REQUIRE(ao.halfspaces.size() == 2);
  CHECK(close(ao.halfspaces[0].c, g1, 1e-12));
  CHECK(close(ao.halfspaces[1].c, g2, 1e-12));
}

TEST_CASE("joint region sits inside individual inside outer") {
  CounterRng rng(41, 0);
  for (int i = 0; i < 6; ++i) {
    Vec n1(2), n2(2), n3(2);
    n1[1] = 0.05 + 0.4 * rng.next_double();
    n1[0] = 1 - n1[1];
    n2[1] = 0.05 + 0.4 * rng.next_double();
    n2[0] = 1 - n2[1];
    n3[1] = 0.05 + 0.4 * rng.next_double();
    n3[0] = 1 - n3[1];
    const AdditiveChannelSpec spec(2, 1, 1, 1, 1, 1, 1, Pmf(n1), Pmf(n2), Pmf(n3));
    const RateRegion2D j = region_additive(spec, Flavor::joint);
    const RateRegion2D ind = region_additive(spec, Flavor::individual);
    const RateRegion2D out = region_additive(spec, Flavor::outer);
    for (const Pt& v : j.vertices) CHECK(region_contains(ind, v[0], v[1]));
    for (const Pt& v : ind.vertices) CHECK(region_contains(out, v[0], v[1]));
    // downward closure
    for (const Pt& v : j.vertices) CHECK(region_contains(j, 0.5 * v[0], 0.25 * v[1]));
  }
}

TEST_CASE("degenerate eavesdropper noise collapses individual onto the outer bound") {
  // max(H(N1), H(N2)) <= H(N3) forces the sum bound above both single bounds
  const auto spec = binary_additive(0.05, 0.1, 0.3);
  const RateRegion2D ind = region_additive(spec, Flavor::individual);
  const RateRegion2D out = region_additive(spec, Flavor::outer);
  REQUIRE(ind.vertices.size() == out.vertices.size());
  for (std::size_t i = 0; i < ind.vertices.size(); ++i) {
    CHECK(close(ind.vertices[i][0], out.vertices[i][0], 1e-9));
    CHECK(close(ind.vertices[i][1], out.vertices[i][1], 1e-9));
  }
}

TEST_CASE("law_grid spans the identity-processing simplex lattice") {
  const auto laws = law_grid(2, 2, 2);
  CHECK(laws.size() == 9);
  for (const JointInputLaw& law : laws) {
    double s = 0.0;
    for (std::size_t x = 0; x < 2; ++x) s += law.x1_marginal()[x];
    CHECK(close(s, 1.0));
  }
  CHECK(law_grid(2, 3, 2).size() == 3 * 6);
  CHECK_THROWS_AS(law_grid(2, 2, 0), ValidationError);
}

TEST_CASE("region_union filters by cost and flags empty families") {
  const auto spec = binary_additive(0.1, 0.1, 0.2);
  const ChannelTensor t = additive_to_tensor(spec);
  const auto laws = law_grid(2, 2, 2);

  const RateRegion2D full = region_union(t, laws, Flavor::joint);
  CHECK(full.meta.at("laws_used") == "9");
  // the uniform identity member is inside the union
  const RateRegion2D uni = region_joint(t, JointInputLaw::identity_uniform(2, 2));
  for (const Pt& v : uni.vertices) CHECK(region_contains(full, v[0], v[1]));

  CostSpec cost;
  cost.g1 = {0.0, 1.0};
  cost.g2 = {0.0, 1.0};
  cost.c1 = 0.6;
  cost.c2 = 0.6;
  const RateRegion2D capped = region_union(t, laws, Flavor::joint, cost);
  CHECK(capped.meta.at("laws_used") == "4");  // P(X=1) in {0, 1/2} per user

  cost.c1 = -1.0;
  cost.c2 = -1.0;
  const RateRegion2D empty = region_union(t, laws, Flavor::joint, cost);
  CHECK(empty.meta.at("flag") == "all_laws_filtered");
  CHECK(empty.vertices.size() == 1);
  CHECK(empty.vertices[0] == Pt{0.0, 0.0});

  CHECK_THROWS_AS(region_union(t, {}, Flavor::joint), ValidationError);
  CHECK_THROWS_AS(region_union(t, laws, Flavor::outer), ValidationError);
}

TEST_CASE("time sharing averages segment regions") {
  const RateRegion2D seg1 = region_from_points({{0.4, 0.0}});
  const RateRegion2D seg2 = region_from_points({{0.0, 0.4}});
  const TimeSharingPlan plan{Pmf({0.5, 0.5}), {}};
  const RateRegion2D mix = region_time_share(plan, {seg1, seg2});
  CHECK(region_contains(mix, 0.2, 0.2));
  CHECK_FALSE(region_contains(mix, 0.3, 0.2));
  CHECK_FALSE(region_contains(mix, 0.4, 0.0));

  const TimeSharingPlan solo{Pmf({1.0, 0.0}), {}};
  const RateRegion2D only1 = region_time_share(solo, {seg1, seg2});
  CHECK(region_contains(only1, 0.4, 0.0));
  CHECK_FALSE(region_contains(only1, 0.0, 0.1));

  const TimeSharingPlan bad{Pmf({1.0}), {}};
  CHECK_THROWS_AS(region_time_share(bad, {seg1, seg2}), ValidationError);

  // budget accounting
  const TimeSharingPlan costed{Pmf({0.5, 0.5}), {{1.0, 0.0}, {3.0, 0.0}}};
  CHECK_NOTHROW(region_time_share(costed, {seg1, seg2}, std::make_pair(2.0, 0.0)));
  CHECK_THROWS_AS(region_time_share(costed, {seg1, seg2}, std::make_pair(1.5, 0.0)),
                  ValidationError);
  const TimeSharingPlan nobudget{Pmf({0.5, 0.5}), {}};
  CHECK_THROWS_AS(region_time_share(nobudget, {seg1, seg2}, std::make_pair(2.0, 0.0)),
                  ValidationError);
}

TEST_CASE("gaussian inner region closed forms") {
  const GaussianChannelSpec spec(1, 1, 1, 1, 1, 1, 1.0, 1.0, 2.0);
  const RateRegion2D r = region_gaussian_inner(spec, 1.0, 1.0, Flavor::joint);
  REQUIRE(r.halfspaces.size() == 3);
  const double g1 = 0.5 * (std::log(2.0) - std::log(4.0 / 3.0));
  const double g12 = 0.5 * std::log(2.0);
  CHECK(close(r.halfspaces[0].c, g1, 1e-12));
  CHECK(close(r.halfspaces[1].c, g1, 1e-12));
  CHECK(close(r.halfspaces[2].c, g12, 1e-12));

  const RateRegion2D ind = region_gaussian_inner(spec, 1.0, 1.0, Flavor::individual);
  REQUIRE(ind.halfspaces.size() == 2);
  CHECK(close(ind.halfspaces[0].c, std::min(g1, g12), 1e-12));

  CHECK_THROWS_AS(region_gaussian_inner(spec, -1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(region_gaussian_inner(spec, 1.0, 1.0, Flavor::outer), ValidationError);
}

TEST_CASE("gaussian outer bound and its validity flag") {
  const GaussianChannelSpec met(1, 1, 1, 1, 1, 1, 1.0, 1.0, 2.5);
  const RateRegion2D r = region_gaussian_outer(met, 1.5, 2.0);
  CHECK(r.meta.find("flag") == r.meta.end());
  CHECK(close(r.halfspaces[0].c, 0.5 * std::log1p(1.5), 1e-12));
  CHECK(close(r.halfspaces[1].c, 0.5 * std::log1p(2.0), 1e-12));

  const GaussianChannelSpec unmet(1, 1, 1, 1, 1, 1, 1.0, 1.0, 1.0);
  CHECK(region_gaussian_outer(unmet, 1.0, 1.0).meta.at("flag") == "condition_unmet");
  CHECK_THROWS_AS(region_gaussian_outer(met, -1.0, 1.0), ValidationError);
}

TEST_CASE("gaussian inner hull meets the outer sum bound at the budget corner") {
  const GaussianChannelSpec spec(1.0, 0.8, 1.2, 1.0, 0.5, 0.6, 1.0, 1.2, 2.0);
  // admissible: (0.36/0.64)*1.0 + (0.25/1.44)*1.2 = 0.77 <= 2.0
  const double c1 = 1.5, c2 = 1.0;
  const RateRegion2D outer = region_gaussian_outer(spec, c1, c2);
  REQUIRE(outer.meta.find("flag") == outer.meta.end());
  const RateRegion2D inner = region_gaussian_inner(spec, c1, c2, Flavor::joint);
  CHECK(close(inner.halfspaces[2].c, outer.halfspaces[2].c, 1e-9));
  CHECK(inner.halfspaces[0].c <= outer.halfspaces[0].c + 1e-9);
  CHECK(inner.halfspaces[1].c <= outer.halfspaces[1].c + 1e-9);

  const RateRegion2D hull = region_gaussian_inner_hull(spec, c1, c2, 5, Flavor::joint);
  for (const Pt& v : inner.vertices) CHECK(region_contains(hull, v[0], v[1]));
  for (const Pt& v : hull.vertices) CHECK(region_contains(outer, v[0], v[1]));
  CHECK_THROWS_AS(region_gaussian_inner_hull(spec, c1, c2, 1), ValidationError);
}
