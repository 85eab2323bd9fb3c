#include "twwc/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twwc/errors.hpp"
#include "twwc/measures.hpp"
#include "twwc/typelib.hpp"

namespace twwc {

namespace {

constexpr double kGeomTol = 1e-9;
constexpr double kDetTol = 1e-12;

using Pt = std::array<double, 2>;

double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Convex hull boundary, counterclockwise from the lexicographically smallest
// point; collinear interior points dropped.
std::vector<Pt> hull_ccw(std::vector<Pt> pts) {
  for (Pt& p : pts) {
    p[0] = std::max(0.0, p[0]);
    p[1] = std::max(0.0, p[1]);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Pt& a, const Pt& b) {
                          return std::fabs(a[0] - b[0]) <= kGeomTol &&
                                 std::fabs(a[1] - b[1]) <= kGeomTol;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Pt> h(2 * pts.size());
  std::size_t k = 0;
  for (const Pt& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= kDetTol) --k;
    h[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    const Pt& p = pts[i];
    while (k >= lower && cross(h[k - 2], h[k - 1], p) <= kDetTol) --k;
    h[k++] = p;
  }
  h.resize(k - 1);
  return h;
}

bool satisfies(const std::vector<Halfspace>& hs, double x, double y) {
  if (x < -kGeomTol || y < -kGeomTol) return false;
  for (const Halfspace& h : hs)
    if (h.a * x + h.b * y > h.c + kGeomTol) return false;
  return true;
}

// Vertices of the polygon cut out by hs together with the axes.
std::vector<Pt> enumerate_vertices(const std::vector<Halfspace>& hs) {
  std::vector<Halfspace> lines = hs;
  lines.push_back({1.0, 0.0, 0.0});  // R1 = 0 boundary
  lines.push_back({0.0, 1.0, 0.0});  // R2 = 0 boundary
  std::vector<Pt> out;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
      if (std::fabs(det) <= kDetTol) continue;
      const double x = (lines[i].c * lines[j].b - lines[j].c * lines[i].b) / det;
      const double y = (lines[i].a * lines[j].c - lines[j].a * lines[i].c) / det;
      if (satisfies(hs, x, y)) out.push_back({std::max(0.0, x), std::max(0.0, y)});
    }
  return out;
}

Halfspace edge_halfspace(const Pt& p, const Pt& q) {
  // Outward normal of a counterclockwise edge p -> q.
  double nx = q[1] - p[1];
  double ny = p[0] - q[0];
  const double m = std::max(nx, ny);
  nx /= m;
  ny /= m;
  return {nx, ny, nx * p[0] + ny * p[1]};
}

double clip0(double v) { return std::max(0.0, v); }

struct Gamma {
  double g1, g2, g12;
};

Gamma gammas_from_info(const ShannonInfo& info) {
  return {clip0(info.iy2_v1_g_x2 - info.iz_v1), clip0(info.iy1_v2_g_x1 - info.iz_v2),
          clip0(info.iy2_v1_g_x2 + info.iy1_v2_g_x1 - info.iz_v12)};
}

RateRegion2D joint_from_gammas(const Gamma& g, std::map<std::string, std::string> meta) {
  meta["flavor"] = "joint";
  return make_region({{1.0, 0.0, g.g1}, {0.0, 1.0, g.g2}, {1.0, 1.0, g.g12}}, std::move(meta));
}

RateRegion2D individual_from_gammas(const Gamma& g, std::map<std::string, std::string> meta) {
  meta["flavor"] = "individual";
  return make_region({{1.0, 0.0, std::min(g.g1, g.g12)}, {0.0, 1.0, std::min(g.g2, g.g12)}},
                     std::move(meta));
}

}  // namespace

const char* flavor_str(Flavor f) {
  switch (f) {
    case Flavor::joint: return "joint";
    case Flavor::individual: return "individual";
    case Flavor::outer: return "outer";
  }
  return "joint";
}

Flavor flavor_from_str(const std::string& s) {
  if (s == "joint") return Flavor::joint;
  if (s == "individual") return Flavor::individual;
  if (s == "outer") return Flavor::outer;
  throw ValidationError("unknown region flavor: '" + s + "'");
}

RateRegion2D make_region(std::vector<Halfspace> hs, std::map<std::string, std::string> meta) {
  RateRegion2D r;
  r.vertices = hull_ccw(enumerate_vertices(hs));
  r.halfspaces = std::move(hs);
  r.meta = std::move(meta);
  return r;
}

RateRegion2D region_from_points(const std::vector<Pt>& pts,
                                std::map<std::string, std::string> meta) {
  std::vector<Pt> closed;
  closed.reserve(3 * pts.size() + 1);
  closed.push_back({0.0, 0.0});
  for (const Pt& p : pts) {
    closed.push_back(p);
    closed.push_back({p[0], 0.0});  // downward closure
    closed.push_back({0.0, p[1]});
  }
  RateRegion2D r;
  r.vertices = hull_ccw(std::move(closed));
  const std::size_t m = r.vertices.size();
  if (m == 1) {
    r.halfspaces = {{1.0, 0.0, r.vertices[0][0]}, {0.0, 1.0, r.vertices[0][1]}};
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      const Pt& p = r.vertices[i];
      const Pt& q = r.vertices[(i + 1) % m];
      if (m == 2 && i == 1) break;  // a segment has one true edge
      const double nx = q[1] - p[1], ny = p[0] - q[0];
      if (nx < -kDetTol || ny < -kDetTol) continue;  // axis-side edge, implicit
      if (std::fabs(nx) <= kDetTol && std::fabs(ny) <= kDetTol) continue;
      r.halfspaces.push_back(edge_halfspace(p, q));
    }
    // A segment or axis-aligned boundary can leave a direction unbounded by
    // the edge normals; cap both coordinates explicitly.
    double xmax = 0.0, ymax = 0.0;
    for (const Pt& p : r.vertices) {
      xmax = std::max(xmax, p[0]);
      ymax = std::max(ymax, p[1]);
    }
    bool have_x = false, have_y = false;
    for (const Halfspace& h : r.halfspaces) {
      if (h.b <= kDetTol && h.a > kDetTol) have_x = true;
      if (h.a <= kDetTol && h.b > kDetTol) have_y = true;
    }
    if (!have_x) r.halfspaces.push_back({1.0, 0.0, xmax});
    if (!have_y) r.halfspaces.push_back({0.0, 1.0, ymax});
  }
  r.meta = std::move(meta);
  return r;
}

bool region_contains(const RateRegion2D& r, double R1, double R2, double tol) {
  if (R1 < -tol || R2 < -tol) return false;
  for (const Halfspace& h : r.halfspaces)
    if (h.a * R1 + h.b * R2 > h.c + tol) return false;
  return true;
}

RateRegion2D region_joint(const ChannelTensor& t, const JointInputLaw& law) {
  return joint_from_gammas(gammas_from_info(shannon_info(compose_effective(t, law))), {});
}

RateRegion2D region_individual(const ChannelTensor& t, const JointInputLaw& law) {
  return individual_from_gammas(gammas_from_info(shannon_info(compose_effective(t, law))), {});
}

RateRegion2D region_union(const ChannelTensor& t, const std::vector<JointInputLaw>& laws,
                          Flavor flavor, const std::optional<CostSpec>& cost) {
  if (laws.empty()) throw ValidationError("region_union: empty law family");
  if (flavor == Flavor::outer)
    throw ValidationError("region_union: outer flavor needs a closed-form channel");
  std::vector<Pt> pts;
  std::size_t used = 0;
  for (const JointInputLaw& law : laws) {
    if (cost) {
      const auto [c1, c2] = average_cost(law, *cost);
      if (c1 > cost->c1 + kGeomTol || c2 > cost->c2 + kGeomTol) continue;
    }
    const Gamma g = gammas_from_info(shannon_info(compose_effective(t, law)));
    const RateRegion2D member =
        flavor == Flavor::joint ? joint_from_gammas(g, {}) : individual_from_gammas(g, {});
    pts.insert(pts.end(), member.vertices.begin(), member.vertices.end());
    ++used;
  }
  std::map<std::string, std::string> meta{{"flavor", flavor_str(flavor)},
                                          {"laws_used", std::to_string(used)}};
  if (used == 0) {
    meta["flag"] = "all_laws_filtered";
    return make_region({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}, std::move(meta));
  }
  return region_from_points(pts, std::move(meta));
}

std::vector<JointInputLaw> law_grid(std::size_t nx1, std::size_t nx2, int step_denom) {
  if (step_denom < 1) throw ValidationError("law_grid: step denominator must be >= 1");
  std::vector<Pmf> p1, p2;
  for (const TypeVector& t : enumerate_types(nx1, step_denom)) p1.push_back(t.pmf());
  for (const TypeVector& t : enumerate_types(nx2, step_denom)) p2.push_back(t.pmf());
  std::vector<JointInputLaw> laws;
  laws.reserve(p1.size() * p2.size());
  for (const Pmf& a : p1)
    for (const Pmf& b : p2)
      laws.emplace_back(a, CondPmf::identity(nx1), b, CondPmf::identity(nx2));
  return laws;
}

RateRegion2D region_time_share(const TimeSharingPlan& plan,
                               const std::vector<RateRegion2D>& segments,
                               std::optional<std::pair<double, double>> global_budgets) {
  if (plan.weights.size() != segments.size())
    throw ValidationError("time sharing: weights and segments must align");
  if (global_budgets) {
    if (plan.budgets.size() != segments.size())
      throw ValidationError("time sharing: per-segment budgets required under a global budget");
    double c1 = 0.0, c2 = 0.0;
    for (std::size_t j = 0; j < segments.size(); ++j) {
      c1 += plan.weights[j] * plan.budgets[j].first;
      c2 += plan.weights[j] * plan.budgets[j].second;
    }
    if (c1 > global_budgets->first + kGeomTol || c2 > global_budgets->second + kGeomTol)
      throw ValidationError("time sharing: weighted budgets exceed the global budgets");
  }
  // Weighted Minkowski average, built segment by segment; the hull after each
  // step keeps the point set small.
  std::vector<Pt> acc{{0.0, 0.0}};
  for (std::size_t j = 0; j < segments.size(); ++j) {
    const double w = plan.weights[j];
    std::vector<Pt> next;
    next.reserve(acc.size() * std::max<std::size_t>(1, segments[j].vertices.size()));
    for (const Pt& a : acc)
      for (const Pt& v : segments[j].vertices) next.push_back({a[0] + w * v[0], a[1] + w * v[1]});
    if (next.empty()) next = acc;
    acc = hull_ccw(std::move(next));
  }
  return region_from_points(acc, {{"flavor", "time_share"}});
}

RateRegion2D region_additive(const AdditiveChannelSpec& spec, Flavor flavor) {
  const double lnq = std::log(static_cast<double>(spec.q));
  const double h1 = shannon_entropy(spec.noise1);
  const double h2 = shannon_entropy(spec.noise2);
  const double h3 = shannon_entropy(spec.noise3);
  const Gamma g{clip0(lnq - h2), clip0(lnq - h1), clip0(lnq + h3 - h1 - h2)};
  std::map<std::string, std::string> meta{{"flavor", flavor_str(flavor)}};
  switch (flavor) {
    case Flavor::joint:
      return joint_from_gammas(g, std::move(meta));
    case Flavor::individual:
      return individual_from_gammas(g, std::move(meta));
    case Flavor::outer:
      return make_region({{1.0, 0.0, g.g1}, {0.0, 1.0, g.g2}}, std::move(meta));
  }
  throw ValidationError("region_additive: bad flavor");
}

namespace {

Gamma gaussian_gammas(const GaussianChannelSpec& c, double p1, double p2) {
  const double s1 = c.a2 * c.a2 * p1;  // signal powers at the three receivers
  const double s2 = c.b1 * c.b1 * p2;
  const double e1 = c.a3 * c.a3 * p1;
  const double e2 = c.b3 * c.b3 * p2;
  const double g1 =
      0.5 * (std::log((s1 + c.v2) / c.v2) - std::log((e1 + e2 + c.v3) / (e2 + c.v3)));
  const double g2 =
      0.5 * (std::log((s2 + c.v1) / c.v1) - std::log((e1 + e2 + c.v3) / (e1 + c.v3)));
  const double g12 = 0.5 * (std::log((s2 + c.v1) / c.v1) + std::log((s1 + c.v2) / c.v2) -
                            std::log((e1 + e2 + c.v3) / c.v3));
  return {clip0(g1), clip0(g2), clip0(g12)};
}

}  // namespace

RateRegion2D region_gaussian_inner(const GaussianChannelSpec& spec, double p1, double p2,
                                   Flavor flavor) {
  if (p1 < 0.0 || p2 < 0.0) throw ValidationError("gaussian region: powers must be >= 0");
  if (flavor == Flavor::outer)
    throw ValidationError("gaussian inner region: flavor must be joint or individual");
  const Gamma g = gaussian_gammas(spec, p1, p2);
  std::map<std::string, std::string> meta{{"powers", "fixed"}};
  return flavor == Flavor::joint ? joint_from_gammas(g, std::move(meta))
                                 : individual_from_gammas(g, std::move(meta));
}

RateRegion2D region_gaussian_inner_hull(const GaussianChannelSpec& spec, double c1, double c2,
                                        int grid, Flavor flavor) {
  if (c1 < 0.0 || c2 < 0.0) throw ValidationError("gaussian hull: budgets must be >= 0");
  if (grid < 2) throw ValidationError("gaussian hull: grid resolution must be >= 2");
  std::vector<Pt> pts;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double p1 = c1 * i / (grid - 1);
      const double p2 = c2 * j / (grid - 1);
      const RateRegion2D r = region_gaussian_inner(spec, p1, p2, flavor);
      pts.insert(pts.end(), r.vertices.begin(), r.vertices.end());
    }
  return region_from_points(pts, {{"flavor", flavor_str(flavor)}, {"powers", "hull"}});
}

RateRegion2D region_gaussian_outer(const GaussianChannelSpec& spec, double c1, double c2) {
  if (c1 < 0.0 || c2 < 0.0) throw ValidationError("gaussian outer: budgets must be >= 0");
  const double r1 = 0.5 * std::log1p(spec.a2 * spec.a2 * c1 / spec.v2);
  const double r2 = 0.5 * std::log1p(spec.b1 * spec.b1 * c2 / spec.v1);
  const Gamma g = gaussian_gammas(spec, c1, c2);
  std::map<std::string, std::string> meta{{"flavor", "outer"}};
  const bool degenerate = spec.b1 == 0.0 || spec.a2 == 0.0;
  const double mix = degenerate ? std::numeric_limits<double>::infinity()
                                : (spec.b3 * spec.b3 / (spec.b1 * spec.b1)) * spec.v1 +
                                      (spec.a3 * spec.a3 / (spec.a2 * spec.a2)) * spec.v2;
  if (!(mix <= spec.v3)) meta["flag"] = "condition_unmet";
  return make_region({{1.0, 0.0, r1}, {0.0, 1.0, r2}, {1.0, 1.0, g.g12}}, std::move(meta));
}

}  // namespace twwc
