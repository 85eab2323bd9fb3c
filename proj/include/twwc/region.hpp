#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twwc/channel.hpp"
#include "twwc/linear_system.hpp"

namespace twwc {

// a*R1 + b*R2 <= c, rates in nats per channel use.
struct Halfspace {
  double a, b, c;
};

// A convex, downward-closed region of achievable rate pairs in the
// nonnegative quadrant. Vertices are the hull boundary in counterclockwise
// order starting from the lexicographically smallest vertex; the implicit
// constraints R1 >= 0, R2 >= 0 are not stored in `halfspaces`.
struct RateRegion2D {
  std::vector<Halfspace> halfspaces;
  std::vector<std::array<double, 2>> vertices;
  std::map<std::string, std::string> meta;
};

enum class Flavor { joint, individual, outer };
const char* flavor_str(Flavor f);
Flavor flavor_from_str(const std::string& s);

// Build a region from explicit halfspaces (vertex enumeration + hull).
RateRegion2D make_region(std::vector<Halfspace> hs,
                         std::map<std::string, std::string> meta = {});
// Build from points (hull + edge-derived halfspaces).
RateRegion2D region_from_points(const std::vector<std::array<double, 2>>& pts,
                                std::map<std::string, std::string> meta = {});

bool region_contains(const RateRegion2D& r, double R1, double R2, double tol = 1e-9);

// Single-law achievable regions. Joint flavor:
//   R1 <= I(Y2;V1|X2) - I(Z;V1)
//   R2 <= I(Y1;V2|X1) - I(Z;V2)
//   R1 + R2 <= I(Y2;V1|X2) + I(Y1;V2|X1) - I(Z;V1,V2)
// Individual flavor replaces the sum constraint by the same bound on
// max(R1,R2), stored expanded into the two single-rate halfspaces.
// Negative right-hand sides clip to zero.
RateRegion2D region_joint(const ChannelTensor& t, const JointInputLaw& law);
RateRegion2D region_individual(const ChannelTensor& t, const JointInputLaw& law);

// Hull of the union over an input-law family; laws failing the average-cost
// budgets are skipped. All laws filtered out yields an empty region flagged
// in meta ("flag" = "all_laws_filtered").
RateRegion2D region_union(const ChannelTensor& t, const std::vector<JointInputLaw>& laws,
                          Flavor flavor, const std::optional<CostSpec>& cost = std::nullopt);

// Identity-processing (V=X) product law family on a simplex lattice with
// step 1/step_denom per user.
std::vector<JointInputLaw> law_grid(std::size_t nx1, std::size_t nx2, int step_denom);

// Time sharing: weights over segments with per-segment budgets.
struct TimeSharingPlan {
  Pmf weights;
  std::vector<std::pair<double, double>> budgets;  // optional; empty = uncosted
};

// Weighted Minkowski average of the segment regions: hull of
// { sum_j Q(j) * v_j : v_j vertex of region j }. When global budgets are
// given, the plan's weighted budgets must not exceed them.
RateRegion2D region_time_share(const TimeSharingPlan& plan,
                               const std::vector<RateRegion2D>& segments,
                               std::optional<std::pair<double, double>> global_budgets = std::nullopt);

// Closed-form additive-channel regions (uniform V=X inputs):
//   joint:       R1 <= ln q - H(N2), R2 <= ln q - H(N1),
//                R1+R2 <= ln q + H(N3) - H(N1) - H(N2)
//   individual:  the two single-rate bounds, each also capped by the sum bound
//   outer:       the two single-rate bounds only
RateRegion2D region_additive(const AdditiveChannelSpec& spec, Flavor flavor);

// Gaussian closed forms at fixed transmit powers (flavor joint/individual).
RateRegion2D region_gaussian_inner(const GaussianChannelSpec& spec, double p1, double p2,
                                   Flavor flavor = Flavor::joint);
// Hull over the power grid {i/(grid-1)*c1} x {j/(grid-1)*c2}, grid >= 2.
RateRegion2D region_gaussian_inner_hull(const GaussianChannelSpec& spec, double c1, double c2,
                                        int grid, Flavor flavor = Flavor::joint);
// Sum-rate outer bound at budgets (c1,c2); valid only under the noise
// condition (b3^2/b1^2) v1 + (a3^2/a2^2) v2 <= v3, otherwise the result is
// flagged in meta ("flag" = "condition_unmet").
RateRegion2D region_gaussian_outer(const GaussianChannelSpec& spec, double c1, double c2);

}  // namespace twwc
