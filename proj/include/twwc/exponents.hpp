#pragma once

#include <map>
#include <string>
#include <vector>

#include "twwc/channel.hpp"
#include "twwc/region.hpp"
#include "twwc/typelib.hpp"

namespace twwc {

// Message and local-randomness rates, nats per use.
struct RateTuple {
  double R1 = 0, R2 = 0, r1 = 0, r2 = 0;
};

struct ExponentRow {
  double s;
  double err;         // decoding-error bound (probability scale)
  double leak_joint;  // bound on I(M1,M2;Z^n), nats
  double leak_m1;     // bound on I(M1;Z^n), nats
  double leak_m2;     // bound on I(M2;Z^n), nats
};

struct BestEntry {
  double s = 0;
  double value = 0;
  bool vacuous = false;  // value fails to beat the trivial bound
};

struct ExponentReport {
  int n = 0;
  RateTuple rates;
  std::string kind;         // "iid" | "additive" | "constant_composition"
  std::string factor_mode;  // cc only: "exact" | "bound"
  std::vector<ExponentRow> rows;
  std::map<std::string, BestEntry> best;  // keys: err, leak_joint, leak_m1, leak_m2
};

// Default order-parameter grid: `count` equispaced points ending at 1 when
// include_one (iid bounds), else ending at count/(count+1) (quantities of
// order 1/(1-s) are undefined at s = 1).
std::vector<double> default_s_grid(int count = 99, bool include_one = true);

// Random-coding bounds at blocklength n. Per s:
//   err        = 2( e^{ns(R1+r1-Iu(Y2;V1|X2))} + e^{ns(R2+r2-Iu(Y1;V2|X1))} )
//   leak_joint = 2( e^{ns(Id(Z;V1)-r1)} + e^{ns(Id(Z;V2)-r2)} + e^{ns(Id(Z;V1V2)-r1-r2)} )
//   leak_m1    = 3( e^{ns(Id(Z;V1V2)-(r1+r2+R2))} + e^{ns(Id(Z;V1)-r1)} + e^{ns(Id(Z;V2)-(r2+R2))} )
//   leak_m2    symmetric with R1
// with Iu the order-1/(1+s) conditional Sibson quantity and Id the
// order-(1+s) divergence-from-product quantity of the composed law.
ExponentReport bounds_iid(const ChannelTensor& t, const JointInputLaw& law, RateTuple rates,
                          int n, const std::vector<double>& s_grid);

// Additive-channel closed forms: Iu terms become ln q - H_{1/(1+s)}(N_i) and
// the Id terms 0 / 0 / ln q - H_{1+s}(N3).
ExponentReport bounds_additive(const AdditiveChannelSpec& spec, RateTuple rates, int n,
                               const std::vector<double>& s_grid);

enum class FactorMode { exact, bound };

// Constant-composition bounds from joint types (per-user (V,X) counts at
// blocklength n): same shapes with Augustin quantities of order 1/(1+s)
// (error) and 1/(1-s) (leakage), multiplied by the polynomial factors
//   nu  = nu_n(|X1| |X2| max(|V1|,|V2|))                        (leakage)
//   nu' = nu_n(|X1|) nu_n(|X2|) max_i |T_n(Yi x Xi)|^{1+s} nu_n(|Yi||Xi|)^s   (error)
// factor_mode selects exact counts or their (1+n)^d-style bounds.
ExponentReport bounds_constant_composition(const ChannelTensor& t, const JointType& jt1,
                                           const JointType& jt2, RateTuple rates, int n,
                                           const std::vector<double>& s_grid, FactorMode fm);

// The (r1,r2) polyhedron compatible with secrecy lower bounds and
// reliability upper bounds at fixed message rates:
//   joint:      r1 > I(Z;V1), r2 > I(Z;V2), r1+r2 > I(Z;V1V2)
//   individual: r1 > I(Z;V1), r2 > I(Z;V2), r1+r2+min(R1,R2) > I(Z;V1V2)
//   both:       R1 + r1 < I(Y2;V1|X2), R2 + r2 < I(Y1;V2|X1), r_i >= 0
struct RandomnessRegion {
  bool feasible = false;
  std::vector<Halfspace> halfspaces;  // closure, a*r1 + b*r2 <= c
  std::vector<bool> strict;           // per halfspace: open side required
  std::vector<std::array<double, 2>> vertices;  // closure vertices, CCW
};
RandomnessRegion feasible_randomness(const ChannelTensor& t, const JointInputLaw& law,
                                     double R1, double R2, Flavor secrecy);

// The same constraints as a named linear system over (r1, r2), suitable for
// fourier_motzkin cross-checks.
LinearSystemD randomness_system(const ShannonInfo& info, double R1, double R2, Flavor secrecy);

}  // namespace twwc
