#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twwc/pmf.hpp"
#include "twwc/tensor.hpp"

namespace twwc {

// Storage cap for dense channel/joint tensors (entry count).
inline constexpr std::size_t kTensorEntryCap = 10'000'000;

// The memoryless two-way wiretap channel P(y1, y2, z | x1, x2).
// probs is row-major over (x1, x2, y1, y2, z), z fastest.
struct ChannelTensor {
  std::size_t nx1 = 0, nx2 = 0, ny1 = 0, ny2 = 0, nz = 0;
  Vec probs;

  ChannelTensor() = default;
  ChannelTensor(std::size_t nx1, std::size_t nx2, std::size_t ny1, std::size_t ny2,
                std::size_t nz, Vec probs);

  double p(std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2,
           std::size_t z) const {
    return probs[(((x1 * nx2 + x2) * ny1 + y1) * ny2 + y2) * nz + z];
  }
};

struct Diagnostics {
  bool ok = true;
  std::vector<std::string> issues;
};

// Normalization / nonnegativity check; reports each offending (x1,x2) slice.
Diagnostics validate_channel(const ChannelTensor& t);

// Pre-noisy processing structure: independent per-user laws P_{Vi} P_{Xi|Vi}.
struct JointInputLaw {
  Pmf pV1;
  CondPmf pX1gV1;
  Pmf pV2;
  CondPmf pX2gV2;

  JointInputLaw(Pmf pV1, CondPmf pX1gV1, Pmf pV2, CondPmf pX2gV2);
  // V_i = X_i with uniform inputs, the workhorse configuration.
  static JointInputLaw identity_uniform(std::size_t nx1, std::size_t nx2);

  Pmf x1_marginal() const { return push_forward(pV1, pX1gV1); }
  Pmf x2_marginal() const { return push_forward(pV2, pX2gV2); }
};

// Finite-field additive channel over Z_q (q prime):
//   Y1 = a1 X1 + b1 X2 + N1,  Y2 = a2 X1 + b2 X2 + N2,  Z = a3 X1 + b3 X2 + N3.
struct AdditiveChannelSpec {
  std::uint32_t q;
  std::uint32_t a1, b1, a2, b2, a3, b3;
  Pmf noise1, noise2, noise3;

  AdditiveChannelSpec(std::uint32_t q, std::uint32_t a1, std::uint32_t b1,
                      std::uint32_t a2, std::uint32_t b2, std::uint32_t a3,
                      std::uint32_t b3, Pmf n1, Pmf n2, Pmf n3);
};

bool is_prime(std::uint32_t q);

ChannelTensor additive_to_tensor(const AdditiveChannelSpec& spec);

// Scalar Gaussian channel parameters (closed-form region evaluation only):
//   Y1 = a1 X1 + b1 X2 + N1, ... with N_i ~ Normal(0, v_i).
struct GaussianChannelSpec {
  double a1, b1, a2, b2, a3, b3;
  double v1, v2, v3;

  GaussianChannelSpec(double a1, double b1, double a2, double b2, double a3,
                      double b3, double v1, double v2, double v3);
};

// Per-user input costs and budgets.
struct CostSpec {
  Vec g1, g2;
  double c1 = 0.0, c2 = 0.0;
};

// Expected per-letter costs (E g1(X1), E g2(X2)) of an input law.
std::pair<double, double> average_cost(const JointInputLaw& law, const CostSpec& cost);

// Effective joint axis order used everywhere downstream.
enum EffAxis : std::size_t { AxV1 = 0, AxV2, AxX1, AxX2, AxY1, AxY2, AxZ };

// Full one-shot joint law over (V1, V2, X1, X2, Y1, Y2, Z).
NdTensor compose_effective(const ChannelTensor& t, const JointInputLaw& law);

// The Shannon quantities the rate regions are built from.
struct ShannonInfo {
  double iy2_v1_g_x2;  // I(Y2; V1 | X2)
  double iy1_v2_g_x1;  // I(Y1; V2 | X1)
  double iz_v1;        // I(Z; V1)
  double iz_v2;        // I(Z; V2)
  double iz_v12;       // I(Z; V1 V2)
};
ShannonInfo shannon_info(const NdTensor& joint);

// I(A;B) / I(A;B|C) on marginal tensors with axes in the listed roles.
double shannon_mi_tensor(const NdTensor& ab);
double shannon_cmi_tensor(const NdTensor& abc);  // I(A;B|C), axes (a,b,c)

}  // namespace twwc
