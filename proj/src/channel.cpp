#include "twwc/channel.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "twwc/errors.hpp"
#include "twwc/measures.hpp"

namespace twwc {

namespace {

std::string slice_issue(std::size_t x1, std::size_t x2, const char* what, double value) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "slice (x1=%zu, x2=%zu): %s (%.12g)", x1, x2, what, value);
  return buf;
}

}  // namespace

ChannelTensor::ChannelTensor(std::size_t nx1_, std::size_t nx2_, std::size_t ny1_,
                             std::size_t ny2_, std::size_t nz_, Vec probs_)
    : nx1(nx1_), nx2(nx2_), ny1(ny1_), ny2(ny2_), nz(nz_), probs(std::move(probs_)) {
  if (nx1 == 0 || nx2 == 0 || ny1 == 0 || ny2 == 0 || nz == 0)
    throw ValidationError("channel: every alphabet must be nonempty");
  const std::size_t want = nx1 * nx2 * ny1 * ny2 * nz;
  if (want > kTensorEntryCap) throw SizingError("channel: tensor entry count exceeds cap");
  if (probs.size() != want) throw ValidationError("channel: probs length mismatch");
  Diagnostics d = validate_channel(*this);
  if (!d.ok) throw ValidationError("channel: " + d.issues.front());
}

Diagnostics validate_channel(const ChannelTensor& t) {
  Diagnostics d;
  for (std::size_t x1 = 0; x1 < t.nx1; ++x1)
    for (std::size_t x2 = 0; x2 < t.nx2; ++x2) {
      double sum = 0.0;
      for (std::size_t y1 = 0; y1 < t.ny1; ++y1)
        for (std::size_t y2 = 0; y2 < t.ny2; ++y2)
          for (std::size_t z = 0; z < t.nz; ++z) {
            const double v = t.p(x1, x2, y1, y2, z);
            if (!std::isfinite(v)) {
              d.ok = false;
              d.issues.push_back(slice_issue(x1, x2, "non-finite entry", v));
              sum = 1.0;
              goto next_slice;
            }
            if (v < -kZeroClamp) {
              d.ok = false;
              d.issues.push_back(slice_issue(x1, x2, "negative entry", v));
              sum = 1.0;
              goto next_slice;
            }
            sum += v;
          }
      if (std::fabs(sum - 1.0) > kProbTol) {
        d.ok = false;
        d.issues.push_back(slice_issue(x1, x2, "conditional law does not sum to 1", sum));
      }
    next_slice:;
    }
  return d;
}

JointInputLaw::JointInputLaw(Pmf pV1_, CondPmf pX1gV1_, Pmf pV2_, CondPmf pX2gV2_)
    : pV1(std::move(pV1_)),
      pX1gV1(std::move(pX1gV1_)),
      pV2(std::move(pV2_)),
      pX2gV2(std::move(pX2gV2_)) {
  if (pX1gV1.n_in() != pV1.size() || pX2gV2.n_in() != pV2.size())
    throw ValidationError("input law: conditional rows must match the V alphabet");
}

JointInputLaw JointInputLaw::identity_uniform(std::size_t nx1, std::size_t nx2) {
  return JointInputLaw(Pmf::uniform(nx1), CondPmf::identity(nx1), Pmf::uniform(nx2),
                       CondPmf::identity(nx2));
}

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

AdditiveChannelSpec::AdditiveChannelSpec(std::uint32_t q_, std::uint32_t a1_, std::uint32_t b1_,
                                         std::uint32_t a2_, std::uint32_t b2_, std::uint32_t a3_,
                                         std::uint32_t b3_, Pmf n1, Pmf n2, Pmf n3)
    : q(q_),
      a1(a1_),
      b1(b1_),
      a2(a2_),
      b2(b2_),
      a3(a3_),
      b3(b3_),
      noise1(std::move(n1)),
      noise2(std::move(n2)),
      noise3(std::move(n3)) {
  if (!is_prime(q)) throw ValidationError("additive channel: modulus must be prime");
  for (std::uint32_t c : {a1, b1, a2, b2, a3, b3})
    if (c == 0 || c >= q)
      throw ValidationError("additive channel: coefficients must lie in {1,...,q-1}");
  if (noise1.size() != q || noise2.size() != q || noise3.size() != q)
    throw ValidationError("additive channel: noise laws must live on Z_q");
}

ChannelTensor additive_to_tensor(const AdditiveChannelSpec& spec) {
  const std::size_t q = spec.q;
  const std::size_t total = q * q * q * q * q;
  if (total > kTensorEntryCap) throw SizingError("additive channel: q^5 exceeds the tensor cap");
  Vec probs(total, 0.0);
  std::size_t idx = 0;
  for (std::size_t x1 = 0; x1 < q; ++x1)
    for (std::size_t x2 = 0; x2 < q; ++x2) {
      const std::size_t m1 = (spec.a1 * x1 + spec.b1 * x2) % q;
      const std::size_t m2 = (spec.a2 * x1 + spec.b2 * x2) % q;
      const std::size_t m3 = (spec.a3 * x1 + spec.b3 * x2) % q;
      for (std::size_t y1 = 0; y1 < q; ++y1) {
        const double p1 = spec.noise1[(y1 + q - m1) % q];
        for (std::size_t y2 = 0; y2 < q; ++y2) {
          const double p12 = p1 * spec.noise2[(y2 + q - m2) % q];
          for (std::size_t z = 0; z < q; ++z)
            probs[idx++] = p12 * spec.noise3[(z + q - m3) % q];
        }
      }
    }
  return ChannelTensor(q, q, q, q, q, std::move(probs));
}

GaussianChannelSpec::GaussianChannelSpec(double a1_, double b1_, double a2_, double b2_,
                                         double a3_, double b3_, double v1_, double v2_,
                                         double v3_)
    : a1(a1_), b1(b1_), a2(a2_), b2(b2_), a3(a3_), b3(b3_), v1(v1_), v2(v2_), v3(v3_) {
  for (double c : {a1, b1, a2, b2, a3, b3})
    if (!std::isfinite(c)) throw ValidationError("gaussian channel: coefficients must be finite");
  for (double v : {v1, v2, v3})
    if (!(v > 0.0) || !std::isfinite(v))
      throw ValidationError("gaussian channel: noise variances must be positive");
}

std::pair<double, double> average_cost(const JointInputLaw& law, const CostSpec& cost) {
  const Pmf px1 = law.x1_marginal();
  const Pmf px2 = law.x2_marginal();
  if (cost.g1.size() != px1.size() || cost.g2.size() != px2.size())
    throw ValidationError("cost: per-letter cost vectors must match the input alphabets");
  double c1 = 0.0, c2 = 0.0;
  for (std::size_t x = 0; x < px1.size(); ++x) c1 += px1[x] * cost.g1[x];
  for (std::size_t x = 0; x < px2.size(); ++x) c2 += px2[x] * cost.g2[x];
  return {c1, c2};
}

NdTensor compose_effective(const ChannelTensor& t, const JointInputLaw& law) {
  if (law.pX1gV1.n_out() != t.nx1 || law.pX2gV2.n_out() != t.nx2)
    throw ValidationError("input law: X alphabets must match the channel");
  const std::size_t nv1 = law.pV1.size(), nv2 = law.pV2.size();
  const std::size_t total = nv1 * nv2 * t.nx1 * t.nx2 * t.ny1 * t.ny2 * t.nz;
  if (total > kTensorEntryCap)
    throw SizingError("effective joint law exceeds the tensor cap");
  NdTensor out;
  out.dims = {nv1, nv2, t.nx1, t.nx2, t.ny1, t.ny2, t.nz};
  out.data.assign(total, 0.0);
  std::size_t idx = 0;
  for (std::size_t v1 = 0; v1 < nv1; ++v1)
    for (std::size_t v2 = 0; v2 < nv2; ++v2) {
      const double pv = law.pV1[v1] * law.pV2[v2];
      for (std::size_t x1 = 0; x1 < t.nx1; ++x1)
        for (std::size_t x2 = 0; x2 < t.nx2; ++x2) {
          const double px = pv * law.pX1gV1.at(v1, x1) * law.pX2gV2.at(v2, x2);
          for (std::size_t y1 = 0; y1 < t.ny1; ++y1)
            for (std::size_t y2 = 0; y2 < t.ny2; ++y2)
              for (std::size_t z = 0; z < t.nz; ++z)
                out.data[idx++] = px * t.p(x1, x2, y1, y2, z);
        }
    }
  return out;
}

double shannon_mi_tensor(const NdTensor& ab) { return shannon_mi(ab.as_joint2()); }

double shannon_cmi_tensor(const NdTensor& abc) {
  if (abc.dims.size() != 3) throw ValidationError("shannon_cmi_tensor: rank must be 3");
  const std::size_t na = abc.dims[0], nb = abc.dims[1], nc = abc.dims[2];
  double mi = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    double pc = 0.0;
    Vec joint(na * nb, 0.0);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        const double v = abc.data[(a * nb + b) * nc + c];
        joint[a * nb + b] = v;
        pc += v;
      }
    if (pc <= 0.0) continue;
    for (double& v : joint) v /= pc;
    mi += pc * shannon_mi(JointPmf(na, nb, std::move(joint)));
  }
  return mi;
}

ShannonInfo shannon_info(const NdTensor& joint) {
  if (joint.dims.size() != 7) throw ValidationError("shannon_info: expected the 7-axis joint");
  ShannonInfo info{};
  info.iy2_v1_g_x2 = shannon_cmi_tensor(joint.marginal({AxV1, AxY2, AxX2}));
  info.iy1_v2_g_x1 = shannon_cmi_tensor(joint.marginal({AxV2, AxY1, AxX1}));
  info.iz_v1 = shannon_mi_tensor(joint.marginal({AxZ, AxV1}));
  info.iz_v2 = shannon_mi_tensor(joint.marginal({AxZ, AxV2}));
  // (V1,V2) flattened row-major is the composite first axis.
  NdTensor v12z = joint.marginal({AxV1, AxV2, AxZ});
  info.iz_v12 = shannon_mi(JointPmf(v12z.dims[0] * v12z.dims[1], v12z.dims[2], v12z.data));
  return info;
}

}  // namespace twwc
