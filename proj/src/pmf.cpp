#include "twwc/pmf.hpp"

#include <cmath>
#include <string>

#include "twwc/errors.hpp"

namespace twwc {

namespace {

void clamp_and_check(Vec& p, const char* what) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double& v = p[i];
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + ": non-finite entry");
    if (v < 0.0) {
      if (v < -kZeroClamp)
        throw ValidationError(std::string(what) + ": negative entry at index " + std::to_string(i));
      v = 0.0;
    }
    if (v < kZeroClamp) v = 0.0;
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kProbTol)
    throw ValidationError(std::string(what) + ": entries sum to " + std::to_string(sum) +
                          ", expected 1 within 1e-9");
}

}  // namespace

Pmf::Pmf(Vec probs) : p_(std::move(probs)) {
  if (p_.empty()) throw ValidationError("Pmf: empty alphabet");
  clamp_and_check(p_, "Pmf");
}

Pmf Pmf::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("Pmf: empty alphabet");
  return Pmf(Vec(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::point_mass(std::size_t n, std::size_t at) {
  if (at >= n) throw ValidationError("Pmf: point mass outside alphabet");
  Vec v(n, 0.0);
  v[at] = 1.0;
  return Pmf(std::move(v));
}

CondPmf::CondPmf(std::size_t n_in, std::size_t n_out, Vec flat)
    : n_in_(n_in), n_out_(n_out), p_(std::move(flat)) {
  if (n_in_ == 0 || n_out_ == 0) throw ValidationError("CondPmf: empty alphabet");
  if (p_.size() != n_in_ * n_out_) throw ValidationError("CondPmf: shape mismatch");
  for (std::size_t r = 0; r < n_in_; ++r) {
    Vec row(p_.begin() + r * n_out_, p_.begin() + (r + 1) * n_out_);
    clamp_and_check(row, "CondPmf row");
    std::copy(row.begin(), row.end(), p_.begin() + r * n_out_);
  }
}

CondPmf CondPmf::identity(std::size_t n) {
  Vec flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) flat[i * n + i] = 1.0;
  return CondPmf(n, n, std::move(flat));
}

Pmf CondPmf::row(std::size_t in) const {
  return Pmf(Vec(p_.begin() + in * n_out_, p_.begin() + (in + 1) * n_out_));
}

JointPmf::JointPmf(std::size_t na_, std::size_t nb_, Vec probs)
    : na(na_), nb(nb_), p(std::move(probs)) {
  if (na == 0 || nb == 0) throw ValidationError("JointPmf: empty alphabet");
  if (p.size() != na * nb) throw ValidationError("JointPmf: shape mismatch");
  clamp_and_check(p, "JointPmf");
}

Pmf JointPmf::marginal_a() const {
  Vec m(na, 0.0);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b) m[a] += p[a * nb + b];
  return Pmf(std::move(m));
}

Pmf JointPmf::marginal_b() const {
  Vec m(nb, 0.0);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b) m[b] += p[a * nb + b];
  return Pmf(std::move(m));
}

JointPmf product_joint(const Pmf& pa, const Pmf& pb) {
  Vec p(pa.size() * pb.size());
  for (std::size_t a = 0; a < pa.size(); ++a)
    for (std::size_t b = 0; b < pb.size(); ++b) p[a * pb.size() + b] = pa[a] * pb[b];
  return JointPmf(pa.size(), pb.size(), std::move(p));
}

JointPmf chain_joint(const Pmf& pa, const CondPmf& pb_given_a) {
  if (pb_given_a.n_in() != pa.size()) throw ValidationError("chain_joint: shape mismatch");
  const std::size_t nb = pb_given_a.n_out();
  Vec p(pa.size() * nb);
  for (std::size_t a = 0; a < pa.size(); ++a)
    for (std::size_t b = 0; b < nb; ++b) p[a * nb + b] = pa[a] * pb_given_a.at(a, b);
  return JointPmf(pa.size(), nb, std::move(p));
}

Pmf push_forward(const Pmf& pv, const CondPmf& px_given_v) {
  if (px_given_v.n_in() != pv.size()) throw ValidationError("push_forward: shape mismatch");
  Vec m(px_given_v.n_out(), 0.0);
  for (std::size_t v = 0; v < pv.size(); ++v)
    for (std::size_t x = 0; x < px_given_v.n_out(); ++x) m[x] += pv[v] * px_given_v.at(v, x);
  return Pmf(std::move(m));
}

double total_variation(const Pmf& a, const Pmf& b) {
  if (a.size() != b.size()) throw ValidationError("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace twwc
