#include "twwc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twwc/errors.hpp"

namespace twwc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Optimality-gap certificate required from the Augustin minimization.
constexpr double kBreveCertTol = 1e-8;
constexpr double kBreveStepTol = 1e-12;
constexpr int kBreveMaxIter = 10000;

}  // namespace

double log_sum_exp(const Vec& terms) {
  double m = -kInf;
  for (double t : terms) m = std::max(m, t);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

double shannon_entropy(const Pmf& p) {
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  return h;
}

double renyi_entropy(const Pmf& p, double order) {
  if (!(order > 0.0) || order == 1.0)
    throw ValidationError("renyi_entropy: order must be positive and != 1");
  Vec terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) terms.push_back(order * std::log(p[i]));
  return log_sum_exp(terms) / (1.0 - order);
}

double kl_divergence(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) throw ValidationError("kl_divergence: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInf;
    d += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(0.0, d);
}

double renyi_relative_entropy(const Pmf& p, const Pmf& q, double order,
                              bool* support_violation) {
  if (p.size() != q.size()) throw ValidationError("renyi_relative_entropy: size mismatch");
  if (!(order > 0.0) || order == 1.0)
    throw ValidationError("renyi_relative_entropy: order must be positive and != 1");
  if (support_violation) *support_violation = false;
  Vec terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      if (order > 1.0) {
        if (support_violation) *support_violation = true;
        return kInf;
      }
      continue;  // order < 1: q^{1-order} = 0 kills the term
    }
    terms.push_back(order * std::log(p[i]) + (1.0 - order) * std::log(q[i]));
  }
  if (terms.empty()) {
    if (support_violation) *support_violation = true;
    return kInf;
  }
  double v = log_sum_exp(terms) / (order - 1.0);
  return std::max(0.0, v);
}

double shannon_mi(const JointPmf& joint) {
  const Pmf pa = joint.marginal_a();
  const Pmf pb = joint.marginal_b();
  double mi = 0.0;
  for (std::size_t a = 0; a < joint.na; ++a)
    for (std::size_t b = 0; b < joint.nb; ++b) {
      const double pab = joint.at(a, b);
      if (pab > 0.0) mi += pab * std::log(pab / (pa[a] * pb[b]));
    }
  return std::max(0.0, mi);
}

double mi_down(const JointPmf& joint, double s) {
  if (s < 0.0 || s > 1.0) throw ValidationError("mi_down: s must lie in [0,1]");
  if (s == 0.0) return shannon_mi(joint);
  const Pmf pa = joint.marginal_a();
  const Pmf pb = joint.marginal_b();
  Vec terms;
  terms.reserve(joint.p.size());
  for (std::size_t a = 0; a < joint.na; ++a)
    for (std::size_t b = 0; b < joint.nb; ++b) {
      const double pab = joint.at(a, b);
      if (pab <= 0.0) continue;
      terms.push_back((1.0 + s) * std::log(pab) - s * std::log(pa[a] * pb[b]));
    }
  return std::max(0.0, log_sum_exp(terms) / s);
}

double mi_up(const CondPmf& chan, const Pmf& input, double s, UpOrder ord) {
  if (chan.n_in() != input.size()) throw ValidationError("mi_up: shape mismatch");
  if (s < 0.0 || s > 1.0) throw ValidationError("mi_up: s must lie in [0,1]");
  if (ord == UpOrder::OneOverOneMinusS && s >= 1.0)
    throw ValidationError("mi_up: order 1/(1-s) undefined at s = 1");
  if (s == 0.0) return shannon_mi(chain_joint(input, chan));
  const double alpha = ord == UpOrder::OneOverOnePlusS ? 1.0 / (1.0 + s) : 1.0 / (1.0 - s);
  const double outer = 1.0 / alpha;  // 1+s or 1-s
  double total = 0.0;
  for (std::size_t b = 0; b < chan.n_out(); ++b) {
    double inner = 0.0;
    for (std::size_t a = 0; a < input.size(); ++a) {
      const double c = chan.at(a, b);
      if (input[a] > 0.0 && c > 0.0) inner += input[a] * std::pow(c, alpha);
    }
    if (inner > 0.0) total += std::pow(inner, outer);
  }
  const double v = ord == UpOrder::OneOverOnePlusS ? -std::log(total) / s : std::log(total) / s;
  return std::max(0.0, v);
}

double mi_up_conditional(const CondPmf& chan, const JointPmf& inputs_ac, double s) {
  const std::size_t na = inputs_ac.na, nc = inputs_ac.nb, nb = chan.n_out();
  if (chan.n_in() != na * nc) throw ValidationError("mi_up_conditional: shape mismatch");
  if (s < 0.0 || s > 1.0) throw ValidationError("mi_up_conditional: s must lie in [0,1]");
  const Pmf pc = inputs_ac.marginal_b();
  if (s == 0.0) {
    // Shannon limit: I(B;A|C) = sum_c P(c) I(B;A | C=c).
    double mi = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
      if (pc[c] <= 0.0) continue;
      Vec joint(na * nb, 0.0);
      for (std::size_t a = 0; a < na; ++a) {
        const double pa_c = inputs_ac.at(a, c) / pc[c];
        for (std::size_t b = 0; b < nb; ++b) joint[a * nb + b] = pa_c * chan.at(a * nc + c, b);
      }
      mi += pc[c] * shannon_mi(JointPmf(na, nb, std::move(joint)));
    }
    return mi;
  }
  const double alpha = 1.0 / (1.0 + s);
  double total = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    if (pc[c] <= 0.0) continue;
    double per_c = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      double inner = 0.0;
      for (std::size_t a = 0; a < na; ++a) {
        const double w = inputs_ac.at(a, c) / pc[c];
        const double ch = chan.at(a * nc + c, b);
        if (w > 0.0 && ch > 0.0) inner += w * std::pow(ch, alpha);
      }
      if (inner > 0.0) per_c += std::pow(inner, 1.0 + s);
    }
    total += pc[c] * per_c;
  }
  return std::max(0.0, -std::log(total) / s);
}

namespace {

// One Augustin fixed-point update. Returns T(Q) (normalized) and fills
// log_S[a] = ln sum_b P_a(b)^alpha Q(b)^{1-alpha} for objective evaluation.
Vec augustin_map(const CondPmf& chan, const Vec& w, const Vec& q, double alpha, Vec& log_S) {
  const std::size_t na = chan.n_in(), nb = chan.n_out();
  Vec t(nb, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    if (w[a] <= 0.0) {
      log_S[a] = 0.0;
      continue;
    }
    Vec terms;
    terms.reserve(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const double p = chan.at(a, b);
      if (p > 0.0 && q[b] > 0.0)
        terms.push_back(alpha * std::log(p) + (1.0 - alpha) * std::log(q[b]));
    }
    log_S[a] = log_sum_exp(terms);
    for (std::size_t b = 0; b < nb; ++b) {
      const double p = chan.at(a, b);
      if (p > 0.0 && q[b] > 0.0)
        t[b] += w[a] * std::exp(alpha * std::log(p) + (1.0 - alpha) * std::log(q[b]) - log_S[a]);
    }
  }
  double sum = 0.0;
  for (double v : t) sum += v;
  if (sum > 0.0)
    for (double& v : t) v /= sum;
  return t;
}

double augustin_objective(const Vec& w, const Vec& log_S, double alpha) {
  double f = 0.0;
  for (std::size_t a = 0; a < w.size(); ++a)
    if (w[a] > 0.0) f += w[a] * log_S[a];
  return f / (alpha - 1.0);
}

}  // namespace

double breve_mi(const CondPmf& chan, const Pmf& input, double order, BreveDiag* diag) {
  if (chan.n_in() != input.size()) throw ValidationError("breve_mi: shape mismatch");
  if (!(order > 0.0) || order == 1.0)
    throw ValidationError("breve_mi: order must be positive and != 1");
  const std::size_t na = chan.n_in(), nb = chan.n_out();
  const Vec& w = input.probs();

  // Start at the output marginal, which has full support on every symbol any
  // supported row can reach.
  Vec q(nb, 0.0);
  for (std::size_t a = 0; a < na; ++a)
    if (w[a] > 0.0)
      for (std::size_t b = 0; b < nb; ++b) q[b] += w[a] * chan.at(a, b);

  Vec log_S(na, 0.0);
  Vec t = augustin_map(chan, w, q, order, log_S);
  double f = augustin_objective(w, log_S, order);
  double tv = 0.0;
  double gap = 0.0;
  int iter = 0;
  for (; iter < kBreveMaxIter; ++iter) {
    // Convexity of D_order in Q gives the first-order optimality gap
    //   F(Q) - min F <= max_b T(Q)(b)/Q(b) - 1,
    // using that T(Q) sums to one before normalization.
    gap = 0.0;
    for (std::size_t b = 0; b < nb; ++b)
      if (q[b] > 0.0) gap = std::max(gap, t[b] / q[b] - 1.0);
    if (gap <= 0.5 * kBreveCertTol) break;

    Vec candidate;
    if (order > 1.0) {
      // The plain map can oscillate above order one. The geometric damping
      // q <- t^{1/order} q^{1-1/order} is the exact minimizer of the
      // separable majorizer obtained by linearizing ln S_a, so every step
      // is monotone in the objective.
      candidate.assign(nb, 0.0);
      const double u = 1.0 / order;
      double sum = 0.0;
      for (std::size_t b = 0; b < nb; ++b)
        if (t[b] > 0.0 && q[b] > 0.0) {
          candidate[b] = std::exp(u * std::log(t[b]) + (1.0 - u) * std::log(q[b]));
          sum += candidate[b];
        }
      for (double& v : candidate) v /= sum;
    } else {
      candidate = t;
    }
    tv = 0.0;
    for (std::size_t b = 0; b < nb; ++b) tv += std::fabs(candidate[b] - q[b]);
    tv *= 0.5;
    q = candidate;
    t = augustin_map(chan, w, q, order, log_S);
    f = augustin_objective(w, log_S, order);
    if (tv < kBreveStepTol) break;
  }

  gap = 0.0;
  for (std::size_t b = 0; b < nb; ++b)
    if (q[b] > 0.0) gap = std::max(gap, t[b] / q[b] - 1.0);

  if (diag) {
    diag->iterations = iter + 1;
    diag->tv_step = tv;
    diag->gap_bound = gap;
    diag->converged = gap <= kBreveCertTol;
  }
  const double value = std::max(0.0, f);
  if (gap > kBreveCertTol)
    throw ConvergenceError("breve_mi: optimality gap not certified after iteration cap", value,
                           gap);
  return value;
}

double breve_mi_conditional(const CondPmf& chan, const Pmf& pa, const Pmf& pc, double order,
                            BreveDiag* diag) {
  const std::size_t na = pa.size(), nc = pc.size(), nb = chan.n_out();
  if (chan.n_in() != na * nc) throw ValidationError("breve_mi_conditional: shape mismatch");
  if (!(order > 0.0) || order == 1.0)
    throw ValidationError("breve_mi_conditional: order must be positive and != 1");
  const double s = std::fabs(1.0 - order) / order;
  const double sign = order < 1.0 ? -1.0 : 1.0;
  BreveDiag agg{};
  Vec terms;
  Vec weights;
  for (std::size_t c = 0; c < nc; ++c) {
    if (pc[c] <= 0.0) continue;
    Vec rows(na * nb);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) rows[a * nb + b] = chan.at(a * nc + c, b);
    BreveDiag sub{};
    const double inner = breve_mi(CondPmf(na, nb, std::move(rows)), pa, order, &sub);
    agg.iterations += sub.iterations;
    agg.tv_step = std::max(agg.tv_step, sub.tv_step);
    agg.gap_bound = std::max(agg.gap_bound, sub.gap_bound);
    terms.push_back(sign * s * inner);
    weights.push_back(pc[c]);
  }
  Vec shifted(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) shifted[i] = terms[i] + std::log(weights[i]);
  const double value = sign * log_sum_exp(shifted) / s;
  if (diag) {
    agg.converged = agg.gap_bound <= kBreveCertTol;
    *diag = agg;
  }
  return std::max(0.0, value);
}

}  // namespace twwc
