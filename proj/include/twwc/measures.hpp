#pragma once

#include "twwc/pmf.hpp"

namespace twwc {

// All quantities are in nats. Conventions: 0*ln 0 = 0 and 0^a = 0 throughout;
// probabilities below kZeroClamp count as exact zeros for support purposes.

double shannon_entropy(const Pmf& p);

// Order-a Renyi entropy, a > 0, a != 1: (1/(1-a)) ln sum p^a.
double renyi_entropy(const Pmf& p, double order);

double kl_divergence(const Pmf& p, const Pmf& q);

// Order-a Renyi relative entropy D_a(p||q) = (1/(a-1)) ln sum p^a q^{1-a},
// a > 0, a != 1. For a > 1, supp(p) not within supp(q) gives +infinity and
// sets *support_violation when provided.
double renyi_relative_entropy(const Pmf& p, const Pmf& q, double order,
                              bool* support_violation = nullptr);

// Shannon mutual information of a joint law.
double shannon_mi(const JointPmf& joint);

// The divergence-from-product Renyi mutual information of order 1+s:
// D_{1+s}(P_AB || P_A x P_B). s = 0 falls back to Shannon MI.
double mi_down(const JointPmf& joint, double s);

enum class UpOrder {
  OneOverOnePlusS,   // order 1/(1+s), the reliability-side quantity
  OneOverOneMinusS,  // order 1/(1-s), the secrecy-side quantity (s < 1)
};

// Sibson-type mutual information with the product-form closed expression.
// chan: rows P_{B|A=a}; input: P_A.
//   OneOverOnePlusS :  exp(-s I) = sum_b ( sum_a P(a) P(b|a)^{1/(1+s)} )^{1+s}
//   OneOverOneMinusS:  exp(+s I) = sum_b ( sum_a P(a) P(b|a)^{1/(1-s)} )^{1-s}
double mi_up(const CondPmf& chan, const Pmf& input, double s, UpOrder ord);

// Conditional Sibson quantity of order 1/(1+s) for a channel P_{B|A,C} with
// inputs P_{AC}. chan rows are (a,c) pairs, a-major: row index a*nc + c.
//   exp(-s I) = sum_c P(c) sum_b ( sum_a P(a|c) P(b|a,c)^{1/(1+s)} )^{1+s}
// When A and C are independent this equals mi_up of the joint output (B,C)
// against A. s = 0 falls back to Shannon I(B;A|C).
double mi_up_conditional(const CondPmf& chan, const JointPmf& inputs_ac, double s);

struct BreveDiag {
  int iterations = 0;
  double tv_step = 0.0;    // total-variation size of the last iterate step
  double gap_bound = 0.0;  // certified optimality gap of the returned value
  bool converged = false;
};

// Augustin-type information: min over output laws Q of
// sum_a P(a) D_order(P_{B|A=a} || Q), order > 0, order != 1.
// The returned value is within 1e-8 of the true minimum (certified via the
// fixed-point stationarity residual); throws ConvergenceError otherwise.
double breve_mi(const CondPmf& chan, const Pmf& input, double order,
                BreveDiag* diag = nullptr);

// Conditional Augustin quantity for P_{B|A,C} with independent inputs
// P_A x P_C (chan rows a-major as in mi_up_conditional). Per-c minima are
// combined by exponential averaging with tilt s = |1-order|/order, the sign
// of the tilt matching sign(order-1):
//   order < 1: value = -(1/s) ln sum_c P(c) exp(-s min_Q sum_a P(a) D(..))
//   order > 1: value = +(1/s) ln sum_c P(c) exp(+s min_Q sum_a P(a) D(..))
// With a single conditioning letter this reduces to breve_mi; in general it
// differs from breve_mi against the joint output (B,C).
double breve_mi_conditional(const CondPmf& chan, const Pmf& pa, const Pmf& pc,
                            double order, BreveDiag* diag = nullptr);

// log(sum(exp(terms))) with max shifting; empty input yields -infinity.
double log_sum_exp(const Vec& terms);

}  // namespace twwc
