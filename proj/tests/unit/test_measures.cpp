#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "twwc/errors.hpp"
#include "twwc/measures.hpp"
#include "twwc/pmf.hpp"
#include "twwc/rng.hpp"

using namespace twwc;

namespace {

CondPmf random_channel(CounterRng& rng, std::size_t na, std::size_t nb, double floor = 0.02) {
  Vec flat(na * nb);
  for (double& v : flat) v = floor + rng.next_double();
  for (std::size_t a = 0; a < na; ++a) {
    double s = 0.0;
    for (std::size_t b = 0; b < nb; ++b) s += flat[a * nb + b];
    for (std::size_t b = 0; b < nb; ++b) flat[a * nb + b] /= s;
  }
  return CondPmf(na, nb, flat);
}

Pmf random_pmf(CounterRng& rng, std::size_t n, double floor = 0.05) {
  Vec w(n);
  double s = 0.0;
  for (double& v : w) {
    v = floor + rng.next_double();
    s += v;
  }
  for (double& v : w) v /= s;
  return Pmf(w);
}

JointPmf random_joint(CounterRng& rng, std::size_t na, std::size_t nb) {
  Vec flat(na * nb);
  double s = 0.0;
  for (double& v : flat) {
    v = 0.01 + rng.next_double();
    s += v;
  }
  for (double& v : flat) v /= s;
  return JointPmf(na, nb, flat);
}

}  // namespace

TEST_CASE("log_sum_exp handles empty input and large shifts") {
  CHECK(std::isinf(log_sum_exp({})));
  CHECK(log_sum_exp({}) < 0.0);
  CHECK(log_sum_exp({std::log(2.0), std::log(3.0)}) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(log_sum_exp({1000.0, 1000.0}) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-14));
  CHECK(log_sum_exp({-1000.0}) == doctest::Approx(-1000.0));
}

TEST_CASE("shannon_entropy closed forms") {
  CHECK(shannon_entropy(Pmf({0.25, 0.25, 0.25, 0.25})) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(shannon_entropy(Pmf({1.0, 0.0})) == 0.0);
  const double h = -0.25 * std::log(0.25) - 0.75 * std::log(0.75);
  CHECK(shannon_entropy(Pmf({0.25, 0.75})) == doctest::Approx(h).epsilon(1e-14));
}

TEST_CASE("renyi_entropy closed forms and limit toward order one") {
  CHECK(renyi_entropy(Pmf({1.0 / 3, 1.0 / 3, 1.0 / 3}), 2.0) == doctest::Approx(std::log(3.0)).epsilon(1e-13));
  const double h_half = 2.0 * std::log(std::sqrt(0.25) + std::sqrt(0.75));
  CHECK(renyi_entropy(Pmf({0.25, 0.75}), 0.5) == doctest::Approx(h_half).epsilon(1e-13));
  const Pmf p({0.1, 0.2, 0.3, 0.4});
  CHECK(renyi_entropy(p, 1.0 + 1e-6) == doctest::Approx(shannon_entropy(p)).epsilon(1e-5));
  CHECK_THROWS_AS(renyi_entropy(p, 1.0), ValidationError);
  CHECK_THROWS_AS(renyi_entropy(p, 0.0), ValidationError);
  CHECK_THROWS_AS(renyi_entropy(p, -0.5), ValidationError);
}

TEST_CASE("kl_divergence support and hand values") {
  const Pmf p({0.5, 0.5});
  const Pmf q({0.25, 0.75});
  CHECK(kl_divergence(p, p) == 0.0);
  const double d = 0.5 * std::log(0.5 / 0.25) + 0.5 * std::log(0.5 / 0.75);
  CHECK(kl_divergence(p, q) == doctest::Approx(d).epsilon(1e-14));
  CHECK(kl_divergence(p, q) != doctest::Approx(kl_divergence(q, p)).epsilon(1e-6));
  CHECK(std::isinf(kl_divergence(p, Pmf({1.0, 0.0}))));
  CHECK(kl_divergence(Pmf({1.0, 0.0}), p) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("renyi_relative_entropy orders, support flag, and order limit") {
  const Pmf p({0.5, 0.5});
  const Pmf q({0.25, 0.75});
  CHECK(renyi_relative_entropy(p, q, 2.0) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-13));
  const double d_half = -2.0 * std::log(std::sqrt(0.5 * 0.25) + std::sqrt(0.5 * 0.75));
  CHECK(renyi_relative_entropy(p, q, 0.5) == doctest::Approx(d_half).epsilon(1e-13));
  CHECK(renyi_relative_entropy(p, q, 1.0 + 1e-6) == doctest::Approx(kl_divergence(p, q)).epsilon(1e-5));

  bool viol = false;
  CHECK(std::isinf(renyi_relative_entropy(p, Pmf({1.0, 0.0}), 2.0, &viol)));
  CHECK(viol);
  // below order one a missing q-atom only drops the term
  viol = true;
  const double v = renyi_relative_entropy(p, Pmf({1.0, 0.0}), 0.5, &viol);
  CHECK_FALSE(viol);
  CHECK(v == doctest::Approx(-2.0 * std::log(std::sqrt(0.5))).epsilon(1e-13));
  // disjoint supports blow up at every order
  CHECK(std::isinf(renyi_relative_entropy(Pmf({1.0, 0.0}), Pmf({0.0, 1.0}), 0.5, &viol)));
  CHECK(viol);

  // nondecreasing in the order
  CounterRng rng(11, 0);
  for (int i = 0; i < 20; ++i) {
    const Pmf a = random_pmf(rng, 4, 0.01);
    const Pmf b = random_pmf(rng, 4, 0.01);
    double prev = 0.0;
    for (double order : {0.3, 0.6, 0.9, 1.2, 2.0, 4.0}) {
      const double cur = renyi_relative_entropy(a, b, order);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("shannon_mi product and perfectly correlated laws") {
  CHECK(shannon_mi(product_joint(Pmf({0.3, 0.7}), Pmf({0.2, 0.8}))) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(shannon_mi(JointPmf(2, 2, {0.5, 0.0, 0.0, 0.5})) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("mi_down equals ln 2 at every order for the correlated uniform bit") {
  const JointPmf j(2, 2, {0.5, 0.0, 0.0, 0.5});
  for (double s : {0.0, 0.1, 0.5, 0.9, 1.0})
    CHECK(mi_down(j, s) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK_THROWS_AS(mi_down(j, -0.1), ValidationError);
  CHECK_THROWS_AS(mi_down(j, 1.1), ValidationError);
}

TEST_CASE("mi_down is nondecreasing in s and matches Shannon at s = 0") {
  CounterRng rng(12, 0);
  for (int i = 0; i < 20; ++i) {
    const JointPmf j = random_joint(rng, 3, 4);
    CHECK(mi_down(j, 0.0) == doctest::Approx(shannon_mi(j)).epsilon(1e-13));
    double prev = -1.0;
    for (double s : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
      const double cur = mi_down(j, s);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("mi_up closed forms on identity and constant channels") {
  for (std::size_t n : {2u, 3u, 5u}) {
    Vec flat(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) flat[a * n + a] = 1.0;
    const CondPmf ident(n, n, flat);
    const Pmf u(Vec(n, 1.0 / n));
    for (double s : {0.1, 0.5, 0.9}) {
      CHECK(mi_up(ident, u, s, UpOrder::OneOverOnePlusS) == doctest::Approx(std::log(double(n))).epsilon(1e-12));
      CHECK(mi_up(ident, u, s, UpOrder::OneOverOneMinusS) == doctest::Approx(std::log(double(n))).epsilon(1e-12));
    }
  }
  // output independent of the input
  const CondPmf constant(2, 2, {0.3, 0.7, 0.3, 0.7});
  const Pmf in({0.6, 0.4});
  for (double s : {0.1, 0.5, 0.9}) {
    CHECK(mi_up(constant, in, s, UpOrder::OneOverOnePlusS) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(mi_up(constant, in, s, UpOrder::OneOverOneMinusS) == doctest::Approx(0.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(mi_up(constant, in, 1.0, UpOrder::OneOverOneMinusS), ValidationError);
  CHECK(mi_up(constant, in, 1.0, UpOrder::OneOverOnePlusS) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("mi_up matches a direct evaluation of its closed form") {
  CounterRng rng(13, 0);
  const CondPmf chan = random_channel(rng, 3, 4);
  const Pmf in = random_pmf(rng, 3);
  for (double s : {0.25, 0.75}) {
    double total_minus = 0.0, total_plus = 0.0;
    for (std::size_t b = 0; b < 4; ++b) {
      double im = 0.0, ip = 0.0;
      for (std::size_t a = 0; a < 3; ++a) {
        im += in[a] * std::pow(chan.at(a, b), 1.0 / (1.0 + s));
        ip += in[a] * std::pow(chan.at(a, b), 1.0 / (1.0 - s));
      }
      total_minus += std::pow(im, 1.0 + s);
      total_plus += std::pow(ip, 1.0 - s);
    }
    CHECK(mi_up(chan, in, s, UpOrder::OneOverOnePlusS) == doctest::Approx(-std::log(total_minus) / s).epsilon(1e-13));
    CHECK(mi_up(chan, in, s, UpOrder::OneOverOneMinusS) == doctest::Approx(std::log(total_plus) / s).epsilon(1e-13));
  }
}

TEST_CASE("sibson order sandwich around the Shannon value") {
  CounterRng rng(14, 0);
  for (int i = 0; i < 10; ++i) {
    const CondPmf chan = random_channel(rng, 3, 3);
    const Pmf in = random_pmf(rng, 3);
    const double mi = shannon_mi(chain_joint(in, chan));
    for (double s : {0.2, 0.6}) {
      CHECK(mi_up(chan, in, s, UpOrder::OneOverOnePlusS) <= mi + 1e-12);
      CHECK(mi_up(chan, in, s, UpOrder::OneOverOneMinusS) >= mi - 1e-12);
    }
  }
}

TEST_CASE("divergence mutual information never exceeds the larger-order sibson form") {
  CounterRng rng(15, 0);
  for (int i = 0; i < 25; ++i) {
    const JointPmf j = random_joint(rng, 3, 4);
    const Pmf pa = j.marginal_a();
    Vec flat(3 * 4);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 4; ++b) flat[a * 4 + b] = j.at(a, b) / pa[a];
    const CondPmf chan(3, 4, flat);
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9})
      CHECK(mi_down(j, s) <= mi_up(chan, pa, s, UpOrder::OneOverOneMinusS) + 1e-11);
  }
}

TEST_CASE("renyi quantities approach Shannon as s vanishes") {
  CounterRng rng(16, 0);
  const CondPmf chan = random_channel(rng, 3, 3);
  const Pmf in = random_pmf(rng, 3);
  const JointPmf j = chain_joint(in, chan);
  const double mi = shannon_mi(j);
  const double s = 1e-4;
  CHECK(std::fabs(mi_down(j, s) - mi) < 1e-3);
  CHECK(std::fabs(mi_up(chan, in, s, UpOrder::OneOverOnePlusS) - mi) < 1e-3);
  CHECK(std::fabs(mi_up(chan, in, s, UpOrder::OneOverOneMinusS) - mi) < 1e-3);
  CHECK(std::fabs(breve_mi(chan, in, 1.0 - s) - mi) < 1e-3);
  CHECK(std::fabs(breve_mi(chan, in, 1.0 + s) - mi) < 1e-3);
}

TEST_CASE("two-fold products double every information measure") {
  CounterRng rng(17, 0);
  const std::size_t na = 2, nb = 3;
  const CondPmf chan = random_channel(rng, na, nb);
  const Pmf in = random_pmf(rng, na);

  Vec flat2(na * na * nb * nb);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t a2 = 0; a2 < na; ++a2)
      for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t b2 = 0; b2 < nb; ++b2)
          flat2[(a * na + a2) * nb * nb + b * nb + b2] = chan.at(a, b) * chan.at(a2, b2);
  const CondPmf chan2(na * na, nb * nb, flat2);
  const Pmf in2 = product_joint(in, in).as_pmf();

  const JointPmf j1 = chain_joint(in, chan);
  const JointPmf j2 = chain_joint(in2, chan2);
  for (double s : {0.2, 0.5, 0.8}) {
    CHECK(mi_up(chan2, in2, s, UpOrder::OneOverOnePlusS) ==
          doctest::Approx(2.0 * mi_up(chan, in, s, UpOrder::OneOverOnePlusS)).epsilon(1e-11));
    CHECK(mi_up(chan2, in2, s, UpOrder::OneOverOneMinusS) ==
          doctest::Approx(2.0 * mi_up(chan, in, s, UpOrder::OneOverOneMinusS)).epsilon(1e-11));
    CHECK(mi_down(j2, s) == doctest::Approx(2.0 * mi_down(j1, s)).epsilon(1e-11));
  }
}

TEST_CASE("mi_up_conditional reduces to mi_up and to the Shannon conditional MI") {
  CounterRng rng(18, 0);
  const std::size_t na = 3, nc = 2, nb = 3;
  const CondPmf chan = random_channel(rng, na * nc, nb);
  const Pmf pa = random_pmf(rng, na);
  const Pmf pc = random_pmf(rng, nc);
  const JointPmf inputs = product_joint(pa, pc);

  // degenerate conditioning letter
  const CondPmf sub = random_channel(rng, na, nb);
  CHECK(mi_up_conditional(sub, product_joint(pa, Pmf({1.0})), 0.4) ==
        doctest::Approx(mi_up(sub, pa, 0.4, UpOrder::OneOverOnePlusS)).epsilon(1e-12));

  // joint-output identity under independent inputs
  Vec jflat(na * nb * nc);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t b = 0; b < nb; ++b)
        jflat[a * (nb * nc) + b * nc + c] = pc[c] * chan.at(a * nc + c, b);
  const CondPmf joint_out(na, nb * nc, jflat);
  for (double s : {0.2, 0.7})
    CHECK(mi_up_conditional(chan, inputs, s) ==
          doctest::Approx(mi_up(joint_out, pa, s, UpOrder::OneOverOnePlusS)).epsilon(1e-12));

  // s = 0 averages the per-letter Shannon informations
  double cmi = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    Vec sl(na * nb);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) sl[a * nb + b] = pa[a] * chan.at(a * nc + c, b);
    cmi += pc[c] * shannon_mi(JointPmf(na, nb, sl));
  }
  CHECK(mi_up_conditional(chan, inputs, 0.0) == doctest::Approx(cmi).epsilon(1e-12));
}

TEST_CASE("breve_mi equals input entropy on the identity channel") {
  Vec flat(9, 0.0);
  for (std::size_t a = 0; a < 3; ++a) flat[a * 3 + a] = 1.0;
  const CondPmf ident(3, 3, flat);
  const Pmf w({0.5, 0.3, 0.2});
  for (double order : {0.5, 0.8, 1.25, 2.0})
    CHECK(breve_mi(ident, w, order) == doctest::Approx(shannon_entropy(w)).epsilon(1e-7));
}

TEST_CASE("breve_mi matches the symmetric-channel closed form") {
  // uniformly weighted symmetric binary channel: value = ln 2 - H_order(flip)
  for (double p : {0.1, 0.3}) {
    const CondPmf bsc(2, 2, {1.0 - p, p, p, 1.0 - p});
    const Pmf u({0.5, 0.5});
    for (double order : {0.5, 1.25, 2.0}) {
      const double h = std::log(std::pow(p, order) + std::pow(1.0 - p, order)) / (1.0 - order);
      CHECK(breve_mi(bsc, u, order) == doctest::Approx(std::log(2.0) - h).epsilon(1e-7));
    }
  }
}

TEST_CASE("breve_mi agrees with direct simplex minimization") {
  CounterRng rng(19, 0);
  for (int inst = 0; inst < 8; ++inst) {
    const std::size_t d = inst < 4 ? 2 : 3;
    const CondPmf chan = random_channel(rng, d, d);
    const Pmf in = random_pmf(rng, d);
    for (double order : {0.5, 0.8, 1.25, 2.0}) {
      BreveDiag diag{};
      const double v = breve_mi(chan, in, order, &diag);
      CHECK(diag.converged);
      CHECK(diag.gap_bound <= 1e-8);
      const double ref = d == 2 ? oracles::breve_grid_2(chan, in.probs(), order)
                                : oracles::breve_grid_3(chan, in.probs(), order);
      CHECK(std::fabs(v - ref) <= 1e-6);
    }
  }
  CHECK_THROWS_AS(breve_mi(random_channel(rng, 2, 2), random_pmf(rng, 2), 1.0), ValidationError);
  CHECK_THROWS_AS(breve_mi(random_channel(rng, 2, 2), random_pmf(rng, 2), 0.0), ValidationError);
}

TEST_CASE("breve_mi_conditional tilts per-letter values") {
  CounterRng rng(20, 0);
  const std::size_t na = 2, nc = 2, nb = 3;
  const Pmf pa = random_pmf(rng, na);
  const Pmf pc = random_pmf(rng, nc);

  // identical slices collapse to the unconditional value for either tilt sign
  const CondPmf slice = random_channel(rng, na, nb);
  Vec rep(na * nc * nb);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t b = 0; b < nb; ++b) rep[(a * nc + c) * nb + b] = slice.at(a, b);
  const CondPmf repeated(na * nc, nb, rep);
  for (double order : {0.5, 2.0})
    CHECK(breve_mi_conditional(repeated, pa, pc, order) ==
          doctest::Approx(breve_mi(slice, pa, order)).epsilon(1e-9));

  // distinct slices combine through the signed exponential average
  const CondPmf chan = random_channel(rng, na * nc, nb);
  for (double order : {0.5, 2.0}) {
    const double s = std::fabs(1.0 - order) / order;
    const double sign = order < 1.0 ? -1.0 : 1.0;
    double acc = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
      Vec rows(na * nb);
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) rows[a * nb + b] = chan.at(a * nc + c, b);
      acc += pc[c] * std::exp(sign * s * breve_mi(CondPmf(na, nb, rows), pa, order));
    }
    CHECK(breve_mi_conditional(chan, pa, pc, order) ==
          doctest::Approx(sign * std::log(acc) / s).epsilon(1e-9));
  }
}
