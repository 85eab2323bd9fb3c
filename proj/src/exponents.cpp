#include "twwc/exponents.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "twwc/errors.hpp"
#include "twwc/measures.hpp"

namespace twwc {

std::vector<double> default_s_grid(int count, bool include_one) {
  if (count < 1) throw ValidationError("s grid: count must be >= 1");
  std::vector<double> g(count);
  const double den = include_one ? count : count + 1;
  for (int k = 1; k <= count; ++k) g[k - 1] = k / den;
  return g;
}

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kLn3 = 1.0986122886681098;

// Everything a bound row needs at one order parameter. log_nu / log_nup are
// the polynomial leakage / reliability factors (zero in the iid setting).
struct InfoAtS {
  double iu_y2 = 0, iu_y1 = 0;
  double id1 = 0, id2 = 0, id12 = 0;
  double log_nu = 0, log_nup = 0;
};

void check_rates(const RateTuple& r) {
  for (double v : {r.R1, r.R2, r.r1, r.r2})
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ValidationError("rates: all four rates must be finite and >= 0");
}

void check_grid(const std::vector<double>& s_grid, bool allow_one) {
  if (s_grid.empty()) throw ValidationError("s grid: empty");
  for (double s : s_grid) {
    if (!(s > 0.0) || s > 1.0) throw ValidationError("s grid: values must lie in (0,1]");
    if (!allow_one && s >= 1.0)
      throw ValidationError("s grid: s = 1 is outside the domain of the order-1/(1-s) terms");
  }
}

ExponentReport assemble(const std::string& kind, const std::string& factor_mode,
                        const RateTuple& rates, int n, const std::vector<double>& s_grid,
                        const std::function<InfoAtS(double)>& info_at) {
  ExponentReport rep;
  rep.n = n;
  rep.rates = rates;
  rep.kind = kind;
  rep.factor_mode = factor_mode;
  rep.rows.reserve(s_grid.size());
  for (double s : s_grid) {
    const InfoAtS q = info_at(s);
    const double ns = static_cast<double>(n) * s;
    ExponentRow row{};
    row.s = s;
    row.err = std::exp(kLn2 + q.log_nup +
                       log_sum_exp({ns * (rates.R1 + rates.r1 - q.iu_y2),
                                    ns * (rates.R2 + rates.r2 - q.iu_y1)}));
    row.leak_joint = std::exp(kLn2 + q.log_nu +
                              log_sum_exp({ns * (q.id1 - rates.r1), ns * (q.id2 - rates.r2),
                                           ns * (q.id12 - rates.r1 - rates.r2)}));
    row.leak_m1 =
        std::exp(kLn3 + q.log_nu +
                 log_sum_exp({ns * (q.id12 - (rates.r1 + rates.r2 + rates.R2)),
                              ns * (q.id1 - rates.r1), ns * (q.id2 - (rates.r2 + rates.R2))}));
    row.leak_m2 =
        std::exp(kLn3 + q.log_nu +
                 log_sum_exp({ns * (q.id12 - (rates.r1 + rates.r2 + rates.R1)),
                              ns * (q.id2 - rates.r2), ns * (q.id1 - (rates.r1 + rates.R1))}));
    rep.rows.push_back(row);
  }
  const auto pick = [&](const char* key, auto getter, double trivial) {
    BestEntry best;
    best.value = std::numeric_limits<double>::infinity();
    for (const ExponentRow& row : rep.rows) {
      const double v = getter(row);
      if (v < best.value) {
        best.value = v;
        best.s = row.s;
      }
    }
    best.vacuous = !(best.value < trivial);
    rep.best[key] = best;
  };
  pick("err", [](const ExponentRow& r) { return r.err; }, 1.0);
  pick("leak_joint", [](const ExponentRow& r) { return r.leak_joint; },
       n * (rates.R1 + rates.R2));
  pick("leak_m1", [](const ExponentRow& r) { return r.leak_m1; }, n * rates.R1);
  pick("leak_m2", [](const ExponentRow& r) { return r.leak_m2; }, n * rates.R2);
  return rep;
}

// P(b | a, c) with rows (a, c) a-major, from the (a, c, b) marginal tensor.
// Zero-mass (a, c) rows become point masses; they carry no weight downstream.
CondPmf conditional_rows(const NdTensor& acb) {
  const std::size_t na = acb.dims[0], nc = acb.dims[1], nb = acb.dims[2];
  Vec flat(na * nc * nb, 0.0);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t c = 0; c < nc; ++c) {
      double mass = 0.0;
      for (std::size_t b = 0; b < nb; ++b) mass += acb.data[(a * nc + c) * nb + b];
      if (mass <= 0.0) {
        flat[(a * nc + c) * nb] = 1.0;
        continue;
      }
      for (std::size_t b = 0; b < nb; ++b)
        flat[(a * nc + c) * nb + b] = acb.data[(a * nc + c) * nb + b] / mass;
    }
  return CondPmf(na * nc, nb, std::move(flat));
}

}  // namespace

ExponentReport bounds_iid(const ChannelTensor& t, const JointInputLaw& law, RateTuple rates,
                          int n, const std::vector<double>& s_grid) {
  if (n < 1) throw ValidationError("bounds: blocklength must be >= 1");
  check_rates(rates);
  check_grid(s_grid, true);
  const NdTensor joint = compose_effective(t, law);

  const NdTensor m_y2 = joint.marginal({AxV1, AxX2, AxY2});
  const CondPmf chan_y2 = conditional_rows(m_y2);
  const JointPmf in_y2 = joint.marginal({AxV1, AxX2}).as_joint2();
  const NdTensor m_y1 = joint.marginal({AxV2, AxX1, AxY1});
  const CondPmf chan_y1 = conditional_rows(m_y1);
  const JointPmf in_y1 = joint.marginal({AxV2, AxX1}).as_joint2();

  const JointPmf jz1 = joint.marginal({AxV1, AxZ}).as_joint2();
  const JointPmf jz2 = joint.marginal({AxV2, AxZ}).as_joint2();
  const NdTensor m12 = joint.marginal({AxV1, AxV2, AxZ});
  const JointPmf jz12(m12.dims[0] * m12.dims[1], m12.dims[2], m12.data);

  return assemble("iid", "", rates, n, s_grid, [&](double s) {
    InfoAtS q;
    q.iu_y2 = mi_up_conditional(chan_y2, in_y2, s);
    q.iu_y1 = mi_up_conditional(chan_y1, in_y1, s);
    q.id1 = mi_down(jz1, s);
    q.id2 = mi_down(jz2, s);
    q.id12 = mi_down(jz12, s);
    return q;
  });
}

ExponentReport bounds_additive(const AdditiveChannelSpec& spec, RateTuple rates, int n,
                               const std::vector<double>& s_grid) {
  if (n < 1) throw ValidationError("bounds: blocklength must be >= 1");
  check_rates(rates);
  check_grid(s_grid, true);
  const double lnq = std::log(static_cast<double>(spec.q));
  return assemble("additive", "", rates, n, s_grid, [&, lnq](double s) {
    InfoAtS q;
    q.iu_y2 = lnq - renyi_entropy(spec.noise2, 1.0 / (1.0 + s));
    q.iu_y1 = lnq - renyi_entropy(spec.noise1, 1.0 / (1.0 + s));
    q.id1 = 0.0;
    q.id2 = 0.0;
    q.id12 = lnq - renyi_entropy(spec.noise3, 1.0 + s);
    return q;
  });
}

ExponentReport bounds_constant_composition(const ChannelTensor& t, const JointType& jt1,
                                           const JointType& jt2, RateTuple rates, int n,
                                           const std::vector<double>& s_grid, FactorMode fm) {
  if (n < 1) throw ValidationError("bounds: blocklength must be >= 1");
  if (jt1.n != n || jt2.n != n)
    throw ValidationError("bounds: joint types must match the blocklength");
  if (jt1.nx != t.nx1 || jt2.nx != t.nx2)
    throw ValidationError("bounds: joint type X alphabets must match the channel");
  check_rates(rates);
  check_grid(s_grid, false);

  const Pmf pv1 = jt1.v_marginal().pmf();
  const Pmf pv2 = jt2.v_marginal().pmf();
  const JointInputLaw law(pv1, jt1.conditional(), pv2, jt2.conditional());
  const NdTensor joint = compose_effective(t, law);

  const CondPmf chan_y2 = conditional_rows(joint.marginal({AxV1, AxX2, AxY2}));
  const Pmf px2 = law.x2_marginal();
  const CondPmf chan_y1 = conditional_rows(joint.marginal({AxV2, AxX1, AxY1}));
  const Pmf px1 = law.x1_marginal();

  // Plain V -> Z rows: reuse the (a, c, b) helper with a singleton c axis.
  const NdTensor mz1 = joint.marginal({AxV1, AxZ});
  const NdTensor mz2 = joint.marginal({AxV2, AxZ});
  const NdTensor mz12 = joint.marginal({AxV1, AxV2, AxZ});
  const auto rows_from_2d = [](const NdTensor& az) {
    NdTensor with_c;
    with_c.dims = {az.dims[0], 1, az.dims[1]};
    with_c.data = az.data;
    return conditional_rows(with_c);
  };
  const CondPmf cz1 = rows_from_2d(mz1);
  const CondPmf cz2 = rows_from_2d(mz2);
  NdTensor flat12;
  flat12.dims = {mz12.dims[0] * mz12.dims[1], 1, mz12.dims[2]};
  flat12.data = mz12.data;
  const CondPmf cz12 = conditional_rows(flat12);
  const Pmf pv12 = product_joint(pv1, pv2).as_pmf();

  const std::size_t dx1 = t.nx1, dx2 = t.nx2;
  const std::size_t nu_d = dx1 * dx2 * std::max(jt1.nv, jt2.nv);
  const auto log_nu = [&](std::size_t d) {
    return fm == FactorMode::exact ? log_nu_exact(d, n) : log_nu_bound(d, n);
  };
  const auto log_tc = [&](std::size_t d) {
    if (fm == FactorMode::exact) return std::log(static_cast<double>(type_count(d, n)));
    return (d - 1) * std::log1p(static_cast<double>(n));
  };
  const double lnu = log_nu(nu_d);
  const double lnu_x = log_nu(dx1) + log_nu(dx2);
  const double ltc1 = log_tc(t.ny1 * dx1);
  const double ltc2 = log_tc(t.ny2 * dx2);
  const double lnu_yx1 = log_nu(t.ny1 * dx1);
  const double lnu_yx2 = log_nu(t.ny2 * dx2);

  return assemble("constant_composition", fm == FactorMode::exact ? "exact" : "bound", rates, n,
                  s_grid, [&](double s) {
                    InfoAtS q;
                    const double err_ord = 1.0 / (1.0 + s);
                    const double leak_ord = 1.0 / (1.0 - s);
                    q.iu_y2 = breve_mi_conditional(chan_y2, pv1, px2, err_ord);
                    q.iu_y1 = breve_mi_conditional(chan_y1, pv2, px1, err_ord);
                    q.id1 = breve_mi(cz1, pv1, leak_ord);
                    q.id2 = breve_mi(cz2, pv2, leak_ord);
                    q.id12 = breve_mi(cz12, pv12, leak_ord);
                    q.log_nu = lnu;
                    q.log_nup = lnu_x + std::max((1.0 + s) * ltc1 + s * lnu_yx1,
                                                 (1.0 + s) * ltc2 + s * lnu_yx2);
                    return q;
                  });
}

LinearSystemD randomness_system(const ShannonInfo& info, double R1, double R2, Flavor secrecy) {
  if (secrecy == Flavor::outer)
    throw ValidationError("randomness system: secrecy flavor must be joint or individual");
  LinearSystemD sys;
  sys.vars = {"r1", "r2"};
  const auto add = [&](double a, double b, Sense sense, double rhs) {
    sys.ineqs.push_back({{a, b}, sense, rhs});
  };
  add(1, 0, Sense::ge, 0);
  add(0, 1, Sense::ge, 0);
  add(1, 0, Sense::gt, info.iz_v1);
  add(0, 1, Sense::gt, info.iz_v2);
  if (secrecy == Flavor::joint) {
    add(1, 1, Sense::gt, info.iz_v12);
  } else {
    add(1, 1, Sense::gt, info.iz_v12 - R1);
    add(1, 1, Sense::gt, info.iz_v12 - R2);
  }
  add(1, 0, Sense::lt, info.iy2_v1_g_x2 - R1);
  add(0, 1, Sense::lt, info.iy1_v2_g_x1 - R2);
  return sys;
}

RandomnessRegion feasible_randomness(const ChannelTensor& t, const JointInputLaw& law,
                                     double R1, double R2, Flavor secrecy) {
  if (R1 < 0 || R2 < 0) throw ValidationError("feasible_randomness: rates must be >= 0");
  const ShannonInfo info = shannon_info(compose_effective(t, law));
  const LinearSystemD sys = randomness_system(info, R1, R2, secrecy);
  RandomnessRegion out;
  out.feasible = system_feasible(sys);
  // Closure halfspaces in a*r1 + b*r2 <= c form (nonnegativity rows dropped:
  // the lower bounds already sit at iz >= 0).
  std::vector<Halfspace> hs;
  for (const LinIneqD& row : sys.ineqs) {
    const bool flip = row.sense == Sense::gt || row.sense == Sense::ge;
    const double a = flip ? -row.coef[0] : row.coef[0];
    const double b = flip ? -row.coef[1] : row.coef[1];
    const double c = flip ? -row.rhs : row.rhs;
    if (a == -1 && b == 0 && c == 0) continue;
    if (a == 0 && b == -1 && c == 0) continue;
    hs.push_back({a, b, c});
    out.strict.push_back(row.sense == Sense::gt || row.sense == Sense::lt);
  }
  out.halfspaces = hs;
  out.vertices = make_region(std::move(hs)).vertices;
  return out;
}

}  // namespace twwc
