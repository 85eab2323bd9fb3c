#include "twwc/commands.hpp"

#include <sstream>

#include "twwc/errors.hpp"
#include "twwc/exponents.hpp"
#include "twwc/region.hpp"
#include "twwc/simulator.hpp"

namespace twwc {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Flavor resolve_flavor(const Json& spec, const CommandOptions& opt) {
  if (opt.flavor) return flavor_from_str(*opt.flavor);
  if (spec.is_object() && spec.contains("flavor"))
    return flavor_from_str(spec.at("flavor").get<std::string>());
  return Flavor::joint;
}

int resolve_grid(const Json& spec, const CommandOptions& opt, int fallback) {
  if (opt.grid) return *opt.grid;
  if (spec.is_object() && spec.contains("grid")) return spec.at("grid").get<int>();
  return fallback;
}

std::vector<double> resolve_s_grid(const Json& spec, const CommandOptions& opt, int fallback,
                                   bool include_one) {
  if (spec.is_object() && spec.contains("s_grid")) {
    std::vector<double> g;
    for (const auto& v : spec.at("s_grid")) g.push_back(v.get<double>());
    return g;
  }
  return default_s_grid(opt.s_grid.value_or(fallback), include_one);
}

std::optional<CostSpec> resolve_cost(const Json& spec, const CommandOptions& opt) {
  if (!spec.is_object() || !spec.contains("cost")) return std::nullopt;
  CostSpec c = parse_cost(spec.at("cost"));
  if (opt.cost_budgets) {
    c.c1 = opt.cost_budgets->first;
    c.c2 = opt.cost_budgets->second;
  }
  return c;
}

RateRegion2D build_region(const Json& spec, const CommandOptions& opt);

RateRegion2D build_time_share(const Json& ts, const Json& spec, const CommandOptions& opt) {
  TimeSharingPlan plan{Pmf(Vec{1.0}), {}};
  Vec w;
  for (const auto& v : field(ts, "weights")) w.push_back(v.get<double>());
  plan.weights = Pmf(std::move(w));
  const Json& segs = field(ts, "segments");
  if (!segs.is_array() || segs.size() != plan.weights.size())
    throw ValidationError("time_share: segments must align with weights");
  std::vector<RateRegion2D> regions;
  for (const auto& seg : segs) regions.push_back(build_region(seg, opt));
  if (ts.contains("budgets"))
    for (const auto& b : ts.at("budgets"))
      plan.budgets.emplace_back(b[0].get<double>(), b[1].get<double>());
  std::optional<std::pair<double, double>> global;
  if (ts.contains("global_budgets")) {
    const Json& g = ts.at("global_budgets");
    global = std::make_pair(g[0].get<double>(), g[1].get<double>());
  } else if (opt.cost_budgets) {
    global = opt.cost_budgets;
  }
  (void)spec;
  return region_time_share(plan, regions, global);
}

RateRegion2D build_region(const Json& spec, const CommandOptions& opt) {
  if (spec.is_object() && spec.contains("time_share"))
    return build_time_share(spec.at("time_share"), spec, opt);

  const Flavor flavor = resolve_flavor(spec, opt);
  const ChannelInput ch = parse_channel(field(spec, "channel"));

  if (ch.is_gaussian()) {
    const auto budgets = [&]() -> std::pair<double, double> {
      if (opt.cost_budgets) return *opt.cost_budgets;
      const Json& b = field(spec, "budgets");
      return {b[0].get<double>(), b[1].get<double>()};
    };
    if (flavor == Flavor::outer) {
      const auto [c1, c2] = budgets();
      return region_gaussian_outer(*ch.gaussian, c1, c2);
    }
    if (spec.contains("powers")) {
      const Json& p = spec.at("powers");
      return region_gaussian_inner(*ch.gaussian, p[0].get<double>(), p[1].get<double>(), flavor);
    }
    const auto [c1, c2] = budgets();
    return region_gaussian_inner_hull(*ch.gaussian, c1, c2, resolve_grid(spec, opt, 8), flavor);
  }

  const bool has_laws =
      spec.contains("law") || spec.contains("laws") || spec.contains("law_grid");
  if (ch.additive && !has_laws) return region_additive(*ch.additive, flavor);

  const ChannelTensor t = ch.as_tensor();
  if (flavor == Flavor::outer)
    throw ValidationError("outer bounds exist only for additive and gaussian channels");

  if (spec.contains("laws")) {
    std::vector<JointInputLaw> laws;
    for (const auto& l : spec.at("laws")) laws.push_back(parse_law(l));
    return region_union(t, laws, flavor, resolve_cost(spec, opt));
  }
  if (spec.contains("law_grid") && spec.at("law_grid").get<bool>()) {
    const int step = resolve_grid(spec, opt, 8);
    return region_union(t, law_grid(t.nx1, t.nx2, step), flavor, resolve_cost(spec, opt));
  }
  const JointInputLaw law = spec.contains("law")
                                ? parse_law(spec.at("law"))
                                : JointInputLaw::identity_uniform(t.nx1, t.nx2);
  return flavor == Flavor::joint ? region_joint(t, law) : region_individual(t, law);
}

CodebookMode resolve_mode(const Json& spec) {
  if (!spec.is_object() || !spec.contains("mode")) return CodebookMode::iid;
  const std::string m = spec.at("mode").get<std::string>();
  if (m == "iid") return CodebookMode::iid;
  if (m == "constant_composition") return CodebookMode::constant_composition;
  throw ValidationError("mode must be 'iid' or 'constant_composition'");
}

VerifySetup build_setup(const Json& spec, const ChannelTensor& t) {
  VerifySetup setup;
  setup.n = field(spec, "n").get<int>();
  setup.mode = resolve_mode(spec);
  if (setup.mode == CodebookMode::iid) {
    setup.law = spec.contains("law") ? parse_law(spec.at("law"))
                                     : JointInputLaw::identity_uniform(t.nx1, t.nx2);
  } else {
    const Json& types = field(spec, "types");
    setup.jt1 = parse_joint_type(field(types, "jt1"), setup.n);
    setup.jt2 = parse_joint_type(field(types, "jt2"), setup.n);
  }
  return setup;
}

VerifyMethod resolve_method(const Json& spec) {
  const std::string m =
      spec.is_object() && spec.contains("method") ? spec.at("method").get<std::string>()
                                                  : "enumerate";
  if (m == "enumerate") return VerifyMethod::enumerate;
  if (m == "sample") return VerifyMethod::sample;
  throw ValidationError("method must be 'enumerate' or 'sample'");
}

long resolve_count(const Json& spec, const char* key, const std::optional<long>& flag,
                   long fallback) {
  if (flag) return *flag;
  if (spec.is_object() && spec.contains(key)) return spec.at(key).get<long>();
  return fallback;
}

}  // namespace

Json region_command(const Json& spec, const CommandOptions& opt, std::string* csv_out) {
  const RateRegion2D region = build_region(spec, opt);
  if (csv_out && opt.format == "csv") *csv_out = region_to_csv(region, opt.bits);
  return region_to_json(region, opt.bits);
}

Json exponent_command(const Json& spec, const CommandOptions& opt, std::string* csv_out) {
  const ChannelInput ch = parse_channel(field(spec, "channel"));
  const int n = field(spec, "n").get<int>();
  const RateTuple rates = parse_rates(field(spec, "rates"));

  ExponentReport rep;
  if (spec.contains("types")) {
    const Json& types = spec.at("types");
    const JointType jt1 = parse_joint_type(field(types, "jt1"), n);
    const JointType jt2 = parse_joint_type(field(types, "jt2"), n);
    const std::string fm_str =
        opt.factor_mode.value_or(spec.contains("factor_mode")
                                     ? spec.at("factor_mode").get<std::string>()
                                     : "exact");
    FactorMode fm;
    if (fm_str == "exact") {
      fm = FactorMode::exact;
    } else if (fm_str == "bound") {
      fm = FactorMode::bound;
    } else {
      throw ValidationError("factor mode must be 'exact' or 'bound'");
    }
    const auto grid = resolve_s_grid(spec, opt, 99, false);
    rep = bounds_constant_composition(ch.as_tensor(), jt1, jt2, rates, n, grid, fm);
  } else if (spec.contains("law")) {
    const auto grid = resolve_s_grid(spec, opt, 99, true);
    rep = bounds_iid(ch.as_tensor(), parse_law(spec.at("law")), rates, n, grid);
  } else if (ch.additive) {
    const auto grid = resolve_s_grid(spec, opt, 99, true);
    rep = bounds_additive(*ch.additive, rates, n, grid);
  } else {
    const ChannelTensor t = ch.as_tensor();
    const auto grid = resolve_s_grid(spec, opt, 99, true);
    rep = bounds_iid(t, JointInputLaw::identity_uniform(t.nx1, t.nx2), rates, n, grid);
  }
  if (csv_out && opt.format == "csv") *csv_out = exponent_report_to_csv(rep, opt.bits);
  return exponent_report_to_json(rep, opt.bits);
}

Json simulate_command(const Json& spec, const CommandOptions& opt, std::string* csv_out) {
  const ChannelTensor t = parse_channel(field(spec, "channel")).as_tensor();
  CodebookParams p;
  p.n = field(spec, "n").get<int>();
  p.M1 = field(spec, "M1").get<long>();
  p.L1 = field(spec, "L1").get<long>();
  p.M2 = field(spec, "M2").get<long>();
  p.L2 = field(spec, "L2").get<long>();
  p.mode = resolve_mode(spec);
  if (p.mode == CodebookMode::iid) {
    p.law = spec.contains("law") ? parse_law(spec.at("law"))
                                 : JointInputLaw::identity_uniform(t.nx1, t.nx2);
  } else {
    const Json& types = field(spec, "types");
    p.jt1 = parse_joint_type(field(types, "jt1"), p.n);
    p.jt2 = parse_joint_type(field(types, "jt2"), p.n);
  }
  const long trials = resolve_count(spec, "trials", opt.trials, 10000);
  const Codebook cb = generate_codebook(p, opt.seed);
  SimResult res = run_error_trials(t, cb, trials, opt.seed);
  if (!spec.contains("leakage") || spec.at("leakage").get<bool>())
    res.leakage = exact_leakage(t, cb);
  if (csv_out && opt.format == "csv") *csv_out = sim_result_to_csv(res, opt.bits);
  return sim_result_to_json(res, opt.seed, opt.bits);
}

Json verify_resolvability_command(const Json& spec, const CommandOptions& opt,
                                  std::string* csv_out) {
  const ChannelTensor t = parse_channel(field(spec, "channel")).as_tensor();
  const VerifySetup setup = build_setup(spec, t);
  const bool cc = setup.mode == CodebookMode::constant_composition;
  const auto grid = resolve_s_grid(spec, opt, 10, !cc);
  const VerifyReport rep = verify_resolvability(
      t, setup, field(spec, "L1").get<long>(), field(spec, "L2").get<long>(), grid,
      resolve_method(spec), resolve_count(spec, "codebooks", opt.trials, 50), opt.seed);
  if (csv_out && opt.format == "csv") *csv_out = verify_report_to_csv(rep, opt.bits);
  return verify_report_to_json(rep, opt.bits);
}

Json verify_gallager_command(const Json& spec, const CommandOptions& opt, std::string* csv_out) {
  const ChannelTensor t = parse_channel(field(spec, "channel")).as_tensor();
  const VerifySetup setup = build_setup(spec, t);
  const auto grid = resolve_s_grid(spec, opt, 10, true);
  const VerifyReport rep = verify_gallager(
      t, setup, field(spec, "N").get<long>(), grid, resolve_method(spec),
      resolve_count(spec, "codebooks", opt.trials, 50), opt.seed);
  if (csv_out && opt.format == "csv") *csv_out = verify_report_to_csv(rep, opt.bits);
  return verify_report_to_json(rep, opt.bits);
}

Json fm_command(const Json& spec, const CommandOptions& opt, std::string* csv_out) {
  const ParsedSystem ps = parse_linear_system(spec);
  const auto& elim = opt.eliminate.empty() ? ps.eliminate : opt.eliminate;
  Json out;
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<std::string> vars;
  if (ps.exact) {
    const LinearSystem proj = fourier_motzkin(ps.rational_sys, elim);
    out = linear_system_to_json(proj);
    vars = proj.vars;
    for (const auto& row : proj.ineqs) {
      std::vector<std::string> cells;
      for (const auto& c : row.coef) cells.push_back(c.str());
      cells.push_back(sense_str(row.sense));
      cells.push_back(row.rhs.str());
      csv_rows.push_back(std::move(cells));
    }
  } else {
    const LinearSystemD proj = fourier_motzkin(ps.double_sys, elim);
    out = linear_system_to_json(proj);
    vars = proj.vars;
    for (const auto& row : proj.ineqs) {
      std::vector<std::string> cells;
      for (double c : row.coef) cells.push_back(fmt12(c));
      cells.push_back(sense_str(row.sense));
      cells.push_back(fmt12(row.rhs));
      csv_rows.push_back(std::move(cells));
    }
  }
  out["exact"] = ps.exact;
  if (csv_out && opt.format == "csv") {
    std::ostringstream os;
    for (const std::string& v : vars) os << v << ',';
    os << "sense,rhs\n";
    for (const auto& row : csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
    *csv_out = os.str();
  }
  return out;
}

Json run_command(const std::string& command, const Json& spec, const CommandOptions& opt,
                 std::string* csv_out) {
  if (command == "region") return region_command(spec, opt, csv_out);
  if (command == "exponent") return exponent_command(spec, opt, csv_out);
  if (command == "simulate") return simulate_command(spec, opt, csv_out);
  if (command == "verify-resolvability") return verify_resolvability_command(spec, opt, csv_out);
  if (command == "verify-gallager") return verify_gallager_command(spec, opt, csv_out);
  if (command == "fm") return fm_command(spec, opt, csv_out);
  throw ValidationError("unknown command: " + command);
}

}  // namespace twwc
