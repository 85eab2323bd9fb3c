#include "twwc/serialize.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "twwc/errors.hpp"

namespace twwc {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double scale(double v, bool bits) { return bits ? v / kLn2 : v; }

// A JSON scalar that may be a number or a decimal/rational string.
double number_from(const Json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    try {
      return Rational::parse(s).to_double();
    } catch (const ValidationError&) {
      char* end = nullptr;
      const double d = std::strtod(s.c_str(), &end);
      if (end != s.c_str() + s.size() || s.empty())
        throw ValidationError(std::string(what) + ": cannot parse number '" + s + "'");
      return d;
    }
  }
  throw ValidationError(std::string(what) + ": expected a number");
}

Vec vec_from(const Json& v, const char* what) {
  if (!v.is_array()) throw ValidationError(std::string(what) + ": expected an array");
  Vec out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(number_from(e, what));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

CondPmf cond_from(const Json& v, const char* what) {
  if (!v.is_array() || v.empty())
    throw ValidationError(std::string(what) + ": expected a nonempty array of rows");
  const std::size_t n_in = v.size();
  Vec flat;
  std::size_t n_out = 0;
  for (const auto& row : v) {
    const Vec r = vec_from(row, what);
    if (n_out == 0) n_out = r.size();
    if (r.size() != n_out)
      throw ValidationError(std::string(what) + ": ragged conditional rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return CondPmf(n_in, n_out, std::move(flat));
}

Json hs_json(const Halfspace& h, bool bits) {
  return Json::array({jnum(h.a), jnum(h.b), jnum(scale(h.c, bits))});
}

Json meta_json(const std::map<std::string, std::string>& meta) {
  Json m = Json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  return m;
}

}  // namespace

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  // Normalize the negative-zero artifact so equal values print equally.
  if (buf[0] == '-' && std::strtod(buf, nullptr) == 0.0) return fmt12(0.0);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(fmt12(v).c_str(), nullptr);
}

Json jnum(double v) {
  if (std::isnan(v)) return Json("nan");
  if (std::isinf(v)) return Json(v > 0 ? "inf" : "-inf");
  return Json(round12(v));
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open output file: " + tmp);
    out << content;
    out.flush();
    if (!out) throw ValidationError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ValidationError("cannot move output into place: " + path);
  }
}

ChannelTensor ChannelInput::as_tensor() const {
  if (tensor) return *tensor;
  if (additive) return additive_to_tensor(*additive);
  throw ValidationError("gaussian channels are evaluated in closed form; no tensor view");
}

ChannelInput parse_channel(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  ChannelInput out;
  if (kind == "tensor") {
    const Json& sz = field(j, "sizes");
    if (!sz.is_array() || sz.size() != 5)
      throw ValidationError("channel sizes must be [nx1,nx2,ny1,ny2,nz]");
    std::array<std::size_t, 5> d{};
    for (int i = 0; i < 5; ++i) {
      const long v = sz[i].get<long>();
      if (v < 1) throw ValidationError("channel sizes must be positive");
      d[i] = static_cast<std::size_t>(v);
    }
    out.tensor = ChannelTensor(d[0], d[1], d[2], d[3], d[4], vec_from(field(j, "probs"), "channel probs"));
  } else if (kind == "additive") {
    const std::uint32_t q = field(j, "q").get<std::uint32_t>();
    const Json& c = field(j, "coeffs");
    const Json& noise = field(j, "noise");
    if (!noise.is_array() || noise.size() != 3)
      throw ValidationError("additive noise must be [[N1],[N2],[N3]]");
    out.additive = AdditiveChannelSpec(
        q, field(c, "a1").get<std::uint32_t>(), field(c, "b1").get<std::uint32_t>(),
        field(c, "a2").get<std::uint32_t>(), field(c, "b2").get<std::uint32_t>(),
        field(c, "a3").get<std::uint32_t>(), field(c, "b3").get<std::uint32_t>(),
        Pmf(vec_from(noise[0], "noise1")), Pmf(vec_from(noise[1], "noise2")),
        Pmf(vec_from(noise[2], "noise3")));
  } else if (kind == "gaussian") {
    const Json& c = field(j, "coeffs");
    const Json& v = field(j, "variances");
    if (!v.is_array() || v.size() != 3)
      throw ValidationError("gaussian variances must be [v1,v2,v3]");
    out.gaussian = GaussianChannelSpec(
        number_from(field(c, "a1"), "a1"), number_from(field(c, "b1"), "b1"),
        number_from(field(c, "a2"), "a2"), number_from(field(c, "b2"), "b2"),
        number_from(field(c, "a3"), "a3"), number_from(field(c, "b3"), "b3"),
        number_from(v[0], "v1"), number_from(v[1], "v2"), number_from(v[2], "v3"));
  } else {
    throw ValidationError("unknown channel kind: " + kind);
  }
  return out;
}

JointInputLaw parse_law(const Json& j) {
  if (j.is_object() && j.contains("identity_uniform")) {
    const Json& s = j.at("identity_uniform");
    if (!s.is_array() || s.size() != 2)
      throw ValidationError("identity_uniform takes [nx1, nx2]");
    return JointInputLaw::identity_uniform(s[0].get<std::size_t>(), s[1].get<std::size_t>());
  }
  return JointInputLaw(Pmf(vec_from(field(j, "pV1"), "pV1")),
                       cond_from(field(j, "pX1gV1"), "pX1gV1"),
                       Pmf(vec_from(field(j, "pV2"), "pV2")),
                       cond_from(field(j, "pX2gV2"), "pX2gV2"));
}

JointType parse_joint_type(const Json& j, int n) {
  const Json& rows = field(j, "counts");
  if (!rows.is_array() || rows.empty())
    throw ValidationError("joint type counts must be a nonempty array of rows");
  const std::size_t nv = rows.size();
  std::size_t nx = 0;
  std::vector<int> counts;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ValidationError("joint type rows must be arrays");
    if (nx == 0) nx = row.size();
    if (row.size() != nx) throw ValidationError("ragged joint type rows");
    for (const auto& e : row) counts.push_back(e.get<int>());
  }
  return JointType(n, nv, nx, std::move(counts));
}

CostSpec parse_cost(const Json& j) {
  CostSpec c;
  c.g1 = vec_from(field(j, "g1"), "g1");
  c.g2 = vec_from(field(j, "g2"), "g2");
  c.c1 = number_from(field(j, "c1"), "c1");
  c.c2 = number_from(field(j, "c2"), "c2");
  return c;
}

RateTuple parse_rates(const Json& j) {
  RateTuple r;
  r.R1 = number_from(field(j, "R1"), "R1");
  r.R2 = number_from(field(j, "R2"), "R2");
  r.r1 = number_from(field(j, "r1"), "r1");
  r.r2 = number_from(field(j, "r2"), "r2");
  return r;
}

Json region_to_json(const RateRegion2D& r, bool bits) {
  Json out = Json::object();
  out["halfspaces"] = Json::array();
  for (const Halfspace& h : r.halfspaces) out["halfspaces"].push_back(hs_json(h, bits));
  out["vertices"] = Json::array();
  for (const auto& v : r.vertices)
    out["vertices"].push_back(Json::array({jnum(scale(v[0], bits)), jnum(scale(v[1], bits))}));
  out["meta"] = meta_json(r.meta);
  return out;
}

std::string region_to_csv(const RateRegion2D& r, bool bits) {
  std::ostringstream os;
  os << (bits ? "R1_bits,R2_bits\n" : "R1_nats,R2_nats\n");
  for (const auto& v : r.vertices)
    os << fmt12(scale(v[0], bits)) << ',' << fmt12(scale(v[1], bits)) << '\n';
  return os.str();
}

Json exponent_report_to_json(const ExponentReport& rep, bool bits) {
  Json out = Json::object();
  out["n"] = rep.n;
  out["rates"] = Json::object();
  out["rates"]["R1"] = jnum(scale(rep.rates.R1, bits));
  out["rates"]["R2"] = jnum(scale(rep.rates.R2, bits));
  out["rates"]["r1"] = jnum(scale(rep.rates.r1, bits));
  out["rates"]["r2"] = jnum(scale(rep.rates.r2, bits));
  out["kind"] = rep.kind;
  if (!rep.factor_mode.empty()) out["factor_mode"] = rep.factor_mode;
  out["rows"] = Json::array();
  for (const ExponentRow& row : rep.rows) {
    Json r = Json::object();
    r["s"] = jnum(row.s);
    r["err"] = jnum(row.err);  // probability scale, never rescaled
    r["leak_joint"] = jnum(scale(row.leak_joint, bits));
    r["leak_m1"] = jnum(scale(row.leak_m1, bits));
    r["leak_m2"] = jnum(scale(row.leak_m2, bits));
    out["rows"].push_back(r);
  }
  out["best"] = Json::object();
  for (const auto& [key, b] : rep.best) {
    Json e = Json::object();
    e["s"] = jnum(b.s);
    e["value"] = jnum(key == "err" ? b.value : scale(b.value, bits));
    e["vacuous"] = b.vacuous;
    out["best"][key] = e;
  }
  return out;
}

std::string exponent_report_to_csv(const ExponentReport& rep, bool bits) {
  std::ostringstream os;
  os << "s,err,leak_joint,leak_m1,leak_m2\n";
  for (const ExponentRow& row : rep.rows)
    os << fmt12(row.s) << ',' << fmt12(row.err) << ',' << fmt12(scale(row.leak_joint, bits))
       << ',' << fmt12(scale(row.leak_m1, bits)) << ',' << fmt12(scale(row.leak_m2, bits))
       << '\n';
  return os.str();
}

Json sim_result_to_json(const SimResult& res, std::uint64_t seed, bool bits) {
  Json out = Json::object();
  out["seed"] = seed;
  out["trials"] = res.trials;
  out["errors"] = res.errors;
  out["estimate"] = jnum(res.estimate);
  out["wilson_lo"] = jnum(res.wilson_lo);
  out["wilson_hi"] = jnum(res.wilson_hi);
  if (res.leakage) {
    Json l = Json::object();
    l["joint"] = jnum(scale((*res.leakage)[0], bits));
    l["m1"] = jnum(scale((*res.leakage)[1], bits));
    l["m2"] = jnum(scale((*res.leakage)[2], bits));
    out["leakage"] = l;
  }
  return out;
}

std::string sim_result_to_csv(const SimResult& res, bool bits) {
  std::ostringstream os;
  if (res.leakage) {
    os << "trials,errors,estimate,wilson_lo,wilson_hi,leak_joint,leak_m1,leak_m2\n";
    os << res.trials << ',' << res.errors << ',' << fmt12(res.estimate) << ','
       << fmt12(res.wilson_lo) << ',' << fmt12(res.wilson_hi) << ','
       << fmt12(scale((*res.leakage)[0], bits)) << ',' << fmt12(scale((*res.leakage)[1], bits))
       << ',' << fmt12(scale((*res.leakage)[2], bits)) << '\n';
  } else {
    os << "trials,errors,estimate,wilson_lo,wilson_hi\n";
    os << res.trials << ',' << res.errors << ',' << fmt12(res.estimate) << ','
       << fmt12(res.wilson_lo) << ',' << fmt12(res.wilson_hi) << '\n';
  }
  return os.str();
}

Json verify_report_to_json(const VerifyReport& rep, bool bits) {
  // Resolvability rows are divergences (nats); error rows are probabilities.
  const bool natty = rep.quantity == "resolvability";
  Json out = Json::object();
  out["quantity"] = rep.quantity;
  out["mode"] = rep.mode;
  out["method"] = rep.method;
  out["n"] = rep.n;
  if (rep.quantity == "resolvability") {
    out["L1"] = rep.L1;
    out["L2"] = rep.L2;
  } else {
    out["N"] = rep.N;
  }
  out["realizations"] = rep.realizations;
  out["rows"] = Json::array();
  for (const VerifyRow& row : rep.rows) {
    Json r = Json::object();
    r["s"] = jnum(row.s);
    r["lhs"] = jnum(natty ? scale(row.lhs, bits) : row.lhs);
    r["rhs"] = jnum(natty ? scale(row.rhs, bits) : row.rhs);
    r["slack"] = jnum(natty ? scale(row.slack, bits) : row.slack);
    r["holds"] = row.holds;
    if (rep.method == "sample") r["lhs_ci"] = jnum(natty ? scale(row.lhs_ci, bits) : row.lhs_ci);
    out["rows"].push_back(r);
  }
  out["all_hold"] = rep.all_hold;
  return out;
}

std::string verify_report_to_csv(const VerifyReport& rep, bool bits) {
  const bool natty = rep.quantity == "resolvability";
  const auto sc = [&](double v) { return natty ? scale(v, bits) : v; };
  std::ostringstream os;
  os << "s,lhs,rhs,slack,holds";
  if (rep.method == "sample") os << ",lhs_ci";
  os << '\n';
  for (const VerifyRow& row : rep.rows) {
    os << fmt12(row.s) << ',' << fmt12(sc(row.lhs)) << ',' << fmt12(sc(row.rhs)) << ','
       << fmt12(sc(row.slack)) << ',' << (row.holds ? "true" : "false");
    if (rep.method == "sample") os << ',' << fmt12(sc(row.lhs_ci));
    os << '\n';
  }
  return os.str();
}

namespace {

// Scalar that must later support exact elimination: keep both readings.
struct DualScalar {
  double d = 0.0;
  Rational r;
  bool exact = false;
};

DualScalar dual_from(const Json& v, const char* what) {
  DualScalar out;
  if (v.is_number_integer()) {
    out.r = Rational(v.get<long long>());
    out.d = out.r.to_double();
    out.exact = true;
    return out;
  }
  if (v.is_string()) {
    try {
      out.r = Rational::parse(v.get<std::string>());
      out.d = out.r.to_double();
      out.exact = true;
      return out;
    } catch (const ValidationError&) {
      // fall through to the double reading
    }
  }
  out.d = number_from(v, what);
  return out;
}

}  // namespace

ParsedSystem parse_linear_system(const Json& j) {
  ParsedSystem out;
  const Json& vars = field(j, "vars");
  if (!vars.is_array() || vars.empty())
    throw ValidationError("linear system: 'vars' must be a nonempty array");
  for (const auto& v : vars) {
    const std::string name = v.get<std::string>();
    for (const auto& seen : out.double_sys.vars)
      if (seen == name) throw ValidationError("linear system: duplicate variable " + name);
    out.double_sys.vars.push_back(name);
  }
  out.rational_sys.vars = out.double_sys.vars;

  out.exact = true;
  const Json& ineqs = field(j, "inequalities");
  if (!ineqs.is_array()) throw ValidationError("linear system: 'inequalities' must be an array");
  for (const auto& row : ineqs) {
    LinIneqD rd;
    LinIneq rr;
    rd.coef.assign(out.double_sys.vars.size(), 0.0);
    rr.coef.assign(out.double_sys.vars.size(), Rational());
    const Json& coef = field(row, "coef");
    if (!coef.is_object()) throw ValidationError("linear system: 'coef' must be an object");
    for (const auto& [name, value] : coef.items()) {
      std::size_t idx = out.double_sys.vars.size();
      for (std::size_t i = 0; i < out.double_sys.vars.size(); ++i)
        if (out.double_sys.vars[i] == name) idx = i;
      if (idx == out.double_sys.vars.size())
        throw ValidationError("linear system: unknown variable " + name);
      const DualScalar s = dual_from(value, "coefficient");
      rd.coef[idx] = s.d;
      rr.coef[idx] = s.r;
      out.exact = out.exact && s.exact;
    }
    rd.sense = rr.sense = sense_from_str(field(row, "sense").get<std::string>());
    const DualScalar rhs = dual_from(field(row, "rhs"), "rhs");
    rd.rhs = rhs.d;
    rr.rhs = rhs.r;
    out.exact = out.exact && rhs.exact;
    out.double_sys.ineqs.push_back(std::move(rd));
    out.rational_sys.ineqs.push_back(std::move(rr));
  }
  if (j.contains("eliminate"))
    for (const auto& e : j.at("eliminate")) out.eliminate.push_back(e.get<std::string>());
  return out;
}

namespace {

template <class Sys, class ValueFn>
Json system_json(const Sys& sys, ValueFn value) {
  Json out = Json::object();
  out["vars"] = sys.vars;
  out["inequalities"] = Json::array();
  for (const auto& row : sys.ineqs) {
    Json r = Json::object();
    Json coef = Json::object();
    for (std::size_t i = 0; i < sys.vars.size(); ++i)
      if (!(row.coef[i] == typename std::decay_t<decltype(row.coef[i])>{}))
        coef[sys.vars[i]] = value(row.coef[i]);
    r["coef"] = coef;
    r["sense"] = sense_str(row.sense);
    r["rhs"] = value(row.rhs);
    out["inequalities"].push_back(r);
  }
  return out;
}

}  // namespace

Json linear_system_to_json(const LinearSystem& sys) {
  return system_json(sys, [](const Rational& r) { return Json(r.str()); });
}

Json linear_system_to_json(const LinearSystemD& sys) {
  return system_json(sys, [](double d) { return jnum(d); });
}

}  // namespace twwc
