#include "twwc/linear_system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "twwc/errors.hpp"

namespace twwc {

const char* sense_str(Sense s) {
  switch (s) {
    case Sense::lt: return "<";
    case Sense::le: return "<=";
    case Sense::gt: return ">";
    case Sense::ge: return ">=";
  }
  return "<=";
}

Sense sense_from_str(const std::string& s) {
  if (s == "<") return Sense::lt;
  if (s == "<=") return Sense::le;
  if (s == ">") return Sense::gt;
  if (s == ">=") return Sense::ge;
  throw ValidationError("unknown inequality sense: '" + s + "'");
}

namespace {

// Scalar plug for the exact and floating instantiations of the projector.
struct RatOps {
  using S = Rational;
  static bool is_zero(const S& v) { return v.is_zero(); }
  static bool is_neg(const S& v) { return v.is_negative(); }
  static S abs(const S& v) { return v.is_negative() ? -v : v; }
  static std::string key(const S& v) { return v.str(); }
};

struct DblOps {
  using S = double;
  static constexpr double kTol = 1e-9;
  static bool is_zero(double v) { return std::fabs(v) <= kTol; }
  static bool is_neg(double v) { return v < -kTol; }
  static double abs(double v) { return std::fabs(v); }
  static std::string key(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
  }
};

template <class Ops>
using Sys = LinearSystemT<typename Ops::S>;
template <class Ops>
using Row = LinIneqT<typename Ops::S>;

// Flip > / >= rows to < / <=, zero out negligible coefficients, and scale so
// the first nonzero coefficient has magnitude 1. Returns false for constant
// rows that are trivially satisfied (the row should be dropped); constant
// rows that cannot hold are normalized to 0 < 0 or 0 <= -1 style markers.
template <class Ops>
bool canonical_row(Row<Ops>& r) {
  using S = typename Ops::S;
  if (r.sense == Sense::gt || r.sense == Sense::ge) {
    for (S& c : r.coef) c = -c;
    r.rhs = -r.rhs;
    r.sense = r.sense == Sense::gt ? Sense::lt : Sense::le;
  }
  const S* pivot = nullptr;
  for (S& c : r.coef) {
    if (Ops::is_zero(c)) {
      c = S{};
      continue;
    }
    if (!pivot) pivot = &c;
  }
  if (!pivot) {
    const bool sat = r.sense == Sense::le ? !Ops::is_neg(r.rhs)
                                          : !Ops::is_neg(r.rhs) && !Ops::is_zero(r.rhs);
    return !sat;
  }
  const S scale = Ops::abs(*pivot);
  for (S& c : r.coef) c = c / scale;
  r.rhs = r.rhs / scale;
  return true;
}

// Deduplicate canonical rows: identical coefficient vectors keep only the
// binding constraint (smaller rhs; at equal rhs the strict one).
template <class Ops>
void dedupe(std::vector<Row<Ops>>& rows) {
  std::map<std::string, Row<Ops>> best;
  std::vector<std::string> order;
  for (Row<Ops>& r : rows) {
    std::string k;
    for (const auto& c : r.coef) {
      k += Ops::key(c);
      k += ',';
    }
    auto it = best.find(k);
    if (it == best.end()) {
      best.emplace(k, std::move(r));
      order.push_back(std::move(k));
      continue;
    }
    Row<Ops>& cur = it->second;
    const bool tighter =
        r.rhs < cur.rhs || (!(cur.rhs < r.rhs) && r.sense == Sense::lt && cur.sense == Sense::le);
    if (tighter) cur = std::move(r);
  }
  rows.clear();
  for (const std::string& k : order) rows.push_back(std::move(best.at(k)));
}

template <class Ops>
Sys<Ops> canonicalize_impl(const Sys<Ops>& sys) {
  Sys<Ops> out;
  out.vars = sys.vars;
  for (const Row<Ops>& row : sys.ineqs) {
    if (row.coef.size() != sys.vars.size())
      throw ValidationError("linear system: coefficient dimension mismatch");
    Row<Ops> r = row;
    if (canonical_row<Ops>(r)) out.ineqs.push_back(std::move(r));
  }
  dedupe<Ops>(out.ineqs);
  return out;
}

template <class Ops>
Sys<Ops> eliminate_one(const Sys<Ops>& sys, std::size_t k) {
  using S = typename Ops::S;
  Sys<Ops> out;
  out.vars = sys.vars;
  out.vars.erase(out.vars.begin() + static_cast<std::ptrdiff_t>(k));

  const auto strip = [&](const Row<Ops>& r) {
    Row<Ops> s;
    s.coef.reserve(r.coef.size() - 1);
    for (std::size_t i = 0; i < r.coef.size(); ++i)
      if (i != k) s.coef.push_back(r.coef[i]);
    s.sense = r.sense;
    s.rhs = r.rhs;
    return s;
  };

  std::vector<const Row<Ops>*> pos, neg;
  for (const Row<Ops>& r : sys.ineqs) {
    if (Ops::is_zero(r.coef[k]))
      out.ineqs.push_back(strip(r));
    else if (Ops::is_neg(r.coef[k]))
      neg.push_back(&r);
    else
      pos.push_back(&r);
  }
  for (const Row<Ops>* p : pos)
    for (const Row<Ops>* q : neg) {
      // (-q_k) * p + p_k * q cancels variable k; positive multipliers keep
      // the direction, and strictness survives from either parent.
      const S mp = -q->coef[k];
      const S mq = p->coef[k];
      Row<Ops> r;
      r.coef.reserve(sys.vars.size() - 1);
      for (std::size_t i = 0; i < sys.vars.size(); ++i)
        if (i != k) r.coef.push_back(mp * p->coef[i] + mq * q->coef[i]);
      r.rhs = mp * p->rhs + mq * q->rhs;
      r.sense = (p->sense == Sense::lt || q->sense == Sense::lt) ? Sense::lt : Sense::le;
      out.ineqs.push_back(std::move(r));
    }

  std::vector<Row<Ops>> kept;
  kept.reserve(out.ineqs.size());
  for (Row<Ops>& r : out.ineqs)
    if (canonical_row<Ops>(r)) kept.push_back(std::move(r));
  dedupe<Ops>(kept);
  out.ineqs = std::move(kept);
  return out;
}

template <class Ops>
Sys<Ops> fourier_motzkin_impl(const Sys<Ops>& sys, const std::vector<std::string>& eliminate) {
  Sys<Ops> cur = canonicalize_impl<Ops>(sys);
  for (const std::string& name : eliminate) {
    const auto it = std::find(cur.vars.begin(), cur.vars.end(), name);
    if (it == cur.vars.end())
      throw ValidationError("fourier_motzkin: unknown variable '" + name + "'");
    cur = eliminate_one<Ops>(cur, static_cast<std::size_t>(it - cur.vars.begin()));
  }
  return cur;
}

template <class Ops>
bool feasible_impl(const Sys<Ops>& sys) {
  Sys<Ops> residual = fourier_motzkin_impl<Ops>(sys, sys.vars);
  // Only unsatisfiable constant rows survive full elimination.
  return residual.ineqs.empty();
}

}  // namespace

LinearSystem fourier_motzkin(const LinearSystem& sys, const std::vector<std::string>& eliminate) {
  return fourier_motzkin_impl<RatOps>(sys, eliminate);
}

LinearSystemD fourier_motzkin(const LinearSystemD& sys,
                              const std::vector<std::string>& eliminate) {
  return fourier_motzkin_impl<DblOps>(sys, eliminate);
}

bool system_feasible(const LinearSystem& sys) { return feasible_impl<RatOps>(sys); }
bool system_feasible(const LinearSystemD& sys) { return feasible_impl<DblOps>(sys); }

LinearSystem canonicalize(const LinearSystem& sys) { return canonicalize_impl<RatOps>(sys); }
LinearSystemD canonicalize(const LinearSystemD& sys) { return canonicalize_impl<DblOps>(sys); }

bool systems_equal(const LinearSystem& a, const LinearSystem& b) {
  if (a.vars != b.vars) return false;
  const LinearSystem ca = canonicalize(a);
  const LinearSystem cb = canonicalize(b);
  if (ca.ineqs.size() != cb.ineqs.size()) return false;
  const auto row_key = [](const LinIneq& r) {
    std::string k = sense_str(r.sense);
    k += '|';
    k += r.rhs.str();
    for (const Rational& c : r.coef) {
      k += '|';
      k += c.str();
    }
    return k;
  };
  std::vector<std::string> ka, kb;
  for (const LinIneq& r : ca.ineqs) ka.push_back(row_key(r));
  for (const LinIneq& r : cb.ineqs) kb.push_back(row_key(r));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

}  // namespace twwc
