#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "twwc/errors.hpp"
#include "twwc/linear_system.hpp"
#include "twwc/rng.hpp"
#include "twwc/serialize.hpp"

using namespace twwc;

namespace {

LinIneq row(std::vector<Rational> coef, Sense s, Rational rhs) {
  LinIneq r;
  r.coef = std::move(coef);
  r.sense = s;
  r.rhs = rhs;
  return r;
}

// Feasibility of the raw 3-var system at (x0, y0) with z free, by exact
// interval analysis over z. Independent of the projector under test.
bool lifted_feasible(const LinearSystem& sys, const Rational& x0, const Rational& y0) {
  bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
  Rational lo, hi;
  for (const LinIneq& r : sys.ineqs) {
    Rational a = r.coef[0], b = r.coef[1], c = r.coef[2], rhs = r.rhs;
    bool strict = r.sense == Sense::lt || r.sense == Sense::gt;
    if (r.sense == Sense::gt || r.sense == Sense::ge) {
      a = -a;
      b = -b;
      c = -c;
      rhs = -rhs;
    }
    const Rational rem = rhs - a * x0 - b * y0;
    if (c.is_zero()) {
      if (strict ? !(Rational(0) < rem) : rem.is_negative()) return false;
      continue;
    }
    const Rational bound = rem / c;
    if (c.is_negative()) {
      if (!has_lo || bound > lo) {
        lo = bound;
        lo_strict = strict;
        has_lo = true;
      } else if (bound == lo && strict) {
        lo_strict = true;
      }
    } else {
      if (!has_hi || bound < hi) {
        hi = bound;
        hi_strict = strict;
        has_hi = true;
      } else if (bound == hi && strict) {
        hi_strict = true;
      }
    }
  }
  if (!has_lo || !has_hi) return true;
  if (lo < hi) return true;
  return lo == hi && !lo_strict && !hi_strict;
}

bool projected_holds(const LinearSystem& proj, const Rational& x0, const Rational& y0) {
  for (const LinIneq& r : proj.ineqs) {
    const Rational lhs = r.coef[0] * x0 + r.coef[1] * y0;
    const bool ok = r.sense == Sense::lt ? lhs < r.rhs : lhs <= r.rhs;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("canonicalize flips senses, scales pivots, and prunes constant rows") {
  LinearSystem sys;
  sys.vars = {"x", "y"};
  sys.ineqs.push_back(row({-2, 4}, Sense::ge, 6));   // -2x+4y >= 6  ->  x-2y <= -3
  sys.ineqs.push_back(row({0, 0}, Sense::le, 3));    // trivially true, dropped
  sys.ineqs.push_back(row({0, 0}, Sense::lt, 0));    // unsatisfiable, kept
  sys.ineqs.push_back(row({3, 0}, Sense::lt, 12));   // x < 4 after scaling
  const LinearSystem c = canonicalize(sys);
  REQUIRE(c.ineqs.size() == 3);
  CHECK(c.ineqs[0].coef == std::vector<Rational>{1, -2});
  CHECK(c.ineqs[0].sense == Sense::le);
  CHECK(c.ineqs[0].rhs == Rational(-3));
  CHECK(c.ineqs[1].coef == std::vector<Rational>{0, 0});
  CHECK(c.ineqs[1].sense == Sense::lt);
  CHECK(c.ineqs[2].coef == std::vector<Rational>{1, 0});
  CHECK(c.ineqs[2].rhs == Rational(4));
}

TEST_CASE("dedupe keeps the binding row per coefficient pattern") {
  LinearSystem sys;
  sys.vars = {"x"};
  sys.ineqs.push_back(row({1}, Sense::le, 5));
  sys.ineqs.push_back(row({2}, Sense::le, 6));  // x <= 3, tighter
  sys.ineqs.push_back(row({1}, Sense::lt, 3));  // x < 3, tighter still
  sys.ineqs.push_back(row({1}, Sense::le, 3));  // weak at the same rhs loses
  const LinearSystem c = canonicalize(sys);
  REQUIRE(c.ineqs.size() == 1);
  CHECK(c.ineqs[0].sense == Sense::lt);
  CHECK(c.ineqs[0].rhs == Rational(3));
}

TEST_CASE("strictness propagates through combined rows") {
  // x < y and y <= 3 forces x < 3
  LinearSystem sys;
  sys.vars = {"x", "y"};
  sys.ineqs.push_back(row({1, -1}, Sense::lt, 0));
  sys.ineqs.push_back(row({0, 1}, Sense::le, 3));
  const LinearSystem p = fourier_motzkin(sys, {"y"});
  REQUIRE(p.ineqs.size() == 1);
  CHECK(p.vars == std::vector<std::string>{"x"});
  CHECK(p.ineqs[0].sense == Sense::lt);
  CHECK(p.ineqs[0].rhs == Rational(3));

  // weak + weak stays weak
  sys.ineqs[0].sense = Sense::le;
  const LinearSystem q = fourier_motzkin(sys, {"y"});
  REQUIRE(q.ineqs.size() == 1);
  CHECK(q.ineqs[0].sense == Sense::le);
}

TEST_CASE("system_feasible detects strict cycles") {
  LinearSystem sys;
  sys.vars = {"x", "y"};
  sys.ineqs.push_back(row({1, -1}, Sense::lt, 0));  // x < y
  sys.ineqs.push_back(row({-1, 1}, Sense::lt, 0));  // y < x
  CHECK_FALSE(system_feasible(sys));
  sys.ineqs[0].sense = Sense::le;
  sys.ineqs[1].sense = Sense::le;
  CHECK(system_feasible(sys));  // x = y works

  LinearSystem tri;
  tri.vars = {"x", "y", "z"};
  tri.ineqs.push_back(row({1, -1, 0}, Sense::lt, 0));
  tri.ineqs.push_back(row({0, 1, -1}, Sense::lt, 0));
  tri.ineqs.push_back(row({-1, 0, 1}, Sense::lt, 0));
  CHECK_FALSE(system_feasible(tri));
}

TEST_CASE("fourier_motzkin rejects unknown variables") {
  LinearSystem sys;
  sys.vars = {"x"};
  sys.ineqs.push_back(row({1}, Sense::le, 1));
  CHECK_THROWS_AS(fourier_motzkin(sys, {"w"}), ValidationError);
}

TEST_CASE("projection matches direct lifted feasibility at random rational points") {
  CounterRng rng(31, 0);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    LinearSystem sys;
    sys.vars = {"x", "y", "z"};
    const int rows = 4 + int(rng.next_below(3));
    for (int i = 0; i < rows; ++i) {
      std::vector<Rational> coef(3);
      for (auto& c : coef) c = Rational(static_cast<long long>(rng.next_below(7)) - 3);
      const Sense s = static_cast<Sense>(rng.next_below(4));
      sys.ineqs.push_back(row(coef, s, Rational(static_cast<long long>(rng.next_below(11)) - 5)));
    }
    const LinearSystem proj = fourier_motzkin(sys, {"z"});
    REQUIRE(proj.vars == std::vector<std::string>({"x", "y"}));
    for (int pt = 0; pt < 25; ++pt) {
      const Rational x0(static_cast<long long>(rng.next_below(17)) - 8,
                        1 + static_cast<long long>(rng.next_below(4)));
      const Rational y0(static_cast<long long>(rng.next_below(17)) - 8,
                        1 + static_cast<long long>(rng.next_below(4)));
      CHECK(projected_holds(proj, x0, y0) == lifted_feasible(sys, x0, y0));
      ++checked;
    }
  }
  CHECK(checked == 1000);
}

TEST_CASE("projection is invariant to row order") {
  const ParsedSystem ps =
      parse_linear_system(load_json_file(std::string(TWWC_FIXTURE_DIR) + "/fm_joint_system.json"));
  LinearSystem shuffled = ps.rational_sys;
  std::reverse(shuffled.ineqs.begin(), shuffled.ineqs.end());
  CHECK(systems_equal(fourier_motzkin(ps.rational_sys, ps.eliminate),
                      fourier_motzkin(shuffled, ps.eliminate)));
}

TEST_CASE("randomness-rate elimination fixtures project exactly") {
  for (const char* name : {"individual", "joint"}) {
    const std::string base = std::string(TWWC_FIXTURE_DIR) + "/fm_" + name;
    const ParsedSystem ps = parse_linear_system(load_json_file(base + "_system.json"));
    CHECK(ps.exact);
    const ParsedSystem want = parse_linear_system(load_json_file(base + "_expected.json"));
    const LinearSystem got = fourier_motzkin(ps.rational_sys, ps.eliminate);
    CHECK(got.vars == want.rational_sys.vars);
    CHECK(systems_equal(got, want.rational_sys));
    CHECK(got.ineqs.size() == (std::string(name) == "joint" ? 3 : 4));
    for (const LinIneq& r : got.ineqs) CHECK(r.sense == Sense::lt);
  }
}

TEST_CASE("double-scalar projection reproduces the exact rows within tolerance") {
  const ParsedSystem ps =
      parse_linear_system(load_json_file(std::string(TWWC_FIXTURE_DIR) + "/fm_joint_system.json"));
  const LinearSystemD got = fourier_motzkin(ps.double_sys, ps.eliminate);
  const LinearSystem want = fourier_motzkin(ps.rational_sys, ps.eliminate);
  REQUIRE(got.ineqs.size() == want.ineqs.size());
  for (const LinIneq& wr : want.ineqs) {
    bool found = false;
    for (const LinIneqD& gr : got.ineqs) {
      double dist = std::fabs(gr.rhs - wr.rhs.to_double());
      for (std::size_t i = 0; i < wr.coef.size(); ++i)
        dist += std::fabs(gr.coef[i] - wr.coef[i].to_double());
      if (dist < 1e-9 && gr.sense == wr.sense) found = true;
    }
    CHECK(found);
  }
}
