#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "twwc/pmf.hpp"
#include "twwc/rng.hpp"

namespace twwc {

using BigInt = boost::multiprecision::cpp_int;

// Enumeration budget for type sets and type classes.
inline constexpr std::uint64_t kTypeEnumCap = 1'000'000;

// Empirical-distribution counts of a length-n sequence over {0..d-1}.
struct TypeVector {
  int n = 0;
  std::vector<int> counts;

  TypeVector() = default;
  TypeVector(int n, std::vector<int> counts);
  std::size_t alphabet() const { return counts.size(); }
  Pmf pmf() const;
};

// Joint counts over (V,X) pairs, v-major: counts[v*nx + x].
struct JointType {
  int n = 0;
  std::size_t nv = 0, nx = 0;
  std::vector<int> counts;

  JointType() = default;
  JointType(int n, std::size_t nv, std::size_t nx, std::vector<int> counts);
  int at(std::size_t v, std::size_t x) const { return counts[v * nx + x]; }
  TypeVector v_marginal() const;
  TypeVector x_marginal() const;
  // Conditional law X|V; rows for zero-count v symbols are point masses at 0.
  CondPmf conditional() const;
};

// Number of types: C(n+d-1, d-1); throws SizingError past kTypeEnumCap.
std::uint64_t type_count(std::size_t d, int n);

// Complete duplicate-free enumeration, lexicographic order.
std::vector<TypeVector> enumerate_types(std::size_t d, int n);

// Multinomial n! / prod counts! (exact; arbitrary precision).
BigInt type_class_size(const TypeVector& t);
double log_type_class_size(const TypeVector& t);

// nu_n(d) = max over types P of e^{n H(P)} / |T_P^n|; log-space exact max.
double log_nu_exact(std::size_t d, int n);
double nu_exact(std::size_t d, int n);
// The (1+n)^d bound on nu_n(d).
double log_nu_bound(std::size_t d, int n);
double nu_bound(std::size_t d, int n);

// Uniform draw from the type class (Fisher-Yates shuffle of the multiset).
std::vector<std::uint8_t> sample_type_class(const TypeVector& t, CounterRng& rng);

// Uniform draw from the conditional type class given v_seq: the X multiset of
// each v-symbol row is shuffled independently across that symbol's positions.
std::vector<std::uint8_t> sample_conditional_type_class(const JointType& jt,
                                                        const std::vector<std::uint8_t>& v_seq,
                                                        CounterRng& rng);

// Exhaustive listing of a (conditional) type class; guarded by kTypeEnumCap.
std::vector<std::vector<std::uint8_t>> enumerate_type_class(const TypeVector& t);

// Per-letter cost of every member of the class: sum counts(x)/n * g(x).
double constant_composition_cost(const TypeVector& t, const Vec& g);

// Nearest type to target in total variation; ties toward lexicographically
// smallest counts. (Largest-remainder rounding with high-index preference.)
TypeVector snap_to_type(const Pmf& target, int n);
JointType snap_to_joint_type(const JointPmf& target, int n);

}  // namespace twwc
