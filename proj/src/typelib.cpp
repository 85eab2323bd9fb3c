#include "twwc/typelib.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "twwc/errors.hpp"

namespace twwc {

namespace {

void check_counts(int n, const std::vector<int>& counts, const char* who) {
  if (n < 1) throw ValidationError(std::string(who) + ": blocklength must be >= 1");
  if (counts.empty()) throw ValidationError(std::string(who) + ": empty alphabet");
  long long sum = 0;
  for (int c : counts) {
    if (c < 0) throw ValidationError(std::string(who) + ": negative count");
    sum += c;
  }
  if (sum != n) throw ValidationError(std::string(who) + ": counts must sum to n");
}

double log_multinomial(int n, const std::vector<int>& counts) {
  double v = std::lgamma(n + 1.0);
  for (int c : counts) v -= std::lgamma(c + 1.0);
  return v;
}

}  // namespace

TypeVector::TypeVector(int n_, std::vector<int> counts_) : n(n_), counts(std::move(counts_)) {
  check_counts(n, counts, "type");
}

Pmf TypeVector::pmf() const {
  Vec p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) p[i] = static_cast<double>(counts[i]) / n;
  return Pmf(std::move(p));
}

JointType::JointType(int n_, std::size_t nv_, std::size_t nx_, std::vector<int> counts_)
    : n(n_), nv(nv_), nx(nx_), counts(std::move(counts_)) {
  if (nv == 0 || nx == 0) throw ValidationError("joint type: empty alphabet");
  if (counts.size() != nv * nx) throw ValidationError("joint type: counts shape mismatch");
  check_counts(n, counts, "joint type");
}

TypeVector JointType::v_marginal() const {
  std::vector<int> m(nv, 0);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t x = 0; x < nx; ++x) m[v] += at(v, x);
  return TypeVector(n, std::move(m));
}

TypeVector JointType::x_marginal() const {
  std::vector<int> m(nx, 0);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t x = 0; x < nx; ++x) m[x] += at(v, x);
  return TypeVector(n, std::move(m));
}

CondPmf JointType::conditional() const {
  Vec flat(nv * nx, 0.0);
  for (std::size_t v = 0; v < nv; ++v) {
    long long row = 0;
    for (std::size_t x = 0; x < nx; ++x) row += at(v, x);
    if (row == 0) {
      flat[v * nx] = 1.0;
      continue;
    }
    for (std::size_t x = 0; x < nx; ++x)
      flat[v * nx + x] = static_cast<double>(at(v, x)) / static_cast<double>(row);
  }
  return CondPmf(nv, nx, std::move(flat));
}

std::uint64_t type_count(std::size_t d, int n) {
  if (d < 1 || n < 1) throw ValidationError("type_count: need d >= 1 and n >= 1");
  BigInt c = 1;
  for (std::size_t k = 1; k < d; ++k) {
    c *= static_cast<unsigned long long>(n) + k;
    c /= k;
  }
  if (c > kTypeEnumCap) throw SizingError("type_count: type set exceeds the enumeration cap");
  return c.convert_to<std::uint64_t>();
}

namespace {

void fill_types(std::size_t d, int remaining, std::vector<int>& cur,
                std::vector<TypeVector>& out, int n) {
  if (cur.size() + 1 == d) {
    cur.push_back(remaining);
    out.emplace_back(n, cur);
    cur.pop_back();
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    cur.push_back(c);
    fill_types(d, remaining - c, cur, out, n);
    cur.pop_back();
  }
}

}  // namespace

std::vector<TypeVector> enumerate_types(std::size_t d, int n) {
  const std::uint64_t total = type_count(d, n);
  std::vector<TypeVector> out;
  out.reserve(total);
  std::vector<int> cur;
  fill_types(d, n, cur, out, n);
  return out;
}

BigInt type_class_size(const TypeVector& t) {
  BigInt num = 1;
  int used = 0;
  // Running product of binomials C(used + c, c) stays integral throughout.
  for (int c : t.counts) {
    for (int k = 1; k <= c; ++k) {
      num *= used + k;
      num /= k;
    }
    used += c;
  }
  return num;
}

double log_type_class_size(const TypeVector& t) { return log_multinomial(t.n, t.counts); }

double log_nu_exact(std::size_t d, int n) {
  double best = 0.0;
  for (const TypeVector& t : enumerate_types(d, n)) {
    double h = 0.0;
    for (int c : t.counts)
      if (c > 0) h -= (static_cast<double>(c) / n) * std::log(static_cast<double>(c) / n);
    best = std::max(best, n * h - log_type_class_size(t));
  }
  return best;
}

double nu_exact(std::size_t d, int n) { return std::exp(log_nu_exact(d, n)); }

double log_nu_bound(std::size_t d, int n) { return d * std::log1p(static_cast<double>(n)); }

double nu_bound(std::size_t d, int n) { return std::exp(log_nu_bound(d, n)); }

std::vector<std::uint8_t> sample_type_class(const TypeVector& t, CounterRng& rng) {
  std::vector<std::uint8_t> seq;
  seq.reserve(t.n);
  for (std::size_t sym = 0; sym < t.counts.size(); ++sym)
    seq.insert(seq.end(), t.counts[sym], static_cast<std::uint8_t>(sym));
  for (std::size_t i = seq.size(); i > 1; --i)
    std::swap(seq[i - 1], seq[rng.next_below(i)]);
  return seq;
}

std::vector<std::uint8_t> sample_conditional_type_class(const JointType& jt,
                                                        const std::vector<std::uint8_t>& v_seq,
                                                        CounterRng& rng) {
  if (v_seq.size() != static_cast<std::size_t>(jt.n))
    throw ValidationError("conditional sampling: sequence length mismatch");
  std::vector<int> seen(jt.nv, 0);
  for (std::uint8_t v : v_seq) {
    if (v >= jt.nv) throw ValidationError("conditional sampling: symbol out of range");
    ++seen[v];
  }
  const TypeVector vm = jt.v_marginal();
  for (std::size_t v = 0; v < jt.nv; ++v)
    if (seen[v] != vm.counts[v])
      throw ValidationError("conditional sampling: v_seq type differs from the joint type");

  std::vector<std::uint8_t> out(v_seq.size(), 0);
  std::vector<std::vector<std::size_t>> positions(jt.nv);
  for (std::size_t i = 0; i < v_seq.size(); ++i) positions[v_seq[i]].push_back(i);
  for (std::size_t v = 0; v < jt.nv; ++v) {
    std::vector<std::uint8_t> bucket;
    bucket.reserve(positions[v].size());
    for (std::size_t x = 0; x < jt.nx; ++x)
      bucket.insert(bucket.end(), jt.at(v, x), static_cast<std::uint8_t>(x));
    for (std::size_t i = bucket.size(); i > 1; --i)
      std::swap(bucket[i - 1], bucket[rng.next_below(i)]);
    for (std::size_t i = 0; i < bucket.size(); ++i) out[positions[v][i]] = bucket[i];
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> enumerate_type_class(const TypeVector& t) {
  if (type_class_size(t) > kTypeEnumCap)
    throw SizingError("enumerate_type_class: class exceeds the enumeration cap");
  std::vector<std::uint8_t> seq;
  seq.reserve(t.n);
  for (std::size_t sym = 0; sym < t.counts.size(); ++sym)
    seq.insert(seq.end(), t.counts[sym], static_cast<std::uint8_t>(sym));
  std::vector<std::vector<std::uint8_t>> out;
  do {
    out.push_back(seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

double constant_composition_cost(const TypeVector& t, const Vec& g) {
  if (g.size() != t.counts.size())
    throw ValidationError("constant_composition_cost: cost vector dimension mismatch");
  double c = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x)
    c += (static_cast<double>(t.counts[x]) / t.n) * g[x];
  return c;
}

namespace {

std::vector<int> largest_remainder(const Vec& target, int n) {
  const std::size_t d = target.size();
  std::vector<int> counts(d, 0);
  std::vector<std::pair<double, std::size_t>> rem(d);
  long long assigned = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const double exact = target[i] * n;
    counts[i] = static_cast<int>(std::floor(exact));
    assigned += counts[i];
    rem[i] = {exact - counts[i], i};
  }
  // Remainder descending; ties give the extra unit to the higher index,
  // which yields the lexicographically smallest counts among the ties.
  std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
  for (long long k = 0; k < n - assigned; ++k) ++counts[rem[static_cast<std::size_t>(k)].second];
  return counts;
}

}  // namespace

TypeVector snap_to_type(const Pmf& target, int n) {
  return TypeVector(n, largest_remainder(target.probs(), n));
}

JointType snap_to_joint_type(const JointPmf& target, int n) {
  return JointType(n, target.na, target.nb, largest_remainder(target.p, n));
}

}  // namespace twwc
