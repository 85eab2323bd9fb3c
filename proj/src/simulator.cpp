#include "twwc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twwc/errors.hpp"
#include "twwc/measures.hpp"
#include "twwc/parallel.hpp"

namespace twwc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kZ95 = 1.959963984540054;
// Stream-id blocks of the master seed; one logical unit of work per stream.
constexpr std::uint64_t kCw1Base = 1ull << 32;
constexpr std::uint64_t kCw2Base = 2ull << 32;
constexpr std::uint64_t kTrialBase = 3ull << 32;
constexpr std::uint64_t kVerifyBase = 4ull << 32;

// Per-letter output kernels marginalized from the full channel.
Vec z_kernel(const ChannelTensor& t) {
  Vec k(t.nx1 * t.nx2 * t.nz, 0.0);
  for (std::size_t x1 = 0; x1 < t.nx1; ++x1)
    for (std::size_t x2 = 0; x2 < t.nx2; ++x2)
      for (std::size_t y1 = 0; y1 < t.ny1; ++y1)
        for (std::size_t y2 = 0; y2 < t.ny2; ++y2)
          for (std::size_t z = 0; z < t.nz; ++z)
            k[(x1 * t.nx2 + x2) * t.nz + z] += t.p(x1, x2, y1, y2, z);
  return k;
}

Vec y_kernel(const ChannelTensor& t, int receiver) {
  const std::size_t ny = receiver == 1 ? t.ny1 : t.ny2;
  Vec k(t.nx1 * t.nx2 * ny, 0.0);
  for (std::size_t x1 = 0; x1 < t.nx1; ++x1)
    for (std::size_t x2 = 0; x2 < t.nx2; ++x2)
      for (std::size_t y1 = 0; y1 < t.ny1; ++y1)
        for (std::size_t y2 = 0; y2 < t.ny2; ++y2)
          for (std::size_t z = 0; z < t.nz; ++z)
            k[(x1 * t.nx2 + x2) * ny + (receiver == 1 ? y1 : y2)] += t.p(x1, x2, y1, y2, z);
  return k;
}

void check_params(const CodebookParams& p) {
  if (p.n < 1) throw ValidationError("codebook: blocklength must be >= 1");
  if (p.M1 < 1 || p.L1 < 1 || p.M2 < 1 || p.L2 < 1)
    throw ValidationError("codebook: all counts must be >= 1");
  if (p.mode == CodebookMode::iid) {
    if (!p.law) throw ValidationError("codebook: iid mode needs an input law");
    if (p.law->pV1.size() > 256 || p.law->pV2.size() > 256)
      throw ValidationError("codebook: V alphabets capped at 256 symbols");
  } else {
    if (!p.jt1 || !p.jt2) throw ValidationError("codebook: constant composition needs joint types");
    if (p.jt1->n != p.n || p.jt2->n != p.n)
      throw ValidationError("codebook: joint types must match the blocklength");
    if (p.jt1->nv > 256 || p.jt2->nv > 256)
      throw ValidationError("codebook: V alphabets capped at 256 symbols");
  }
  const auto budget = [&](long M, long L) {
    const std::uint64_t symbols =
        static_cast<std::uint64_t>(M) * static_cast<std::uint64_t>(L) * p.n;
    if (symbols > kCodebookSymbolCap)
      throw SizingError("codebook: per-user symbol budget exceeded");
  };
  budget(p.M1, p.L1);
  budget(p.M2, p.L2);
}

std::uint64_t pow_guarded(std::uint64_t base, int exp, std::uint64_t cap, const char* what) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) throw SizingError(what);
    v *= base;
  }
  if (v > cap) throw SizingError(what);
  return v;
}

// All length-n sequences over {0..d-1} with product weights, or a uniform
// type class. The candidate pools behind exact ensemble computations.
struct CandSet {
  std::vector<std::vector<std::uint8_t>> seqs;
  Vec probs;
};

CandSet product_candidates(const Pmf& p, int n, std::uint64_t cap) {
  const std::uint64_t total =
      pow_guarded(p.size(), n, cap, "ensemble: candidate sequence space exceeds the cap");
  CandSet out;
  out.seqs.reserve(total);
  out.probs.reserve(total);
  std::vector<std::uint8_t> seq(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rem = idx;
    double w = 1.0;
    for (int t = n - 1; t >= 0; --t) {
      seq[t] = static_cast<std::uint8_t>(rem % p.size());
      rem /= p.size();
      w *= p[seq[t]];
    }
    out.seqs.push_back(seq);
    out.probs.push_back(w);
  }
  return out;
}

CandSet class_candidates(const TypeVector& tv) {
  CandSet out;
  out.seqs = enumerate_type_class(tv);
  out.probs.assign(out.seqs.size(), 1.0 / out.seqs.size());
  return out;
}

// Every x^n whose joint type with v_seq matches jt, by per-symbol-bucket
// multiset permutations; uniform conditional-class law.
std::vector<std::vector<std::uint8_t>> enumerate_conditional_class(
    const JointType& jt, const std::vector<std::uint8_t>& v_seq) {
  std::vector<std::vector<std::size_t>> positions(jt.nv);
  for (std::size_t i = 0; i < v_seq.size(); ++i) positions[v_seq[i]].push_back(i);
  std::vector<std::vector<std::vector<std::uint8_t>>> bucket_perms(jt.nv);
  std::uint64_t total = 1;
  for (std::size_t v = 0; v < jt.nv; ++v) {
    std::vector<std::uint8_t> bucket;
    for (std::size_t x = 0; x < jt.nx; ++x)
      bucket.insert(bucket.end(), jt.at(v, x), static_cast<std::uint8_t>(x));
    if (bucket.size() != positions[v].size())
      throw ValidationError("conditional class: v_seq type differs from the joint type");
    do {
      bucket_perms[v].push_back(bucket);
    } while (std::next_permutation(bucket.begin(), bucket.end()));
    total *= bucket_perms[v].size();
    if (total > kTypeEnumCap)
      throw SizingError("conditional class enumeration exceeds the cap");
  }
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(total);
  std::vector<std::size_t> pick(jt.nv, 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    std::vector<std::uint8_t> x(v_seq.size(), 0);
    for (std::size_t v = 0; v < jt.nv; ++v)
      for (std::size_t k = 0; k < positions[v].size(); ++k)
        x[positions[v][k]] = bucket_perms[v][pick[v]][k];
    out.push_back(std::move(x));
    for (std::size_t v = jt.nv; v-- > 0;) {
      if (++pick[v] < bucket_perms[v].size()) break;
      pick[v] = 0;
    }
  }
  return out;
}

}  // namespace

Codebook generate_codebook(const CodebookParams& params, std::uint64_t seed) {
  check_params(params);
  Codebook cb;
  cb.params = params;
  cb.seed = seed;
  const auto fill = [&](int user) {
    const long count = (user == 1 ? params.M1 * params.L1 : params.M2 * params.L2);
    auto& cw = user == 1 ? cb.cw1 : cb.cw2;
    cw.resize(count);
    const std::uint64_t base = user == 1 ? kCw1Base : kCw2Base;
    for (long k = 0; k < count; ++k) {
      CounterRng rng(seed, base + static_cast<std::uint64_t>(k));
      if (params.mode == CodebookMode::iid) {
        const Pmf& pv = user == 1 ? params.law->pV1 : params.law->pV2;
        std::vector<std::uint8_t> seq(params.n);
        for (int t = 0; t < params.n; ++t) seq[t] = static_cast<std::uint8_t>(rng.sample(pv));
        cw[k] = std::move(seq);
      } else {
        const JointType& jt = user == 1 ? *params.jt1 : *params.jt2;
        cw[k] = sample_type_class(jt.v_marginal(), rng);
      }
    }
  };
  fill(1);
  fill(2);
  return cb;
}

Encoded encode(const Codebook& cb, int user, long m, CounterRng& rng) {
  if (user != 1 && user != 2) throw ValidationError("encode: user must be 1 or 2");
  const long M = user == 1 ? cb.params.M1 : cb.params.M2;
  const long L = user == 1 ? cb.params.L1 : cb.params.L2;
  if (m < 1 || m > M) throw ValidationError("encode: message out of range");
  const long index = (m - 1) * L + static_cast<long>(rng.next_below(L));
  Encoded enc;
  enc.index = index;
  enc.v = user == 1 ? cb.cw1[index] : cb.cw2[index];
  if (cb.params.mode == CodebookMode::iid) {
    const CondPmf& cond = user == 1 ? cb.params.law->pX1gV1 : cb.params.law->pX2gV2;
    enc.x.resize(enc.v.size());
    for (std::size_t t = 0; t < enc.v.size(); ++t)
      enc.x[t] = static_cast<std::uint8_t>(rng.sample(cond.row(enc.v[t])));
  } else {
    const JointType& jt = user == 1 ? *cb.params.jt1 : *cb.params.jt2;
    enc.x = sample_conditional_type_class(jt, enc.v, rng);
  }
  return enc;
}

long ml_decode(const Codebook& cb, const ChannelTensor& t, int user,
               const std::vector<std::uint8_t>& y, const std::vector<std::uint8_t>& x_own) {
  if (user != 1 && user != 2) throw ValidationError("ml_decode: user must be 1 or 2");
  if (y.size() != x_own.size() || y.size() != static_cast<std::size_t>(cb.params.n))
    throw ValidationError("ml_decode: sequence length mismatch");
  const int other = 3 - user;
  const auto& cands = other == 1 ? cb.cw1 : cb.cw2;
  const long L = other == 1 ? cb.params.L1 : cb.params.L2;
  const CondPmf cond = cb.params.mode == CodebookMode::iid
                           ? (other == 1 ? cb.params.law->pX1gV1 : cb.params.law->pX2gV2)
                           : (other == 1 ? cb.params.jt1->conditional()
                                         : cb.params.jt2->conditional());
  const std::size_t nv = cond.n_in();
  const std::size_t nown = user == 1 ? t.nx1 : t.nx2;
  const std::size_t ny = user == 1 ? t.ny1 : t.ny2;
  const Vec yk = y_kernel(t, user);

  // K(v_other, x_own, y): per-letter likelihood with the other user's
  // pre-processing marginalized.
  Vec K(nv * nown * ny, 0.0);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t xo = 0; xo < nown; ++xo)
      for (std::size_t yy = 0; yy < ny; ++yy) {
        double sum = 0.0;
        for (std::size_t xot = 0; xot < cond.n_out(); ++xot) {
          const std::size_t x1 = user == 1 ? xo : xot;
          const std::size_t x2 = user == 1 ? xot : xo;
          sum += cond.at(v, xot) * yk[(x1 * t.nx2 + x2) * ny + yy];
        }
        K[(v * nown + xo) * ny + yy] = sum;
      }

  long best = 0;
  double best_ll = kNegInf;
  for (std::size_t j = 0; j < cands.size(); ++j) {
    double ll = 0.0;
    for (std::size_t tt = 0; tt < y.size(); ++tt) {
      const double k = K[(cands[j][tt] * nown + x_own[tt]) * ny + y[tt]];
      ll += k > 0.0 ? std::log(k) : kNegInf;
    }
    if (ll > best_ll) {
      best_ll = ll;
      best = static_cast<long>(j);
    }
  }
  return best / L + 1;
}

SimResult run_error_trials(const ChannelTensor& t, const Codebook& cb, long trials,
                           std::uint64_t seed) {
  if (trials < 1) throw ValidationError("run_error_trials: trials must be >= 1");
  const std::size_t out_sz = t.ny1 * t.ny2 * t.nz;
  std::vector<Pmf> out_law;
  out_law.reserve(t.nx1 * t.nx2);
  for (std::size_t x1 = 0; x1 < t.nx1; ++x1)
    for (std::size_t x2 = 0; x2 < t.nx2; ++x2) {
      Vec slice(out_sz);
      for (std::size_t i = 0; i < out_sz; ++i)
        slice[i] = t.probs[(x1 * t.nx2 + x2) * out_sz + i];
      out_law.emplace_back(std::move(slice));
    }

  std::vector<std::uint8_t> failed(trials, 0);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
    CounterRng rng(seed, kTrialBase + i);
    const long m1 = 1 + static_cast<long>(rng.next_below(cb.params.M1));
    const long m2 = 1 + static_cast<long>(rng.next_below(cb.params.M2));
    const Encoded e1 = encode(cb, 1, m1, rng);
    const Encoded e2 = encode(cb, 2, m2, rng);
    std::vector<std::uint8_t> y1(cb.params.n), y2(cb.params.n);
    for (int tt = 0; tt < cb.params.n; ++tt) {
      const std::size_t idx = rng.sample(out_law[e1.x[tt] * t.nx2 + e2.x[tt]]);
      y1[tt] = static_cast<std::uint8_t>(idx / (t.ny2 * t.nz));
      y2[tt] = static_cast<std::uint8_t>((idx / t.nz) % t.ny2);
    }
    const long est2 = ml_decode(cb, t, 1, y1, e1.x);
    const long est1 = ml_decode(cb, t, 2, y2, e2.x);
    failed[i] = (est1 != m1 || est2 != m2) ? 1 : 0;
  });

  SimResult res;
  res.trials = trials;
  for (std::uint8_t f : failed) res.errors += f;
  const double n = static_cast<double>(trials);
  const double phat = res.errors / n;
  res.estimate = phat;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      kZ95 * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  res.wilson_lo = std::max(0.0, center - half);
  res.wilson_hi = std::min(1.0, center + half);
  return res;
}

std::array<double, 3> exact_leakage(const ChannelTensor& t, const Codebook& cb) {
  const int n = cb.params.n;
  const long M1 = cb.params.M1, L1 = cb.params.L1, M2 = cb.params.M2, L2 = cb.params.L2;
  const std::uint64_t zn =
      pow_guarded(t.nz, n, kLeakageEntryCap, "exact leakage: |Z|^n exceeds the entry budget");
  const std::uint64_t pairs =
      static_cast<std::uint64_t>(M1) * L1 * static_cast<std::uint64_t>(M2) * L2;
  if (pairs > kLeakageEntryCap / zn)
    throw SizingError(
        "exact leakage: enumeration budget exceeded; leakage is computed exactly or not at all");
  const Vec zk = z_kernel(t);

  // P(z^n | v1^n, v2^n) rows per codeword pair, with the pre-processing
  // marginalized exactly (per letter for iid, conditional classes otherwise).
  std::vector<std::vector<std::uint8_t>> digits(zn, std::vector<std::uint8_t>(n));
  for (std::uint64_t zi = 0; zi < zn; ++zi) {
    std::uint64_t rem = zi;
    for (int tt = n - 1; tt >= 0; --tt) {
      digits[zi][tt] = static_cast<std::uint8_t>(rem % t.nz);
      rem /= t.nz;
    }
  }

  Vec letter_kernel;  // iid: K(v1, v2, z)
  std::size_t nv2 = 0;
  std::vector<std::vector<std::vector<std::uint8_t>>> class1, class2;  // cc per codeword
  if (cb.params.mode == CodebookMode::iid) {
    const CondPmf& c1 = cb.params.law->pX1gV1;
    const CondPmf& c2 = cb.params.law->pX2gV2;
    const std::size_t nv1 = c1.n_in();
    nv2 = c2.n_in();
    letter_kernel.assign(nv1 * nv2 * t.nz, 0.0);
    for (std::size_t v1 = 0; v1 < nv1; ++v1)
      for (std::size_t v2 = 0; v2 < nv2; ++v2)
        for (std::size_t x1 = 0; x1 < t.nx1; ++x1)
          for (std::size_t x2 = 0; x2 < t.nx2; ++x2) {
            const double w = c1.at(v1, x1) * c2.at(v2, x2);
            if (w <= 0.0) continue;
            for (std::size_t z = 0; z < t.nz; ++z)
              letter_kernel[(v1 * nv2 + v2) * t.nz + z] += w * zk[(x1 * t.nx2 + x2) * t.nz + z];
          }
  } else {
    class1.reserve(cb.cw1.size());
    for (const auto& v : cb.cw1) class1.push_back(enumerate_conditional_class(*cb.params.jt1, v));
    class2.reserve(cb.cw2.size());
    for (const auto& v : cb.cw2) class2.push_back(enumerate_conditional_class(*cb.params.jt2, v));
  }

  const auto pz_given_pair = [&](long j1, long j2, Vec& out) {
    const auto& v1 = cb.cw1[j1];
    const auto& v2 = cb.cw2[j2];
    if (cb.params.mode == CodebookMode::iid) {
      for (std::uint64_t zi = 0; zi < zn; ++zi) {
        double p = 1.0;
        for (int tt = 0; tt < n; ++tt)
          p *= letter_kernel[(v1[tt] * nv2 + v2[tt]) * t.nz + digits[zi][tt]];
        out[zi] = p;
      }
      return;
    }
    const auto& m1s = class1[j1];
    const auto& m2s = class2[j2];
    const double w = 1.0 / (static_cast<double>(m1s.size()) * m2s.size());
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& x1 : m1s)
      for (const auto& x2 : m2s)
        for (std::uint64_t zi = 0; zi < zn; ++zi) {
          double p = 1.0;
          for (int tt = 0; tt < n; ++tt)
            p *= zk[(x1[tt] * t.nx2 + x2[tt]) * t.nz + digits[zi][tt]];
          out[zi] += w * p;
        }
  };

  // P(z^n | m1, m2): average over the message's randomization blocks.
  std::vector<Vec> pz_m(static_cast<std::size_t>(M1) * M2, Vec(zn, 0.0));
  Vec pair_buf(zn);
  for (long m1 = 0; m1 < M1; ++m1)
    for (long m2 = 0; m2 < M2; ++m2) {
      Vec& acc = pz_m[m1 * M2 + m2];
      for (long a = 0; a < L1; ++a)
        for (long b = 0; b < L2; ++b) {
          pz_given_pair(m1 * L1 + a, m2 * L2 + b, pair_buf);
          for (std::uint64_t zi = 0; zi < zn; ++zi)
            acc[zi] += pair_buf[zi] / (static_cast<double>(L1) * L2);
        }
    }

  Vec pz(zn, 0.0);
  for (const Vec& row : pz_m)
    for (std::uint64_t zi = 0; zi < zn; ++zi) pz[zi] += row[zi] / (static_cast<double>(M1) * M2);

  const auto kl_to_ref = [&](const Vec& p, double weight) {
    double d = 0.0;
    for (std::uint64_t zi = 0; zi < zn; ++zi)
      if (p[zi] > 0.0) d += p[zi] * std::log(p[zi] / pz[zi]);
    return weight * std::max(0.0, d);
  };

  double joint = 0.0;
  for (const Vec& row : pz_m) joint += kl_to_ref(row, 1.0 / (static_cast<double>(M1) * M2));

  double lm1 = 0.0;
  for (long m1 = 0; m1 < M1; ++m1) {
    Vec row(zn, 0.0);
    for (long m2 = 0; m2 < M2; ++m2)
      for (std::uint64_t zi = 0; zi < zn; ++zi)
        row[zi] += pz_m[m1 * M2 + m2][zi] / static_cast<double>(M2);
    lm1 += kl_to_ref(row, 1.0 / static_cast<double>(M1));
  }
  double lm2 = 0.0;
  for (long m2 = 0; m2 < M2; ++m2) {
    Vec row(zn, 0.0);
    for (long m1 = 0; m1 < M1; ++m1)
      for (std::uint64_t zi = 0; zi < zn; ++zi)
        row[zi] += pz_m[m1 * M2 + m2][zi] / static_cast<double>(M1);
    lm2 += kl_to_ref(row, 1.0 / static_cast<double>(M2));
  }
  return {std::max(0.0, joint), std::max(0.0, lm1), std::max(0.0, lm2)};
}

namespace {

void check_setup(const ChannelTensor& t, const VerifySetup& setup) {
  if (setup.n < 1) throw ValidationError("verify: blocklength must be >= 1");
  if (setup.mode == CodebookMode::iid) {
    if (!setup.law) throw ValidationError("verify: iid mode needs an input law");
    if (setup.law->pX1gV1.n_out() != t.nx1 || setup.law->pX2gV2.n_out() != t.nx2)
      throw ValidationError("verify: law X alphabets must match the channel");
  } else {
    if (!setup.jt1 || !setup.jt2) throw ValidationError("verify: cc mode needs joint types");
    if (setup.jt1->n != setup.n || setup.jt2->n != setup.n)
      throw ValidationError("verify: joint types must match the blocklength");
    if (setup.jt1->nx != t.nx1 || setup.jt2->nx != t.nx2)
      throw ValidationError("verify: joint type X alphabets must match the channel");
  }
}

JointInputLaw setup_law(const VerifySetup& setup) {
  if (setup.mode == CodebookMode::iid) return *setup.law;
  return JointInputLaw(setup.jt1->v_marginal().pmf(), setup.jt1->conditional(),
                       setup.jt2->v_marginal().pmf(), setup.jt2->conditional());
}

// Odometer over `slots` positions each in [0, base); returns false at wrap.
bool advance(std::vector<std::size_t>& idx, std::size_t base) {
  for (std::size_t i = idx.size(); i-- > 0;) {
    if (++idx[i] < base) return true;
    idx[i] = 0;
  }
  return false;
}

double renyi_div_vec(const Vec& p, const Vec& q, double s) {
  // D_{1+s}(p || q) over a common index set; supp(p) within supp(q) holds by
  // construction (q is a full-weight mixture containing every p).
  Vec terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) terms.push_back((1.0 + s) * std::log(p[i]) - s * std::log(q[i]));
  return std::max(0.0, log_sum_exp(terms) / s);
}

}  // namespace

VerifyReport verify_resolvability(const ChannelTensor& t, const VerifySetup& setup, long L1,
                                  long L2, const std::vector<double>& s_grid,
                                  VerifyMethod method, long num_codebooks, std::uint64_t seed) {
  check_setup(t, setup);
  if (L1 < 1 || L2 < 1) throw ValidationError("verify: L1, L2 must be >= 1");
  if (s_grid.empty()) throw ValidationError("verify: empty s grid");
  const bool cc = setup.mode == CodebookMode::constant_composition;
  for (double s : s_grid) {
    if (!(s > 0.0) || s > 1.0) throw ValidationError("verify: s must lie in (0,1]");
    if (cc && s >= 1.0)
      throw ValidationError("verify: s = 1 is outside the order-1/(1-s) domain");
  }
  const int n = setup.n;
  const JointInputLaw law = setup_law(setup);
  const NdTensor joint = compose_effective(t, law);

  // Single-letter quantities behind the right-hand side.
  const NdTensor mz1 = joint.marginal({AxV1, AxZ});
  const NdTensor mz2 = joint.marginal({AxV2, AxZ});
  const NdTensor mz12 = joint.marginal({AxV1, AxV2, AxZ});
  const JointPmf jz1 = mz1.as_joint2();
  const JointPmf jz2 = mz2.as_joint2();
  const JointPmf jz12(mz12.dims[0] * mz12.dims[1], mz12.dims[2], mz12.data);

  const auto cond_rows = [](const JointPmf& vz) {
    Vec flat(vz.na * vz.nb, 0.0);
    const Pmf pv = vz.marginal_a();
    for (std::size_t v = 0; v < vz.na; ++v)
      for (std::size_t z = 0; z < vz.nb; ++z)
        flat[v * vz.nb + z] = pv[v] > 0.0 ? vz.at(v, z) / pv[v] : (z == 0 ? 1.0 : 0.0);
    return CondPmf(vz.na, vz.nb, std::move(flat));
  };
  const CondPmf cz1 = cond_rows(jz1);
  const CondPmf cz2 = cond_rows(jz2);
  const CondPmf cz12 = cond_rows(jz12);
  const Pmf pv1 = law.pV1, pv2 = law.pV2;
  const Pmf pv12 = product_joint(pv1, pv2).as_pmf();
  const double log_nu_cc = cc ? log_nu_exact(t.nx1, n) + log_nu_exact(t.nx2, n) : 0.0;

  const auto rhs_at = [&](double s) {
    double id1, id2, id12;
    if (!cc) {
      id1 = mi_down(jz1, s);
      id2 = mi_down(jz2, s);
      id12 = mi_down(jz12, s);
    } else {
      const double ord = 1.0 / (1.0 - s);
      id1 = breve_mi(cz1, pv1, ord);
      id2 = breve_mi(cz2, pv2, ord);
      id12 = breve_mi(cz12, pv12, ord);
    }
    const double lL1 = std::log(static_cast<double>(L1));
    const double lL2 = std::log(static_cast<double>(L2));
    return std::exp(log_nu_cc +
                    log_sum_exp({s * (n * id1 - lL1), s * (n * id2 - lL2),
                                 s * (n * id12 - lL1 - lL2)}));
  };

  // Candidate codewords and the exact P(z^n | v1^n, v2^n) table.
  const Vec zk = z_kernel(t);
  CandSet c1, c2;
  if (!cc) {
    c1 = product_candidates(law.pV1, n, kEnsembleCap);
    c2 = product_candidates(law.pV2, n, kEnsembleCap);
  } else {
    c1 = class_candidates(setup.jt1->v_marginal());
    c2 = class_candidates(setup.jt2->v_marginal());
  }
  const std::uint64_t zn =
      pow_guarded(t.nz, n, kLeakageEntryCap, "verify: |Z|^n exceeds the entry budget");
  if (c1.seqs.size() * c2.seqs.size() > kLeakageEntryCap / zn)
    throw SizingError("verify: output table exceeds the entry budget");

  std::vector<std::vector<std::uint8_t>> zdigits(zn, std::vector<std::uint8_t>(n));
  for (std::uint64_t zi = 0; zi < zn; ++zi) {
    std::uint64_t rem = zi;
    for (int tt = n - 1; tt >= 0; --tt) {
      zdigits[zi][tt] = static_cast<std::uint8_t>(rem % t.nz);
      rem /= t.nz;
    }
  }

  Vec letter_kernel;
  std::vector<std::vector<std::vector<std::uint8_t>>> cls1, cls2;
  const std::size_t nv2sz = law.pV2.size();
  if (!cc) {
    const CondPmf& k1 = law.pX1gV1;
    const CondPmf& k2 = law.pX2gV2;
    letter_kernel.assign(law.pV1.size() * nv2sz * t.nz, 0.0);
    for (std::size_t v1 = 0; v1 < law.pV1.size(); ++v1)
      for (std::size_t v2 = 0; v2 < nv2sz; ++v2)
        for (std::size_t x1 = 0; x1 < t.nx1; ++x1)
          for (std::size_t x2 = 0; x2 < t.nx2; ++x2) {
            const double w = k1.at(v1, x1) * k2.at(v2, x2);
            if (w <= 0.0) continue;
            for (std::size_t z = 0; z < t.nz; ++z)
              letter_kernel[(v1 * nv2sz + v2) * t.nz + z] +=
                  w * zk[(x1 * t.nx2 + x2) * t.nz + z];
          }
  } else {
    for (const auto& v : c1.seqs) cls1.push_back(enumerate_conditional_class(*setup.jt1, v));
    for (const auto& v : c2.seqs) cls2.push_back(enumerate_conditional_class(*setup.jt2, v));
  }

  std::vector<Vec> table(c1.seqs.size() * c2.seqs.size(), Vec(zn, 0.0));
  parallel_for(table.size(), [&](std::size_t pair) {
    const std::size_t i = pair / c2.seqs.size();
    const std::size_t j = pair % c2.seqs.size();
    Vec& out = table[pair];
    if (!cc) {
      for (std::uint64_t zi = 0; zi < zn; ++zi) {
        double p = 1.0;
        for (int tt = 0; tt < n; ++tt)
          p *= letter_kernel[(c1.seqs[i][tt] * nv2sz + c2.seqs[j][tt]) * t.nz +
                             zdigits[zi][tt]];
        out[zi] = p;
      }
    } else {
      const double w = 1.0 / (static_cast<double>(cls1[i].size()) * cls2[j].size());
      for (const auto& x1 : cls1[i])
        for (const auto& x2 : cls2[j])
          for (std::uint64_t zi = 0; zi < zn; ++zi) {
            double p = 1.0;
            for (int tt = 0; tt < n; ++tt)
              p *= zk[(x1[tt] * t.nx2 + x2[tt]) * t.nz + zdigits[zi][tt]];
            out[zi] += w * p;
          }
    }
  });

  // Reference output law: the candidate-weighted mixture.
  Vec pz(zn, 0.0);
  for (std::size_t i = 0; i < c1.seqs.size(); ++i)
    for (std::size_t j = 0; j < c2.seqs.size(); ++j) {
      const double w = c1.probs[i] * c2.probs[j];
      const Vec& row = table[i * c2.seqs.size() + j];
      for (std::uint64_t zi = 0; zi < zn; ++zi) pz[zi] += w * row[zi];
    }

  // D_{1+s}(P_{Z^n|codebook} || P_{Z^n}) on the whole grid at once.
  const auto divergences_of = [&](const std::vector<std::size_t>& pick1,
                                  const std::vector<std::size_t>& pick2, Vec& out) {
    Vec pzc(zn, 0.0);
    const double w = 1.0 / (static_cast<double>(L1) * L2);
    for (std::size_t a : pick1)
      for (std::size_t b : pick2) {
        const Vec& row = table[a * c2.seqs.size() + b];
        for (std::uint64_t zi = 0; zi < zn; ++zi) pzc[zi] += w * row[zi];
      }
    for (std::size_t si = 0; si < s_grid.size(); ++si)
      out[si] = renyi_div_vec(pzc, pz, s_grid[si]);
  };

  VerifyReport rep;
  rep.quantity = "resolvability";
  rep.mode = cc ? "constant_composition" : "iid";
  rep.method = method == VerifyMethod::enumerate ? "enumerate" : "sample";
  rep.n = n;
  rep.L1 = L1;
  rep.L2 = L2;
  rep.N = 0;

  Vec lhs(s_grid.size(), 0.0), lhs_sq(s_grid.size(), 0.0);
  if (method == VerifyMethod::enumerate) {
    const double la =
        (L1 * std::log(static_cast<double>(c1.seqs.size())) +
         L2 * std::log(static_cast<double>(c2.seqs.size())));
    if (la > std::log(static_cast<double>(kEnsembleCap)))
      throw SizingError("verify: codebook ensemble exceeds the enumeration cap");
    std::vector<std::size_t> pick1(L1, 0), pick2(L2, 0);
    Vec divs(s_grid.size(), 0.0);
    std::uint64_t count = 0;
    bool more1 = true;
    while (more1) {
      double w1 = 1.0;
      for (std::size_t a : pick1) w1 *= c1.probs[a];
      std::fill(pick2.begin(), pick2.end(), 0);
      bool more2 = true;
      while (more2) {
        double w = w1;
        for (std::size_t b : pick2) w *= c2.probs[b];
        ++count;
        if (w > 0.0) {
          divergences_of(pick1, pick2, divs);
          for (std::size_t si = 0; si < s_grid.size(); ++si) lhs[si] += w * divs[si];
        }
        more2 = advance(pick2, c2.seqs.size());
      }
      more1 = advance(pick1, c1.seqs.size());
    }
    rep.realizations = static_cast<long>(count);
  } else {
    if (num_codebooks < 1) throw ValidationError("verify: need at least one sampled codebook");
    const Pmf cand_pmf1(c1.probs), cand_pmf2(c2.probs);
    std::vector<Vec> per_real(num_codebooks, Vec(s_grid.size(), 0.0));
    parallel_for(static_cast<std::size_t>(num_codebooks), [&](std::size_t r) {
      CounterRng rng(seed, kVerifyBase + r);
      std::vector<std::size_t> pick1(L1), pick2(L2);
      for (long a = 0; a < L1; ++a)
        pick1[a] = cc ? rng.next_below(c1.seqs.size()) : rng.sample(cand_pmf1);
      for (long b = 0; b < L2; ++b)
        pick2[b] = cc ? rng.next_below(c2.seqs.size()) : rng.sample(cand_pmf2);
      divergences_of(pick1, pick2, per_real[r]);
    });
    for (long r = 0; r < num_codebooks; ++r)
      for (std::size_t si = 0; si < s_grid.size(); ++si) {
        lhs[si] += per_real[r][si] / num_codebooks;
        lhs_sq[si] += per_real[r][si] * per_real[r][si] / num_codebooks;
      }
    rep.realizations = num_codebooks;
  }

  for (std::size_t si = 0; si < s_grid.size(); ++si) {
    VerifyRow row{};
    row.s = s_grid[si];
    row.lhs = lhs[si];
    row.rhs = rhs_at(s_grid[si]);
    row.slack = row.rhs - row.lhs;
    row.holds = row.lhs <= row.rhs + 1e-9;
    if (method == VerifyMethod::sample && num_codebooks > 1) {
      const double var =
          std::max(0.0, (lhs_sq[si] - lhs[si] * lhs[si]) * num_codebooks / (num_codebooks - 1));
      row.lhs_ci = kZ95 * std::sqrt(var / num_codebooks);
    }
    rep.all_hold = rep.all_hold && row.holds;
    rep.rows.push_back(row);
  }
  return rep;
}

VerifyReport verify_gallager(const ChannelTensor& t, const VerifySetup& setup, long N,
                             const std::vector<double>& s_grid, VerifyMethod method,
                             long num_codebooks, std::uint64_t seed) {
  check_setup(t, setup);
  if (N < 1) throw ValidationError("verify: N must be >= 1");
  if (s_grid.empty()) throw ValidationError("verify: empty s grid");
  for (double s : s_grid)
    if (!(s > 0.0) || s > 1.0) throw ValidationError("verify: s must lie in (0,1]");
  const bool cc = setup.mode == CodebookMode::constant_composition;
  const int n = setup.n;
  const JointInputLaw law = setup_law(setup);

  // Receiver 1 decodes user 2's N messages knowing its own X1.
  const Vec yk = y_kernel(t, 1);
  const std::size_t ny = t.ny1;
  const CondPmf cond2 = cc ? setup.jt2->conditional() : law.pX2gV2;
  const Pmf pv2 = law.pV2;
  const Pmf px1 = law.x1_marginal();
  const std::size_t nv2 = pv2.size();

  // Single-letter kernel P(y1 | v2, x1), rows v2-major over x1.
  Vec K(nv2 * t.nx1 * ny, 0.0);
  for (std::size_t v2 = 0; v2 < nv2; ++v2)
    for (std::size_t x1 = 0; x1 < t.nx1; ++x1)
      for (std::size_t yy = 0; yy < ny; ++yy) {
        double sum = 0.0;
        for (std::size_t x2 = 0; x2 < t.nx2; ++x2)
          sum += cond2.at(v2, x2) * yk[(x1 * t.nx2 + x2) * ny + yy];
        K[(v2 * t.nx1 + x1) * ny + yy] = sum;
      }
  const CondPmf chan_cond(nv2 * t.nx1, ny, K);

  double log_factor_base = 0.0;  // s-independent part of the cc factor
  if (cc) log_factor_base = log_nu_exact(t.nx1, n) + log_nu_exact(t.nx2, n);
  const double ltc = cc ? std::log(static_cast<double>(type_count(ny * t.nx1, n))) : 0.0;
  const double lnu_yx = cc ? log_nu_exact(ny * t.nx1, n) : 0.0;

  const auto rhs_at = [&](double s) {
    const double iu = cc ? breve_mi_conditional(chan_cond, pv2, px1, 1.0 / (1.0 + s))
                         : mi_up_conditional(chan_cond, product_joint(pv2, px1), s);
    const double lf = cc ? log_factor_base + (1.0 + s) * ltc + s * lnu_yx : 0.0;
    return std::exp(lf + s * std::log(static_cast<double>(N)) - s * n * iu);
  };

  // Candidate pools: user-2 codewords and the receiver-side X1 sequences.
  CandSet cands, x1s;
  if (!cc) {
    cands = product_candidates(pv2, n, kEnsembleCap);
    x1s = product_candidates(px1, n, kEnsembleCap);
  } else {
    cands = class_candidates(setup.jt2->v_marginal());
    x1s = class_candidates(setup.jt1->x_marginal());
  }
  const std::uint64_t yn =
      pow_guarded(ny, n, kLeakageEntryCap, "verify: |Y|^n exceeds the entry budget");
  if (cands.seqs.size() * x1s.seqs.size() > kLeakageEntryCap / yn)
    throw SizingError("verify: output table exceeds the entry budget");

  std::vector<std::vector<std::uint8_t>> ydigits(yn, std::vector<std::uint8_t>(n));
  for (std::uint64_t yi = 0; yi < yn; ++yi) {
    std::uint64_t rem = yi;
    for (int tt = n - 1; tt >= 0; --tt) {
      ydigits[yi][tt] = static_cast<std::uint8_t>(rem % ny);
      rem /= ny;
    }
  }

  // Block likelihood P(y^n | v2 candidate, x1 candidate): product form in the
  // iid setting, conditional-class average in constant composition.
  std::vector<std::vector<std::vector<std::uint8_t>>> cls2;
  if (cc)
    for (const auto& v : cands.seqs) cls2.push_back(enumerate_conditional_class(*setup.jt2, v));
  std::vector<Vec> lik(cands.seqs.size() * x1s.seqs.size(), Vec(yn, 0.0));
  parallel_for(lik.size(), [&](std::size_t pair) {
    const std::size_t ci = pair / x1s.seqs.size();
    const std::size_t xi = pair % x1s.seqs.size();
    Vec& out = lik[pair];
    if (!cc) {
      for (std::uint64_t yi = 0; yi < yn; ++yi) {
        double p = 1.0;
        for (int tt = 0; tt < n; ++tt)
          p *= K[(cands.seqs[ci][tt] * t.nx1 + x1s.seqs[xi][tt]) * ny + ydigits[yi][tt]];
        out[yi] = p;
      }
    } else {
      const double w = 1.0 / cls2[ci].size();
      for (const auto& x2 : cls2[ci])
        for (std::uint64_t yi = 0; yi < yn; ++yi) {
          double p = 1.0;
          for (int tt = 0; tt < n; ++tt)
            p *= yk[(x1s.seqs[xi][tt] * t.nx2 + x2[tt]) * ny + ydigits[yi][tt]];
          out[yi] += w * p;
        }
    }
  });

  // Exact ML error of one codebook assignment, averaged over X1 and Y.
  const auto error_of = [&](const std::vector<std::size_t>& pick) {
    double err = 0.0;
    for (std::size_t xi = 0; xi < x1s.seqs.size(); ++xi) {
      const double wx = x1s.probs[xi];
      if (wx <= 0.0) continue;
      double e_x = 0.0;
      for (std::uint64_t yi = 0; yi < yn; ++yi) {
        // Decoder: argmax over candidates, ties to the lowest index.
        std::size_t best = 0;
        double best_p = -1.0;
        for (std::size_t m = 0; m < pick.size(); ++m) {
          const double p = lik[pick[m] * x1s.seqs.size() + xi][yi];
          if (p > best_p) {
            best_p = p;
            best = m;
          }
        }
        for (std::size_t m = 0; m < pick.size(); ++m)
          if (m != best) e_x += lik[pick[m] * x1s.seqs.size() + xi][yi] / pick.size();
      }
      err += wx * e_x;
    }
    return err;
  };

  VerifyReport rep;
  rep.quantity = "gallager";
  rep.mode = cc ? "constant_composition" : "iid";
  rep.method = method == VerifyMethod::enumerate ? "enumerate" : "sample";
  rep.n = n;
  rep.N = N;

  double lhs = 0.0, lhs_sq = 0.0;
  if (method == VerifyMethod::enumerate) {
    const double la = N * std::log(static_cast<double>(cands.seqs.size()));
    if (la > std::log(static_cast<double>(kEnsembleCap)))
      throw SizingError("verify: codebook ensemble exceeds the enumeration cap");
    std::vector<std::size_t> pick(N, 0);
    std::uint64_t count = 0;
    bool more = true;
    while (more) {
      double w = 1.0;
      for (std::size_t m : pick) w *= cands.probs[m];
      ++count;
      if (w > 0.0) lhs += w * error_of(pick);
      more = advance(pick, cands.seqs.size());
    }
    rep.realizations = static_cast<long>(count);
  } else {
    if (num_codebooks < 1) throw ValidationError("verify: need at least one sampled codebook");
    const Pmf cand_pmf(cands.probs);
    Vec per_real(num_codebooks, 0.0);
    parallel_for(static_cast<std::size_t>(num_codebooks), [&](std::size_t r) {
      CounterRng rng(seed, kVerifyBase + r);
      std::vector<std::size_t> pick(N);
      for (long m = 0; m < N; ++m)
        pick[m] = cc ? rng.next_below(cands.seqs.size()) : rng.sample(cand_pmf);
      per_real[r] = error_of(pick);
    });
    for (double v : per_real) {
      lhs += v / num_codebooks;
      lhs_sq += v * v / num_codebooks;
    }
    rep.realizations = num_codebooks;
  }

  double ci = 0.0;
  if (method == VerifyMethod::sample && num_codebooks > 1) {
    const double var =
        std::max(0.0, (lhs_sq - lhs * lhs) * num_codebooks / (num_codebooks - 1));
    ci = kZ95 * std::sqrt(var / num_codebooks);
  }
  for (double s : s_grid) {
    VerifyRow row{};
    row.s = s;
    row.lhs = lhs;
    row.rhs = rhs_at(s);
    row.slack = row.rhs - row.lhs;
    row.holds = row.lhs <= row.rhs + 1e-9;
    row.lhs_ci = ci;
    rep.all_hold = rep.all_hold && row.holds;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace twwc
