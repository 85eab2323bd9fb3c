#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twwc/channel.hpp"
#include "twwc/rng.hpp"
#include "twwc/typelib.hpp"

namespace twwc {

enum class CodebookMode { iid, constant_composition };

// Per-user codeword budget (symbols) for generate_codebook.
inline constexpr std::uint64_t kCodebookSymbolCap = 10'000'000;
// Entry budget for exact leakage enumeration: |Z|^n * M1 L1 M2 L2.
inline constexpr std::uint64_t kLeakageEntryCap = 10'000'000;
// Realization budget for exact verification ensembles.
inline constexpr std::uint64_t kEnsembleCap = 1'000'000;

struct CodebookParams {
  int n = 1;
  long M1 = 1, L1 = 1, M2 = 1, L2 = 1;
  CodebookMode mode = CodebookMode::iid;
  std::optional<JointInputLaw> law;        // iid mode
  std::optional<JointType> jt1, jt2;       // constant-composition mode
};

// A realized non-adaptive wiretap codebook: user i holds M_i*L_i codewords
// over V_i^n; codeword j (0-based) carries message j/L_i + 1.
struct Codebook {
  CodebookParams params;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::uint8_t>> cw1, cw2;
};

Codebook generate_codebook(const CodebookParams& params, std::uint64_t seed);

struct Encoded {
  std::vector<std::uint8_t> v, x;
  long index;  // 0-based codeword index within the user's list
};

// Encode message m (1-based): uniform pick among the message's L codewords,
// then per-letter X|V sampling (iid) or a conditional type-class draw (cc).
Encoded encode(const Codebook& cb, int user, long m, CounterRng& rng);

// 2nd-type ML decoding of the other user's message at receiver `user`:
// argmax over candidate codewords v of prod_t P(y_t | v_t, x_t) with the
// pre-processing marginalized per letter; ties go to the lowest codeword
// index. Returns the 1-based message estimate.
long ml_decode(const Codebook& cb, const ChannelTensor& t, int user,
               const std::vector<std::uint8_t>& y, const std::vector<std::uint8_t>& x_own);

struct SimResult {
  long trials = 0;
  long errors = 0;
  double estimate = 0;
  double wilson_lo = 0, wilson_hi = 0;
  std::optional<std::array<double, 3>> leakage;  // joint, m1, m2 (nats)
};

// Monte Carlo estimate of the union error event {M1 != est} or {M2 != est}
// with uniform messages; Wilson 95% interval.
SimResult run_error_trials(const ChannelTensor& t, const Codebook& cb, long trials,
                           std::uint64_t seed);

// Exact leakages (I(M1,M2;Z^n), I(M1;Z^n), I(M2;Z^n)) of the realized
// codebook by full enumeration; guarded, never Monte Carlo.
std::array<double, 3> exact_leakage(const ChannelTensor& t, const Codebook& cb);

struct VerifyRow {
  double s;
  double lhs;
  double rhs;
  double slack;  // rhs - lhs
  bool holds;    // lhs <= rhs + 1e-9
  double lhs_ci = 0;  // sampled mode: 95% halfwidth on lhs
};

struct VerifyReport {
  std::string quantity;  // "resolvability" | "gallager"
  std::string mode;      // "iid" | "constant_composition"
  std::string method;    // "enumerate" | "sample"
  int n = 0;
  long L1 = 0, L2 = 0, N = 0;
  long realizations = 0;  // enumerated assignments or sampled codebooks
  std::vector<VerifyRow> rows;
  bool all_hold = true;
};

// Inputs shared by the verification harnesses: the channel plus either an
// iid input law or per-user joint types at blocklength n.
struct VerifySetup {
  int n = 1;
  CodebookMode mode = CodebookMode::iid;
  std::optional<JointInputLaw> law;
  std::optional<JointType> jt1, jt2;
};

enum class VerifyMethod { enumerate, sample };

// Resolvability check: E_C[ D_{1+s}(P_{Z^n|C} || P_{Z^n}) ] against
//   iid: sum over nonempty S of (prod_{i in S} L_i)^{-s} e^{s n Id_{1+s}(Z;V_S)}
//   cc : nu_n(|X1|) nu_n(|X2|) times the same sum with e^{s n Augustin_{1/(1-s)}(Z;V_S)}
// The reference P_{Z^n} is the channel output of the iid (resp. uniform
// type-class) input. Exact expectation by ensemble enumeration, or a sampled
// mean with confidence halfwidth.
VerifyReport verify_resolvability(const ChannelTensor& t, const VerifySetup& setup, long L1,
                                  long L2, const std::vector<double>& s_grid,
                                  VerifyMethod method, long num_codebooks, std::uint64_t seed);

// Random-coding error check for N codewords of user 2 decoded at receiver 1
// (which observes Y1 and knows its own X1): E[ML error] against
//   iid: N^s e^{-s n Iu_{1/(1+s)}(Y1;V2|X1)}
//   cc : |T_n(Y1 x X1)|^{1+s} nu_n(|Y1||X1|)^s nu_n(|X1|) nu_n(|X2|) N^s
//        e^{-s n Augustin_{1/(1+s)}(Y1;V2|X1)}
// cc mode scores candidates by the exact block likelihood (conditional
// type-class average); the mirrored direction is obtained by transposing the
// channel.
VerifyReport verify_gallager(const ChannelTensor& t, const VerifySetup& setup, long N,
                             const std::vector<double>& s_grid, VerifyMethod method,
                             long num_codebooks, std::uint64_t seed);

}  // namespace twwc
