#pragma once

#include <cstddef>
#include <vector>

namespace twwc {

using Vec = std::vector<double>;

// Validation tolerance for probability normalization.
inline constexpr double kProbTol = 1e-9;
// Entries below this are treated as exact zeros before support computation.
inline constexpr double kZeroClamp = 1e-15;

// A probability mass function on a finite alphabet {0..size-1}.
// Construction validates: entries >= 0 and sum within kProbTol of 1.
class Pmf {
 public:
  explicit Pmf(Vec probs);
  static Pmf uniform(std::size_t n);
  static Pmf point_mass(std::size_t n, std::size_t at);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const Vec& probs() const { return p_; }

 private:
  Vec p_;
};

// A conditional law: one Pmf over {0..n_out-1} per input symbol {0..n_in-1}.
class CondPmf {
 public:
  CondPmf(std::size_t n_in, std::size_t n_out, Vec flat_row_major);
  static CondPmf identity(std::size_t n);

  std::size_t n_in() const { return n_in_; }
  std::size_t n_out() const { return n_out_; }
  double at(std::size_t in, std::size_t out) const { return p_[in * n_out_ + out]; }
  Pmf row(std::size_t in) const;
  const Vec& flat() const { return p_; }

 private:
  std::size_t n_in_, n_out_;
  Vec p_;
};

// A joint law over a product alphabet A x B, row-major p[a*nb + b].
struct JointPmf {
  std::size_t na = 0, nb = 0;
  Vec p;

  JointPmf(std::size_t na, std::size_t nb, Vec probs);
  double at(std::size_t a, std::size_t b) const { return p[a * nb + b]; }
  Pmf marginal_a() const;
  Pmf marginal_b() const;
  Pmf as_pmf() const { return Pmf(p); }
};

// Product joint from independent marginals.
JointPmf product_joint(const Pmf& pa, const Pmf& pb);
// Joint over (A,B) from an input law and a channel A -> B.
JointPmf chain_joint(const Pmf& pa, const CondPmf& pb_given_a);
// x marginal of an input law V -> X.
Pmf push_forward(const Pmf& pv, const CondPmf& px_given_v);

double total_variation(const Pmf& a, const Pmf& b);

}  // namespace twwc
