#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "twwc/errors.hpp"

namespace twwc {

// Exact rational on 64-bit numerator/denominator with overflow checks via
// 128-bit intermediates. Plenty for the constraint systems this project
// projects; overflow throws rather than silently degrading.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) { assign(n, d); }

  static Rational parse(const std::string& text);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator+(const Rational& o) const {
    return from128(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
  }
  Rational operator-(const Rational& o) const { return *this + (-o); }
  Rational operator*(const Rational& o) const {
    return from128(i128(num_) * o.num_, i128(den_) * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw ValidationError("rational division by zero");
    return from128(i128(num_) * o.den_, i128(den_) * o.num_);
  }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return i128(num_) * o.den_ < i128(o.num_) * den_;
  }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  void assign(long long n, long long d) {
    if (d == 0) throw ValidationError("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    num_ = n;
    den_ = d;
  }

  static Rational from128(i128 n, i128 d) {
    if (d == 0) throw ValidationError("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b) { i128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    constexpr i128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim)
      throw ValidationError("rational overflow during exact elimination");
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  long long num_, den_;
};

// Accepts "p", "p/q", and plain decimals like "-0.125" (converted exactly).
inline Rational Rational::parse(const std::string& text) {
  const auto bad = [&] { throw ValidationError("cannot parse rational: '" + text + "'"); };
  if (text.empty()) bad();
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t p1 = 0, p2 = 0;
      long long n = std::stoll(text.substr(0, slash), &p1);
      long long d = std::stoll(text.substr(slash + 1), &p2);
      if (p1 != slash || p2 != text.size() - slash - 1) bad();
      return Rational(n, d);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
      std::size_t pos = 0;
      long long n = std::stoll(text, &pos);
      if (pos != text.size()) bad();
      return Rational(n);
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac = text.size() - dot - 1;
    if (frac == 0 || frac > 17) bad();
    std::size_t pos = 0;
    long long n = std::stoll(digits, &pos);
    if (pos != digits.size()) bad();
    long long d = 1;
    for (std::size_t i = 0; i < frac; ++i) {
      if (d > INT64_MAX / 10) bad();
      d *= 10;
    }
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    bad();
  } catch (const std::out_of_range&) {
    bad();
  }
  return Rational();  // unreachable
}

}  // namespace twwc
