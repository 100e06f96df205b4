#ifndef SYMSPACE_EXACT_SCALAR_HPP
#define SYMSPACE_EXACT_SCALAR_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numbers>

namespace symspace {

// A real number held as mantissa * 2^exp2 with a 64-bit exponent.
//
// The mantissa magnitude is kept in [1, 2) (or the value is exactly zero), so
// quantities such as 2^-2000 or b_k * 2^-k with huge k never under- or
// overflow.  Arithmetic rounds the mantissa exactly like double arithmetic
// does; only the exponent range is extended.
class ExactScalar {
 public:
  constexpr ExactScalar() = default;

  explicit ExactScalar(double x) { assign(x, 0); }

  static ExactScalar from_parts(double mantissa, std::int64_t exp2) {
    ExactScalar r;
    r.assign(mantissa, exp2);
    return r;
  }

  static ExactScalar pow2(std::int64_t e) {
    ExactScalar r;
    r.mantissa_ = 1.0;
    r.exp2_ = e;
    return r;
  }

  double mantissa() const { return mantissa_; }
  std::int64_t exp2() const { return exp2_; }
  bool is_zero() const { return mantissa_ == 0.0; }
  bool is_negative() const { return mantissa_ < 0.0; }

  // Nearest double; underflows to zero / overflows to infinity gracefully.
  double to_double() const {
    if (mantissa_ == 0.0) return 0.0;
    if (exp2_ > 2000) return std::copysign(std::numeric_limits<double>::infinity(), mantissa_);
    if (exp2_ < -2000) return std::copysign(0.0, mantissa_);
    return std::ldexp(mantissa_, static_cast<int>(exp2_));
  }

  // log2 |x|; -inf for zero.
  double log2_abs() const {
    if (mantissa_ == 0.0) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(exp2_) + std::log2(std::fabs(mantissa_));
  }

  double log_abs() const { return log2_abs() * std::numbers::ln2; }

  ExactScalar abs() const {
    ExactScalar r = *this;
    r.mantissa_ = std::fabs(r.mantissa_);
    return r;
  }

  ExactScalar sqrt() const {
    if (mantissa_ < 0.0) return ExactScalar(std::numeric_limits<double>::quiet_NaN());
    if (mantissa_ == 0.0) return {};
    // make the exponent even so the root splits exactly
    double m = mantissa_;
    std::int64_t e = exp2_;
    if (e % 2 != 0) {
      m *= 2.0;
      e -= 1;
    }
    return from_parts(std::sqrt(m), e / 2);
  }

  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    return from_parts(a.mantissa_ * b.mantissa_, a.exp2_ + b.exp2_);
  }

  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    return from_parts(a.mantissa_ / b.mantissa_, a.exp2_ - b.exp2_);
  }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ExactScalar& big = a.exp2_ >= b.exp2_ ? a : b;
    const ExactScalar& small = a.exp2_ >= b.exp2_ ? b : a;
    const std::int64_t shift = big.exp2_ - small.exp2_;
    if (shift > 64) return big;
    return from_parts(big.mantissa_ + std::ldexp(small.mantissa_, -static_cast<int>(shift)), big.exp2_);
  }

  friend ExactScalar operator-(const ExactScalar& a) {
    ExactScalar r = a;
    r.mantissa_ = -r.mantissa_;
    return r;
  }

  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.mantissa_ == b.mantissa_ && (a.mantissa_ == 0.0 || a.exp2_ == b.exp2_);
  }

  friend std::partial_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
    const bool an = a.mantissa_ < 0.0, bn = b.mantissa_ < 0.0;
    if (a.is_zero() || b.is_zero() || an != bn) return a.mantissa_ <=> b.mantissa_;
    // same sign, both nonzero
    if (a.exp2_ != b.exp2_) {
      const bool a_bigger_mag = a.exp2_ > b.exp2_;
      if (an) return a_bigger_mag ? std::partial_ordering::less : std::partial_ordering::greater;
      return a_bigger_mag ? std::partial_ordering::greater : std::partial_ordering::less;
    }
    return a.mantissa_ <=> b.mantissa_;
  }

 private:
  void assign(double m, std::int64_t e) {
    if (m == 0.0 || !std::isfinite(m)) {
      mantissa_ = m;
      exp2_ = 0;
      return;
    }
    int k = 0;
    const double f = std::frexp(m, &k);  // |f| in [0.5, 1)
    mantissa_ = f * 2.0;
    exp2_ = e + k - 1;
  }

  double mantissa_ = 0.0;
  std::int64_t exp2_ = 0;
};

}  // namespace symspace

#endif  // SYMSPACE_EXACT_SCALAR_HPP
