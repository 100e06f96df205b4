#ifndef SYMSPACE_STEP_FUNCTION_HPP
#define SYMSPACE_STEP_FUNCTION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symspace/errors.hpp"
#include "symspace/exact_scalar.hpp"

namespace symspace {

// A point of [0,1].  Exact powers of two remember their exponent so that
// closed-form weights can evaluate log2(t) without rounding, and so that
// points below the double range (2^-2000, say) still have a meaning.
class Breakpoint {
 public:
  constexpr Breakpoint() = default;

  // Implicit on purpose: any double in [0,1] is a breakpoint.  Exact powers
  // of two are detected and tagged.
  Breakpoint(double t) : value_(t) {  // NOLINT(google-explicit-constructor)
    if (t > 0.0 && std::isfinite(t)) {
      int e = 0;
      const double f = std::frexp(t, &e);
      if (f == 0.5) dyadic_ = -(e - 1);
    }
  }

  // 2^-e for an integer e >= 0.
  static Breakpoint dyadic(std::int64_t e) {
    Breakpoint b;
    b.value_ = e > 1100 ? 0.0 : std::ldexp(1.0, -static_cast<int>(e));
    b.dyadic_ = e;
    return b;
  }

  static Breakpoint rational(std::int64_t p, std::int64_t q) {
    if (q <= 0 || p < 0 || p > q) throw DomainError("rational breakpoint must lie in [0,1]");
    return Breakpoint(static_cast<double>(p) / static_cast<double>(q));
  }

  double value() const { return value_; }
  std::optional<std::int64_t> dyadic_exponent() const { return dyadic_; }

  // Natural log of the point, exact for dyadic points of any depth.
  double log() const {
    if (dyadic_) return -static_cast<double>(*dyadic_) * std::numbers::ln2;
    return std::log(value_);
  }

  // log2(t), exact for dyadic points.
  double log2() const {
    if (dyadic_) return -static_cast<double>(*dyadic_);
    return std::log2(value_);
  }

  // The point as an extended-range scalar.
  ExactScalar exact() const {
    if (dyadic_) return ExactScalar::pow2(-*dyadic_);
    return ExactScalar(value_);
  }

  friend bool operator==(const Breakpoint& a, const Breakpoint& b) {
    if (a.dyadic_ && b.dyadic_) return *a.dyadic_ == *b.dyadic_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const Breakpoint& a, const Breakpoint& b) {
    if (a.dyadic_ && b.dyadic_) return *a.dyadic_ > *b.dyadic_;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Breakpoint& a, const Breakpoint& b) { return !(b < a); }

 private:
  double value_ = 0.0;
  std::optional<std::int64_t> dyadic_;
};

// A finitely-valued function on (0,1]: value v_i on the half-open block
// (t_{i-1}, t_i], with t_0 = 0 and t_K = 1.
//
// Block lengths are stored next to the breakpoints.  For functions assembled
// from lengths (rearrangements) the lengths are the exact data and the
// breakpoints are their running sums.
class StepFunction {
 public:
  // `right` lists t_1 < ... < t_K = 1 (0 excluded).
  StepFunction(std::vector<Breakpoint> right, std::vector<double> values) {
    if (right.empty() || right.size() != values.size())
      throw DomainError("step function needs one value per block");
    if (right.back().value() != 1.0) throw DomainError("last breakpoint must be 1");
    std::vector<double> lengths(right.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < right.size(); ++i) {
      if (right[i].value() <= prev || (i > 0 && !(right[i - 1] < right[i])))
        throw DomainError("breakpoints must be strictly increasing in (0,1]");
      if (!std::isfinite(values[i])) throw DomainError("step function values must be finite");
      lengths[i] = right[i].value() - prev;
      prev = right[i].value();
    }
    right_ = std::move(right);
    values_ = std::move(values);
    lengths_ = std::move(lengths);
    canonicalize();
  }

  // Lay blocks of the given lengths side by side starting at 0.  Lengths must
  // be positive and sum to 1 (up to rounding); the last breakpoint is pinned to 1.
  static StepFunction from_lengths(std::span<const double> lengths, std::span<const double> values) {
    if (lengths.empty() || lengths.size() != values.size())
      throw DomainError("step function needs one value per block");
    StepFunction f;
    double pos = 0.0, comp = 0.0;  // Neumaier running sum
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      if (!(lengths[i] > 0.0)) throw DomainError("block lengths must be positive");
      if (!std::isfinite(values[i])) throw DomainError("step function values must be finite");
      const double t = pos + lengths[i];
      if (std::fabs(pos) >= std::fabs(lengths[i]))
        comp += (pos - t) + lengths[i];
      else
        comp += (lengths[i] - t) + pos;
      pos = t;
      const double at = pos + comp;
      const bool last = i + 1 == lengths.size();
      if (!last && (!f.right_.empty() && at <= f.right_.back().value())) {
        // absorbed by rounding: fold into the previous block
        f.lengths_.back() += lengths[i];
        continue;
      }
      f.right_.emplace_back(last ? 1.0 : at);
      f.values_.push_back(values[i]);
      f.lengths_.push_back(lengths[i]);
    }
    if (std::fabs(pos + comp - 1.0) > 1e-9) throw DomainError("block lengths must sum to 1");
    // a trailing block shorter than ulp(1) cannot get its own breakpoint
    while (f.right_.size() >= 2 && f.right_[f.right_.size() - 2].value() >= 1.0) {
      const double tail = f.lengths_.back();
      f.right_.pop_back();
      f.values_.pop_back();
      f.lengths_.pop_back();
      f.lengths_.back() += tail;
      f.right_.back() = Breakpoint(1.0);
    }
    f.canonicalize();
    return f;
  }

  static StepFunction constant(double c) { return StepFunction({Breakpoint(1.0)}, {c}); }

  // chi_(0,a]
  static StepFunction indicator(Breakpoint a) { return indicator(Breakpoint(0.0), a); }

  // chi_(lo,hi]
  static StepFunction indicator(Breakpoint lo, Breakpoint hi) {
    if (!(lo < hi) || hi.value() > 1.0) throw DomainError("indicator needs 0 <= lo < hi <= 1");
    std::vector<Breakpoint> r;
    std::vector<double> v;
    if (lo.value() > 0.0) {
      r.push_back(lo);
      v.push_back(0.0);
    }
    r.push_back(hi);
    v.push_back(1.0);
    if (hi.value() < 1.0) {
      r.emplace_back(1.0);
      v.push_back(0.0);
    }
    return StepFunction(std::move(r), std::move(v));
  }

  std::size_t size() const { return values_.size(); }
  std::span<const Breakpoint> breakpoints() const { return right_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> lengths() const { return lengths_; }

  Breakpoint left(std::size_t i) const { return i == 0 ? Breakpoint(0.0) : right_[i - 1]; }
  Breakpoint right(std::size_t i) const { return right_[i]; }

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
  }

  // Value at t in (0,1] (blocks are closed on the right).
  double value_at(double t) const {
    if (!(t > 0.0) || t > 1.0) throw DomainError("step functions live on (0,1]");
    auto it = std::lower_bound(right_.begin(), right_.end(), t,
                               [](const Breakpoint& b, double x) { return b.value() < x; });
    return values_[static_cast<std::size_t>(it - right_.begin())];
  }

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.right_ == b.right_ && a.values_ == b.values_;
  }

 private:
  StepFunction() = default;

  void canonicalize() {
    std::size_t out = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (out > 0 && values_[out - 1] == values_[i]) {
        right_[out - 1] = right_[i];
        lengths_[out - 1] += lengths_[i];
        continue;
      }
      right_[out] = right_[i];
      values_[out] = values_[i];
      lengths_[out] = lengths_[i];
      ++out;
    }
    right_.resize(out);
    values_.resize(out);
    lengths_.resize(out);
  }

  std::vector<Breakpoint> right_;
  std::vector<double> values_;
  std::vector<double> lengths_;
};

namespace detail {

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Walk the common refinement of several step functions.  `visit` receives
// (lo, hi, length, index-of-block-in-each-function).
template <class Visit>
void for_each_common_block(std::span<const StepFunction* const> fns, Visit&& visit) {
  std::vector<Breakpoint> cuts;
  for (const StepFunction* f : fns)
    for (const Breakpoint& b : f->breakpoints()) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return a.value() < b.value(); });
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](const Breakpoint& a, const Breakpoint& b) { return a.value() == b.value(); }),
             cuts.end());
  std::vector<std::size_t> cursor(fns.size(), 0);
  Breakpoint lo(0.0);
  for (const Breakpoint& hi : cuts) {
    for (std::size_t j = 0; j < fns.size(); ++j)
      while (fns[j]->right(cursor[j]).value() < hi.value()) ++cursor[j];
    visit(lo, hi, hi.value() - lo.value(), std::span<const std::size_t>(cursor));
    lo = hi;
  }
}

}  // namespace detail

// Lebesgue measure of {t : |x(t)| > tau}.
inline double distribution(const StepFunction& x, double tau) {
  if (!(tau > 0.0)) throw DomainError("distribution needs tau > 0");
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::fabs(x.values()[i]) > tau) s.add(x.lengths()[i]);
  return s.value();
}

// Pointwise map v -> op(v).
template <class Op>
StepFunction map_values(const StepFunction& x, Op op) {
  std::vector<double> v(x.values().begin(), x.values().end());
  for (double& e : v) e = op(e);
  return StepFunction(std::vector<Breakpoint>(x.breakpoints().begin(), x.breakpoints().end()), std::move(v));
}

inline StepFunction abs(const StepFunction& x) {
  return map_values(x, [](double v) { return std::fabs(v); });
}

inline StepFunction scaled(const StepFunction& x, double c) {
  return map_values(x, [c](double v) { return c * v; });
}

// Pointwise binary operation on the common refinement.
template <class Op>
StepFunction combine(const StepFunction& x, const StepFunction& y, Op op) {
  std::vector<Breakpoint> right;
  std::vector<double> vals;
  const StepFunction* fns[] = {&x, &y};
  detail::for_each_common_block(std::span<const StepFunction* const>(fns),
                                [&](Breakpoint, Breakpoint hi, double, std::span<const std::size_t> idx) {
                                  right.push_back(hi);
                                  vals.push_back(op(x.values()[idx[0]], y.values()[idx[1]]));
                                });
  return StepFunction(std::move(right), std::move(vals));
}

inline StepFunction pointwise_sum(const StepFunction& x, const StepFunction& y) {
  return combine(x, y, [](double a, double b) { return a + b; });
}
inline StepFunction pointwise_max(const StepFunction& x, const StepFunction& y) {
  return combine(x, y, [](double a, double b) { return std::max(a, b); });
}
inline StepFunction pointwise_min(const StepFunction& x, const StepFunction& y) {
  return combine(x, y, [](double a, double b) { return std::min(a, b); });
}

// x * chi_(lo,hi]
inline StepFunction restrict_to(const StepFunction& x, Breakpoint lo, Breakpoint hi) {
  return combine(x, StepFunction::indicator(lo, hi), [](double a, double b) { return a * b; });
}

// Decreasing rearrangement x* of |x|: blocks sorted by |value|, descending.
inline StepFunction rearrange(const StepFunction& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(x.values()[a]) > std::fabs(x.values()[b]);
  });
  // merge ties before laying out so equal values share one block
  std::vector<double> lengths, values;
  for (std::size_t i : order) {
    const double v = std::fabs(x.values()[i]);
    if (!values.empty() && values.back() == v) {
      lengths.back() += x.lengths()[i];
    } else {
      values.push_back(v);
      lengths.push_back(x.lengths()[i]);
    }
  }
  return StepFunction::from_lengths(lengths, values);
}

// Integral of x over (a,b].  Products are formed in extended range.
inline double integrate(const StepFunction& x, double a = 0.0, double b = 1.0) {
  if (a > b) throw DomainError("integrate needs a <= b");
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = x.left(i).value(), hi = x.right(i).value();
    double len;
    if (a <= 0.0 && b >= 1.0)
      len = x.lengths()[i];
    else
      len = std::min(hi, b) - std::max(lo, a);
    if (len <= 0.0) continue;
    s.add((ExactScalar(x.values()[i]) * ExactScalar(len)).to_double());
  }
  return s.value();
}

// Integral of x*y over (0,1].
inline double inner_product(const StepFunction& x, const StepFunction& y) {
  detail::CompensatedSum s;
  const StepFunction* fns[] = {&x, &y};
  detail::for_each_common_block(std::span<const StepFunction* const>(fns),
                                [&](Breakpoint, Breakpoint, double len, std::span<const std::size_t> idx) {
                                  s.add(x.values()[idx[0]] * y.values()[idx[1]] * len);
                                });
  return s.value();
}

// L_p norm for 1 <= p < inf; p = inf gives the essential sup.
inline double lp_norm(const StepFunction& x, double p) {
  if (std::isinf(p)) return x.max_abs();
  if (!(p >= 1.0)) throw DomainError("lp_norm needs p >= 1");
  if (p == 1.0) return integrate(abs(x));
  const double m = x.max_abs();
  if (m == 0.0) return 0.0;
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i)
    s.add(std::pow(std::fabs(x.values()[i]) / m, p) * x.lengths()[i]);
  return m * std::pow(s.value(), 1.0 / p);
}

// sum_i coeffs[i] * parts[i] for parts with pairwise disjoint supports.
inline StepFunction disjoint_sum(std::span<const double> coeffs, std::span<const StepFunction> parts) {
  if (coeffs.size() != parts.size() || parts.empty())
    throw DomainError("disjoint_sum needs one coefficient per part");
  std::vector<const StepFunction*> fns;
  for (const StepFunction& p : parts) fns.push_back(&p);
  std::vector<Breakpoint> right;
  std::vector<double> vals;
  detail::for_each_common_block(std::span<const StepFunction* const>(fns),
                                [&](Breakpoint lo, Breakpoint hi, double len, std::span<const std::size_t> idx) {
                                  double v = 0.0;
                                  int owners = 0;
                                  for (std::size_t j = 0; j < fns.size(); ++j) {
                                    const double pv = fns[j]->values()[idx[j]];
                                    if (pv != 0.0) {
                                      ++owners;
                                      v += coeffs[j] * pv;
                                    }
                                  }
                                  if (owners > 1 && len > 0.0)
                                    throw OverlapError("parts overlap on (" + std::to_string(lo.value()) + ", " +
                                                       std::to_string(hi.value()) + "]");
                                  right.push_back(hi);
                                  vals.push_back(v);
                                });
  return StepFunction(std::move(right), std::move(vals));
}

// Place the blocks of x side by side in the given order.  Measure preserving,
// so every rearrangement-invariant quantity is unchanged.
inline StepFunction permute_blocks(const StepFunction& x, std::span<const std::size_t> order) {
  if (order.size() != x.size()) throw DomainError("permutation size mismatch");
  std::vector<double> lengths, values;
  for (std::size_t i : order) {
    lengths.push_back(x.lengths()[i]);
    values.push_back(x.values()[i]);
  }
  return StepFunction::from_lengths(lengths, values);
}

}  // namespace symspace

#endif  // SYMSPACE_STEP_FUNCTION_HPP
