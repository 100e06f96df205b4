#ifndef SYMSPACE_GFUN_HPP
#define SYMSPACE_GFUN_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symspace/errors.hpp"
#include "symspace/exact_scalar.hpp"
#include "symspace/step_function.hpp"

namespace symspace {

// Anything that can be evaluated as a positive function on (0,1], both
// directly and in the log domain (the log form never underflows).
template <class F>
concept WeightFunction = requires(const F& f, const Breakpoint& t) {
  { f.at(t) } -> std::convertible_to<double>;
  { f.log_at(t) } -> std::convertible_to<double>;
};

// Exponent a when f(t) = c * t^a exactly, otherwise nullopt.
template <class F>
std::optional<double> power_exponent_of(const F& f) {
  if constexpr (requires { f.power_exponent(); })
    return f.power_exponent();
  else
    return std::nullopt;
}

namespace detail {

inline void check_unit_interval(const Breakpoint& t) {
  if (t.dyadic_exponent()) {
    if (*t.dyadic_exponent() < 0) throw DomainError("argument must lie in (0,1]");
    return;
  }
  if (!(t.value() > 0.0) || t.value() > 1.0) throw DomainError("argument must lie in (0,1]");
}

inline bool is_half_integer(double x) { return std::fabs(2.0 * x - std::round(2.0 * x)) == 0.0; }

inline std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace detail

// A positive, increasing, concave function on (0,1] (the class G).
//
// Closed forms are t^a, t^a * log2(4/t)^b, a piecewise-linear table and a
// positive multiple of any of these.  Construction checks monotonicity and
// quasiconcavity on a dyadic probe grid; tables are checked for exact
// concavity.
class GFun {
 public:
  struct Pow {
    double a;
  };
  struct PowLog {
    double a;
    double b;
  };
  // Nodes (t, f(t)) with increasing t in [0,1].  Below the first positive
  // node the function continues along the chord to the origin; past the last
  // node it stays flat.
  struct Table {
    std::vector<std::pair<double, double>> points;
  };
  struct Scaled {
    double c;
    std::shared_ptr<const GFun> inner;
  };
  using Form = std::variant<Pow, PowLog, Table, Scaled>;

  static GFun pow(double a) {
    if (!(a > 0.0 && a <= 1.0)) throw InvalidFunction("pow:a needs 0 < a <= 1 to be concave and increasing");
    return checked(GFun(Pow{a}));
  }

  static GFun powlog(double a, double b) {
    if (!(a > 0.0 && a <= 1.0)) throw InvalidFunction("powlog:a:b needs 0 < a <= 1");
    if (!std::isfinite(b)) throw InvalidFunction("powlog:a:b needs finite b");
    return checked(GFun(PowLog{a, b}));
  }

  static GFun table(std::vector<std::pair<double, double>> points) {
    validate_table(points);
    return checked(GFun(Table{std::move(points)}));
  }

  static GFun scaled(double c, GFun inner) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidFunction("scaled:c needs c > 0");
    return GFun(Scaled{c, std::make_shared<const GFun>(std::move(inner))});
  }

  const Form& form() const { return form_; }

  double operator()(double t) const { return at(Breakpoint(t)); }

  double at(const Breakpoint& t) const {
    detail::check_unit_interval(t);
    return std::visit([&](const auto& f) { return eval(f, t); }, form_);
  }

  double log_at(const Breakpoint& t) const {
    detail::check_unit_interval(t);
    return std::visit([&](const auto& f) { return log_eval(f, t); }, form_);
  }

  // Extended-range value; exact to a couple of ulp at dyadic points even
  // where the double value would underflow.
  ExactScalar exact_at(const Breakpoint& t) const {
    detail::check_unit_interval(t);
    return std::visit([&](const auto& f) { return exact_eval(f, t); }, form_);
  }

  // f'(t) (one-sided from the left at table nodes).
  double derivative(double t) const {
    if (!(t > 0.0) || t > 1.0) throw DomainError("argument must lie in (0,1]");
    return std::visit([&](const auto& f) { return derivative_eval(f, t); }, form_);
  }

  std::optional<double> power_exponent() const {
    if (const auto* p = std::get_if<Pow>(&form_)) return p->a;
    if (const auto* s = std::get_if<Scaled>(&form_)) return s->inner->power_exponent();
    return std::nullopt;
  }

  // The mini-language form of this function (tables are written inline).
  std::string spec() const {
    return std::visit(
        [](const auto& f) -> std::string {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Pow>) {
            return "pow:" + detail::format_number(f.a);
          } else if constexpr (std::is_same_v<T, PowLog>) {
            return "powlog:" + detail::format_number(f.a) + ":" + detail::format_number(f.b);
          } else if constexpr (std::is_same_v<T, Table>) {
            return "table:<" + std::to_string(f.points.size()) + " nodes>";
          } else {
            return "scaled:" + detail::format_number(f.c) + ":" + f.inner->spec();
          }
        },
        form_);
  }

 private:
  explicit GFun(Form f) : form_(std::move(f)) {}

  static double eval(const Pow& p, const Breakpoint& t) {
    if (t.dyadic_exponent()) return exact_eval(p, t).to_double();
    return std::pow(t.value(), p.a);
  }
  static double log_eval(const Pow& p, const Breakpoint& t) { return p.a * t.log(); }
  static ExactScalar exact_eval(const Pow& p, const Breakpoint& t) {
    if (!t.dyadic_exponent()) return ExactScalar(std::pow(t.value(), p.a));
    return dyadic_power(p.a, *t.dyadic_exponent());
  }
  static double derivative_eval(const Pow& p, double t) { return p.a * std::pow(t, p.a - 1.0); }

  // log2(4/t) = 2 - log2(t)
  static double log_factor(const Breakpoint& t) { return 2.0 - t.log2(); }

  static double eval(const PowLog& p, const Breakpoint& t) {
    if (t.dyadic_exponent()) return exact_eval(p, t).to_double();
    return std::pow(t.value(), p.a) * std::pow(log_factor(t), p.b);
  }
  static double log_eval(const PowLog& p, const Breakpoint& t) {
    return p.a * t.log() + p.b * std::log(log_factor(t));
  }
  static ExactScalar exact_eval(const PowLog& p, const Breakpoint& t) {
    if (!t.dyadic_exponent()) return ExactScalar(eval(p, t));
    const std::int64_t e = *t.dyadic_exponent();
    const double L = static_cast<double>(e + 2);
    if (detail::is_half_integer(p.a) && detail::is_half_integer(p.b) && std::fabs(p.b) <= 2.0) {
      // sqrt(2^{-2ae} * L^{2b}): a single rounding for the common half-integer case
      const auto two_ae = static_cast<std::int64_t>(std::llround(2.0 * p.a)) * e;
      const double lpow = std::pow(L, std::round(2.0 * p.b));
      return (ExactScalar::pow2(-two_ae) * ExactScalar(lpow)).sqrt();
    }
    return dyadic_power(p.a, e) * ExactScalar(std::pow(L, p.b));
  }
  static double derivative_eval(const PowLog& p, double t) {
    const double L = 2.0 - std::log2(t);
    return std::pow(t, p.a - 1.0) * std::pow(L, p.b) * (p.a - p.b / (L * std::numbers::ln2));
  }

  static double eval(const Table& tb, const Breakpoint& t) {
    const auto& pts = tb.points;
    const double x = t.value();
    if (t.dyadic_exponent() && x == 0.0) {
      // below the double range
      if (first_positive_segment(tb)) return exact_eval(tb, t).to_double();
      return pts.front().second;
    }
    if (x <= pts.front().first) {
      if (pts.front().first == 0.0) return pts.front().second;
      return pts.front().second * (x / pts.front().first);
    }
    if (x >= pts.back().first) return pts.back().second;
    auto it = std::lower_bound(pts.begin(), pts.end(), x,
                               [](const std::pair<double, double>& p, double v) { return p.first < v; });
    const auto& [t1, f1] = *it;
    const auto& [t0, f0] = *(it - 1);
    return f0 + (f1 - f0) * ((x - t0) / (t1 - t0));
  }
  static double log_eval(const Table& tb, const Breakpoint& t) {
    const auto& first = first_positive_segment(tb);
    if (first && t.value() <= first->first) return std::log(first->second / first->first) + t.log();
    return std::log(eval(tb, t));
  }
  static ExactScalar exact_eval(const Table& tb, const Breakpoint& t) {
    const auto& first = first_positive_segment(tb);
    if (first && t.value() <= first->first) return ExactScalar(first->second / first->first) * t.exact();
    return ExactScalar(eval(tb, t));
  }
  static double derivative_eval(const Table& tb, double x) {
    const auto& pts = tb.points;
    if (x <= pts.front().first) return pts.front().first > 0.0 ? pts.front().second / pts.front().first : 0.0;
    if (x > pts.back().first) return 0.0;
    auto it = std::lower_bound(pts.begin(), pts.end(), x,
                               [](const std::pair<double, double>& p, double v) { return p.first < v; });
    return (it->second - (it - 1)->second) / (it->first - (it - 1)->first);
  }
  // The slope through the origin used below the first node: the first node
  // itself when it is positive, or the chord from (0, f0) when f0 == 0.
  static std::optional<std::pair<double, double>> first_positive_segment(const Table& tb) {
    const auto& pts = tb.points;
    if (pts.front().first > 0.0) return pts.front();
    if (pts.front().second == 0.0 && pts.size() > 1) return pts[1];
    return std::nullopt;
  }

  static double eval(const Scaled& s, const Breakpoint& t) { return s.c * s.inner->at(t); }
  static double log_eval(const Scaled& s, const Breakpoint& t) { return std::log(s.c) + s.inner->log_at(t); }
  static ExactScalar exact_eval(const Scaled& s, const Breakpoint& t) {
    return ExactScalar(s.c) * s.inner->exact_at(t);
  }
  static double derivative_eval(const Scaled& s, double t) { return s.c * s.inner->derivative(t); }

  static ExactScalar dyadic_power(double a, std::int64_t e) {
    // 2^{-a e}: split the exponent into an integer part and a fraction
    const double ae = a * static_cast<double>(e);
    if (detail::is_half_integer(a)) {
      const auto two_ae = static_cast<std::int64_t>(std::llround(2.0 * a)) * e;
      return ExactScalar::pow2(-two_ae).sqrt();
    }
    const double whole = std::floor(ae);
    return ExactScalar::from_parts(std::exp2(-(ae - whole)), -static_cast<std::int64_t>(whole));
  }

  static void validate_table(const std::vector<std::pair<double, double>>& pts) {
    if (pts.empty()) throw InvalidFunction("table needs at least one node");
    double prev_slope = std::numeric_limits<double>::infinity();
    double pt = 0.0, pf = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto [t, f] = pts[i];
      if (!std::isfinite(t) || !std::isfinite(f)) throw InvalidFunction("table nodes must be finite");
      if (t < 0.0 || t > 1.0) throw InvalidFunction("table nodes must lie in [0,1]");
      if (i > 0 && !(t > pts[i - 1].first)) throw InvalidFunction("table abscissae must increase");
      if (t > 0.0 && !(f > 0.0)) throw InvalidFunction("table values must be positive on (0,1]");
      if (t == 0.0) {
        if (f < 0.0) throw InvalidFunction("table value at 0 must be nonnegative");
        pt = 0.0;
        pf = f;
        continue;
      }
      const double slope = (f - pf) / (t - pt);
      if (slope < -1e-15 * std::max(1.0, std::fabs(f))) throw InvalidFunction("table must be nondecreasing");
      if (slope > prev_slope * (1.0 + 1e-12) + 1e-15) throw InvalidFunction("table must be concave");
      prev_slope = slope;
      pt = t;
      pf = f;
    }
  }

  // Monotonicity and quasiconcavity on the grid t = 2^{-j/4}, j <= 200.
  static GFun checked(GFun g) {
    double prev_log = 0.0, prev_logt = 0.0;
    for (int j = 200; j >= 0; --j) {
      const Breakpoint t = (j % 4 == 0) ? Breakpoint::dyadic(j / 4) : Breakpoint(std::exp2(-j / 4.0));
      const double lf = g.log_at(t);
      if (!std::isfinite(lf)) throw InvalidFunction(g.spec() + " is not positive and finite on (0,1]");
      const double logt = t.log();
      if (j < 200) {
        const double tol = 1e-12 * std::max(1.0, std::fabs(lf));
        if (lf < prev_log - tol) throw InvalidFunction(g.spec() + " is not increasing on (0,1]");
        if (lf - logt > prev_log - prev_logt + tol)
          throw InvalidFunction(g.spec() + " fails f(t)/t nonincreasing, so it is not concave");
      }
      prev_log = lf;
      prev_logt = logt;
    }
    return g;
  }

  Form form_;
};

// t / f(t).  For f in G this is positive and increasing; it is the
// fundamental function of the Marcinkiewicz space built on f.
template <WeightFunction F>
class Tilde {
 public:
  explicit Tilde(F base) : base_(std::move(base)) {}

  const F& base() const { return base_; }

  double operator()(double t) const { return at(Breakpoint(t)); }
  double at(const Breakpoint& t) const {
    const double b = base_.at(t);
    if (t.value() > 1e-290 && b > 1e-290) return t.value() / b;
    return std::exp(log_at(t));
  }
  double log_at(const Breakpoint& t) const { return t.log() - base_.log_at(t); }

  std::optional<double> power_exponent() const {
    const auto a = power_exponent_of(base_);
    if (!a) return std::nullopt;
    return 1.0 - *a;
  }

 private:
  F base_;
};

template <WeightFunction F>
Tilde<F> tilde_of(F f) {
  return Tilde<F>(std::move(f));
}

// num(t) / den(t), evaluation only (e.g. psi/phi in the gap conditions).
template <WeightFunction N, WeightFunction D>
class Ratio {
 public:
  Ratio(N num, D den) : num_(std::move(num)), den_(std::move(den)) {}

  const N& numerator() const { return num_; }
  const D& denominator() const { return den_; }

  double operator()(double t) const { return at(Breakpoint(t)); }
  double at(const Breakpoint& t) const {
    const double n = num_.at(t), d = den_.at(t);
    if (n > 1e-290 && d > 1e-290) return n / d;
    return std::exp(log_at(t));
  }
  double log_at(const Breakpoint& t) const { return num_.log_at(t) - den_.log_at(t); }

  std::optional<double> power_exponent() const {
    const auto a = power_exponent_of(num_), b = power_exponent_of(den_);
    if (!a || !b) return std::nullopt;
    return *a - *b;
  }

 private:
  N num_;
  D den_;
};

using PositiveFun = Ratio<GFun, GFun>;

template <WeightFunction N, WeightFunction D>
Ratio<N, D> ratio(N num, D den) {
  return Ratio<N, D>(std::move(num), std::move(den));
}

// The constant weight 1 (so that M(1) = L_1).
struct UnitWeight {
  double operator()(double) const { return 1.0; }
  double at(const Breakpoint&) const { return 1.0; }
  double log_at(const Breakpoint&) const { return 0.0; }
  std::optional<double> power_exponent() const { return 0.0; }
};

}  // namespace symspace

#endif  // SYMSPACE_GFUN_HPP
