#ifndef SYMSPACE_ORLICZ_HPP
#define SYMSPACE_ORLICZ_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "symspace/errors.hpp"
#include "symspace/step_function.hpp"
#include "symspace/trend.hpp"

namespace symspace {

// An increasing convex N on [0, inf) with N(0) = 0: either t^p or a table of
// convex samples on [0, T], continued linearly with the last slope.
class OrliczFunction {
 public:
  struct Power {
    double p;
  };
  struct TableConvex {
    std::vector<std::pair<double, double>> points;
  };

  static OrliczFunction power(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw NonConvex("power Orlicz function needs p >= 1");
    return OrliczFunction(Power{p});
  }

  static OrliczFunction table(std::vector<std::pair<double, double>> pts) {
    if (pts.size() < 2) throw NonConvex("Orlicz table needs at least two samples");
    if (pts.front().first != 0.0 || pts.front().second != 0.0) throw NonConvex("Orlicz table must start at (0, 0)");
    double prev_slope = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double dt = pts[i].first - pts[i - 1].first;
      if (!(dt > 0.0)) throw NonConvex("Orlicz table abscissae must increase");
      const double slope = (pts[i].second - pts[i - 1].second) / dt;
      if (!(slope > 0.0)) throw NonConvex("Orlicz table must be strictly increasing");
      if (slope < prev_slope * (1.0 - 1e-12)) throw NonConvex("Orlicz table has a negative second difference");
      prev_slope = slope;
    }
    return OrliczFunction(TableConvex{std::move(pts)});
  }

  double operator()(double t) const {
    if (t < 0.0) throw DomainError("Orlicz functions are defined on [0, inf)");
    if (const auto* p = std::get_if<Power>(&form_)) return std::pow(t, p->p);
    const auto& pts = std::get<TableConvex>(form_).points;
    if (t >= pts.back().first) {
      const auto& [t1, f1] = pts.back();
      const auto& [t0, f0] = pts[pts.size() - 2];
      return f1 + (f1 - f0) / (t1 - t0) * (t - t1);
    }
    auto it = std::upper_bound(pts.begin(), pts.end(), t,
                               [](double v, const std::pair<double, double>& q) { return v < q.first; });
    const auto& [t1, f1] = *it;
    const auto& [t0, f0] = *(it - 1);
    return f0 + (f1 - f0) * ((t - t0) / (t1 - t0));
  }

  // N^{-1}(y) for y >= 0, by bisection with geometric expansion of the bracket.
  double inverse(double y) const {
    if (y < 0.0) throw DomainError("N^{-1} needs y >= 0");
    if (y == 0.0) return 0.0;
    if (!std::isfinite(y)) throw RangeError("N^{-1} argument is not finite");
    if (const auto* p = std::get_if<Power>(&form_)) return std::pow(y, 1.0 / p->p);
    double lo = 0.0, hi = 1.0;
    while ((*this)(hi) < y) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw RangeError("N^{-1}(" + std::to_string(y) + ") exceeds the double range");
    }
    for (int i = 0; i < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      ((*this)(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  std::string spec() const {
    if (const auto* p = std::get_if<Power>(&form_)) return "pow:" + std::to_string(p->p);
    return "table:<" + std::to_string(std::get<TableConvex>(form_).points.size()) + " samples>";
  }

 private:
  explicit OrliczFunction(std::variant<Power, TableConvex> f) : form_(std::move(f)) {}
  std::variant<Power, TableConvex> form_;
};

namespace detail {

inline double orlicz_modular(const StepFunction& x, const OrliczFunction& n, double u) {
  CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = std::fabs(x.values()[i]);
    if (v != 0.0) s.add(n(v / u) * x.lengths()[i]);
  }
  return s.value();
}

}  // namespace detail

// Luxemburg norm inf{u > 0 : int N(|x|/u) <= 1}.
//
// The bracket needs no search: at u = max|v|/N^{-1}(1) the modular is at most
// 1, and at u = |v_i|/N^{-1}(1/len_i) the block i alone contributes 1.
inline double orlicz_norm(const StepFunction& x, const OrliczFunction& n, double rel_tol = 1e-13) {
  const double m = x.max_abs();
  if (m == 0.0) return 0.0;
  double hi = m / n.inverse(1.0);
  double lo = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = std::fabs(x.values()[i]);
    if (v != 0.0) lo = std::max(lo, v / n.inverse(1.0 / x.lengths()[i]));
  }
  lo = std::min(lo, hi);
  while (hi - lo > rel_tol * hi) {
    const double mid = std::sqrt(lo * hi);
    (detail::orlicz_modular(x, n, mid) > 1.0 ? lo : hi) = mid;
    if (mid == lo && mid == hi) break;
  }
  return hi;
}

// 1 / N^{-1}(1/t), the norm of the indicator of a set of measure t.
inline double orlicz_fundamental(const OrliczFunction& n, double t) {
  if (!(t > 0.0) || t > 1.0) throw DomainError("orlicz_fundamental needs t in (0,1]");
  const double y = 1.0 / t;
  if (!std::isfinite(y)) throw RangeError("1/t is outside the double range");
  return 1.0 / n.inverse(y);
}

enum class LimitVerdict { zero, nonzero, inconclusive };

inline std::string_view to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::zero: return "zero";
    case LimitVerdict::nonzero: return "nonzero";
    case LimitVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct OrliczRatioResult {
  LimitVerdict verdict = LimitVerdict::inconclusive;
  TrendAnalysis analysis;
};

// lim_{t -> inf} M(t)/N(t), judged from t = 2^j, j = 0..depth.
inline OrliczRatioResult orlicz_ratio_limit(const OrliczFunction& n, const OrliczFunction& m, int depth = 40,
                                            TrendOptions opt = {}) {
  std::vector<double> log_r;
  for (int j = 0; j <= depth; ++j) {
    const double t = std::ldexp(1.0, j);
    log_r.push_back(std::log(m(t)) - std::log(n(t)));
  }
  OrliczRatioResult out;
  out.analysis = analyze_trend(log_r, opt);
  switch (out.analysis.trend) {
    case Trend::vanishes: out.verdict = LimitVerdict::zero; break;
    case Trend::persists:
    case Trend::unbounded: out.verdict = LimitVerdict::nonzero; break;
    case Trend::inconclusive: out.verdict = LimitVerdict::inconclusive; break;
  }
  return out;
}

}  // namespace symspace

#endif  // SYMSPACE_ORLICZ_HPP
