#ifndef SYMSPACE_TREND_HPP
#define SYMSPACE_TREND_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string_view>
#include <vector>

#include "symspace/dilation.hpp"

namespace symspace {

// Finite-depth verdict on lim r_j as j -> infinity.
enum class Trend { vanishes, persists, unbounded, inconclusive };

inline std::string_view to_string(Trend t) {
  switch (t) {
    case Trend::vanishes: return "vanishes";
    case Trend::persists: return "persists";
    case Trend::unbounded: return "unbounded";
    case Trend::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct TrendOptions {
  double eps = 1e-3;          // r_last < eps * max r counts as "already small"
  double flat_slope = 0.05;   // |slope| below this is a flat tail
  double decisive_slope = 0.2;
};

struct TrendAnalysis {
  Trend trend = Trend::inconclusive;
  // slope of ln r_j against ln(j + 2) over the tail (the last half)
  double tail_slope = 0.0;
  double last_over_max = 0.0;
  bool tail_nonincreasing = false;
  bool tail_nondecreasing = false;
  std::vector<double> log_values;
};

// Classify the sequence r_j = exp(log_r[j]), j = 0..depth.  A power of
// ln(j+2) is used as the abscissa so that both geometric and logarithmic
// decay register as a clearly negative slope, while a constant tail is flat.
inline TrendAnalysis analyze_trend(std::span<const double> log_r, TrendOptions opt = {}) {
  TrendAnalysis out;
  out.log_values.assign(log_r.begin(), log_r.end());
  const std::size_t n = log_r.size();
  if (n < 4) return out;
  const std::size_t tail0 = n / 2;

  const double log_max = *std::max_element(log_r.begin(), log_r.end());
  out.last_over_max = std::exp(log_r.back() - log_max);

  out.tail_nonincreasing = out.tail_nondecreasing = true;
  for (std::size_t j = tail0 + 1; j < n; ++j) {
    const double tol = 1e-12 * std::max(1.0, std::fabs(log_r[j]));
    if (log_r[j] > log_r[j - 1] + tol) out.tail_nonincreasing = false;
    if (log_r[j] < log_r[j - 1] - tol) out.tail_nondecreasing = false;
  }

  std::vector<double> x, y;
  for (std::size_t j = tail0; j < n; ++j) {
    x.push_back(std::log(static_cast<double>(j) + 2.0));
    y.push_back(log_r[j]);
  }
  out.tail_slope = detail::ls_slope(x, y);

  const bool small = out.last_over_max < opt.eps;
  if (out.tail_nonincreasing && (small || out.tail_slope <= -opt.decisive_slope))
    out.trend = Trend::vanishes;
  else if (std::fabs(out.tail_slope) <= opt.flat_slope && !small)
    out.trend = Trend::persists;
  else if (out.tail_nondecreasing && out.tail_slope >= opt.decisive_slope)
    out.trend = Trend::unbounded;
  return out;
}

}  // namespace symspace

#endif  // SYMSPACE_TREND_HPP
