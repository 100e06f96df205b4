#ifndef SYMSPACE_DILATION_HPP
#define SYMSPACE_DILATION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "symspace/errors.hpp"
#include "symspace/gfun.hpp"

namespace symspace {

struct DilationOptions {
  int J = 64;      // samples M_f(2^j) for |j| <= J
  int K = 1024;    // probe grid s = 2^-i, i <= K
  double fit_tolerance = 0.05;  // allowed slope drift between nested windows
};

// Sampled dilation function M_f(t) = sup f(st)/f(s) at t = 2^j, j = -J..J,
// with least-squares estimates of the lower and upper dilation indices.
struct DilationProfile {
  int J = 0;
  int K = 0;
  std::vector<double> log_samples;  // ln M_f(2^j) at index j + J
  double gamma_est = 0.0;
  double delta_est = 0.0;
  // slopes over the deepest quarter; compared against the half-window fit
  double gamma_inner = 0.0;
  double delta_inner = 0.0;
  int window_lo = 0;  // fit uses |j| in [window_lo, window_hi]
  int window_hi = 0;
  bool stable = true;

  double log_sample(int j) const { return log_samples.at(static_cast<std::size_t>(j + J)); }
  double sample(int j) const { return std::exp(log_sample(j)); }
};

class FitUnstable : public Error {
 public:
  FitUnstable(const std::string& what, DilationProfile profile)
      : Error(what), profile_(std::move(profile)) {}
  const DilationProfile& profile() const { return profile_; }

 private:
  DilationProfile profile_;
};

namespace detail {

// Least-squares slope of y against x.
inline double ls_slope(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace detail

// Dilation profile over the dyadic probe grid.  For t = 2^-j the sup runs
// over s = 2^-i with i + j <= K; for t = 2^j over s = 2^-i with j <= i <= K.
// Everything is computed from ln f, so deep grids never underflow.
//
// Throws FitUnstable when the index estimates drift by more than
// fit_tolerance between the half window and the quarter window.
template <WeightFunction F>
DilationProfile dilation_profile(const F& f, DilationOptions opt = {}) {
  if (opt.J < 4) throw DomainError("dilation_profile needs J >= 4");
  if (opt.K < 2 * opt.J) throw DomainError("dilation_profile needs K >= 2J");
  std::vector<double> lf(static_cast<std::size_t>(opt.K) + 1);
  for (int i = 0; i <= opt.K; ++i) lf[static_cast<std::size_t>(i)] = f.log_at(Breakpoint::dyadic(i));

  DilationProfile p;
  p.J = opt.J;
  p.K = opt.K;
  p.log_samples.assign(static_cast<std::size_t>(2 * opt.J + 1), 0.0);
  for (int j = 1; j <= opt.J; ++j) {
    double shrink = -std::numeric_limits<double>::infinity();
    for (int i = 0; i + j <= opt.K; ++i)
      shrink = std::max(shrink, lf[static_cast<std::size_t>(i + j)] - lf[static_cast<std::size_t>(i)]);
    double grow = -std::numeric_limits<double>::infinity();
    for (int i = j; i <= opt.K; ++i)
      grow = std::max(grow, lf[static_cast<std::size_t>(i - j)] - lf[static_cast<std::size_t>(i)]);
    p.log_samples[static_cast<std::size_t>(opt.J - j)] = shrink;
    p.log_samples[static_cast<std::size_t>(opt.J + j)] = grow;
  }

  auto fit = [&](int lo, int hi, int sign) {
    std::vector<double> x, y;
    for (int j = lo; j <= hi; ++j) {
      x.push_back(sign * j * std::numbers::ln2);
      y.push_back(p.log_sample(sign * j));
    }
    return detail::ls_slope(x, y);
  };
  p.window_lo = opt.J / 2;
  p.window_hi = opt.J;
  p.gamma_est = fit(p.window_lo, p.window_hi, -1);
  p.delta_est = fit(p.window_lo, p.window_hi, +1);
  p.gamma_inner = fit(3 * opt.J / 4, opt.J, -1);
  p.delta_inner = fit(3 * opt.J / 4, opt.J, +1);
  p.stable = std::fabs(p.gamma_inner - p.gamma_est) <= opt.fit_tolerance &&
             std::fabs(p.delta_inner - p.delta_est) <= opt.fit_tolerance;
  if (!p.stable) throw FitUnstable("dilation index fit drifts across nested windows", p);
  return p;
}

}  // namespace symspace

#endif  // SYMSPACE_DILATION_HPP
