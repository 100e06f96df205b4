#ifndef SYMSPACE_SERIES_HPP
#define SYMSPACE_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symspace/dilation.hpp"
#include "symspace/step_function.hpp"

namespace symspace {

enum class SeriesVerdict { converges, diverges, inconclusive };

inline std::string_view to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::converges: return "converges";
    case SeriesVerdict::diverges: return "diverges";
    case SeriesVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct SeriesOptions {
  double max_ratio = 0.95;       // geometric certificate: T_{k+1}/T_k <= this on the last quarter
  double converge_slope = -1.1;  // p-series certificate: ln T vs ln(k+2) slope below this
  double diverge_slope = -0.9;   // ... and above this the terms are not summable
};

struct SeriesCertificate {
  SeriesVerdict verdict = SeriesVerdict::inconclusive;
  std::string method;  // "geometric", "p-series", "zero-tail" or "none"
  double partial_sum = 0.0;
  double tail_bound = 0.0;  // estimate of sum_{k > K} T_k when convergent
  double ratio = 0.0;       // worst ratio on the last quarter
  double slope = 0.0;       // fitted exponent on the last quarter
  std::vector<double> partial_sums;
};

// Certificate for sum_k T_k from the terms T_0..T_K (nonnegative).  Only the
// last quarter of the window is used to decide; the partial sums are never
// taken as evidence by themselves.
inline SeriesCertificate certify_series(std::span<const double> terms, SeriesOptions opt = {}) {
  SeriesCertificate c;
  if (terms.empty()) return c;
  detail::CompensatedSum s;
  for (double t : terms) {
    if (!(t >= 0.0)) throw DomainError("series terms must be nonnegative");
    s.add(t);
    c.partial_sums.push_back(s.value());
  }
  c.partial_sum = s.value();
  const std::size_t n = terms.size();
  const std::size_t quarter = std::max<std::size_t>(n / 4, 2);
  const std::size_t q0 = n > quarter ? n - quarter : 0;

  if (std::all_of(terms.begin() + static_cast<std::ptrdiff_t>(q0), terms.end(), [](double t) { return t == 0.0; })) {
    c.verdict = SeriesVerdict::converges;
    c.method = "zero-tail";
    return c;
  }

  bool positive = true;
  c.ratio = 0.0;
  for (std::size_t k = q0 + 1; k < n; ++k) {
    if (terms[k - 1] == 0.0) {
      positive = false;
      break;
    }
    c.ratio = std::max(c.ratio, terms[k] / terms[k - 1]);
  }

  std::vector<double> x, y;
  for (std::size_t k = q0; k < n; ++k) {
    if (terms[k] == 0.0) continue;
    x.push_back(std::log(static_cast<double>(k) + 2.0));
    y.push_back(std::log(terms[k]));
  }
  c.slope = x.size() >= 2 ? detail::ls_slope(x, y) : 0.0;

  const double last = terms.back();
  if (positive && c.ratio <= opt.max_ratio) {
    c.verdict = SeriesVerdict::converges;
    c.method = "geometric";
    c.tail_bound = last * c.ratio / (1.0 - c.ratio);
  } else if (c.slope < opt.converge_slope) {
    const double p = -c.slope;
    c.verdict = SeriesVerdict::converges;
    c.method = "p-series";
    c.tail_bound = last * (static_cast<double>(n - 1) + 2.0) / (p - 1.0);
  } else if (c.slope > opt.diverge_slope) {
    c.verdict = SeriesVerdict::diverges;
    c.method = "p-series";
  } else {
    c.method = "none";
  }
  return c;
}

}  // namespace symspace

#endif  // SYMSPACE_SERIES_HPP
