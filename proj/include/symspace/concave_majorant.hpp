#ifndef SYMSPACE_CONCAVE_MAJORANT_HPP
#define SYMSPACE_CONCAVE_MAJORANT_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "symspace/errors.hpp"
#include "symspace/gfun.hpp"

namespace symspace {

struct ConcaveMajorant {
  GFun function;
  std::vector<std::pair<double, double>> vertices;
  // max over the input points of majorant / input; 1 when the input is concave
  double equivalence_ratio = 1.0;
};

// Least concave, nondecreasing majorant of the piecewise-linear interpolant
// of `points` (upper hull by monotone chain), as a nonnegative function on
// [0,1].  A node at t = 0 is allowed and may carry the value 0.
inline ConcaveMajorant concave_majorant(const std::vector<std::pair<double, double>>& points) {
  if (points.empty()) throw DomainError("concave_majorant needs at least one point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [t, y] = points[i];
    if (t < 0.0 || t > 1.0) throw DomainError("majorant abscissae must lie in [0,1]");
    if (i > 0 && !(t > points[i - 1].first)) throw DomainError("majorant abscissae must increase");
    if (t > 0.0 ? !(y > 0.0) : y < 0.0) throw DomainError("majorant values must be positive");
  }

  // (b - a) x (c - a) >= 0 means b is on or below the chord a-c
  auto cross = [](const std::pair<double, double>& a, const std::pair<double, double>& b,
                  const std::pair<double, double>& c) {
    return (b.first - a.first) * (c.second - a.second) - (b.second - a.second) * (c.first - a.first);
  };
  // a member of G is positive near 0, so the hull starts at the origin; the
  // origin is dropped again afterwards since tables follow the chord to (0,0)
  const bool synthetic_origin = points.front().first > 0.0;
  std::vector<std::pair<double, double>> hull;
  if (synthetic_origin) hull.emplace_back(0.0, 0.0);
  for (const auto& p : points) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0) hull.pop_back();
    hull.push_back(p);
  }

  // the hull rises to its maximum then falls; replace the falling part by a flat tail
  const auto top = std::max_element(hull.begin(), hull.end(),
                                    [](const auto& a, const auto& b) { return a.second < b.second; });
  const double t_end = points.back().first;
  const double y_top = top->second;
  hull.erase(top + 1, hull.end());
  if (hull.back().first < t_end) hull.emplace_back(t_end, y_top);
  if (synthetic_origin) hull.erase(hull.begin());

  GFun f = GFun::table(hull);
  double ratio = 1.0;
  for (const auto& [t, y] : points) {
    if (t == 0.0) continue;
    ratio = std::max(ratio, f(t) / y);
  }
  return {std::move(f), std::move(hull), ratio};
}

}  // namespace symspace

#endif  // SYMSPACE_CONCAVE_MAJORANT_HPP
