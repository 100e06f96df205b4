#ifndef SYMSPACE_TESTS_SUPPORT_HPP
#define SYMSPACE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "symspace/gfun.hpp"
#include "symspace/step_function.hpp"

namespace testing_support {

inline constexpr int kGridExp = 16;
inline constexpr std::size_t kGridCells = std::size_t{1} << kGridExp;

// Random step function with breakpoints on the 2^-16 grid and values that are
// multiples of 1/8, so that every sum the library forms is exact.
inline symspace::StepFunction random_step(std::mt19937_64& rng, int max_blocks = 12, bool allow_negative = true,
                                          int max_value_eighths = 64) {
  std::uniform_int_distribution<int> nblocks(1, max_blocks);
  std::uniform_int_distribution<std::uint32_t> cut(1, kGridCells - 1);
  std::uniform_int_distribution<int> val(allow_negative ? -max_value_eighths : 0, max_value_eighths);
  const int k = nblocks(rng);
  std::set<std::uint32_t> cuts;
  while (static_cast<int>(cuts.size()) < k - 1) cuts.insert(cut(rng));
  std::vector<symspace::Breakpoint> right;
  for (std::uint32_t c : cuts) right.emplace_back(std::ldexp(static_cast<double>(c), -kGridExp));
  right.emplace_back(1.0);
  std::vector<double> values;
  for (std::size_t i = 0; i < right.size(); ++i) values.push_back(val(rng) / 8.0);
  return symspace::StepFunction(std::move(right), std::move(values));
}

// Values on the 2^16 grid cells, cell c = (c 2^-16, (c+1) 2^-16].
inline std::vector<double> to_grid(const symspace::StepFunction& x) {
  std::vector<double> g(kGridCells);
  for (std::size_t c = 0; c < kGridCells; ++c) g[c] = x.value_at(std::ldexp(static_cast<double>(c + 1), -kGridExp));
  return g;
}

// Brute-force decreasing rearrangement on the grid.
inline std::vector<double> grid_rearrangement(std::vector<double> g) {
  for (double& v : g) v = std::fabs(v);
  std::sort(g.begin(), g.end(), std::greater<>());
  return g;
}

// Random y with |y| >= |x| pointwise: x plus a nonnegative bump of the same sign.
inline symspace::StepFunction dominating(const symspace::StepFunction& x, std::mt19937_64& rng) {
  const symspace::StepFunction bump = random_step(rng, 8, false, 16);
  return symspace::combine(x, bump, [](double a, double b) { return a >= 0.0 ? a + b : a - b; });
}

// Measure-preserving shuffle of the blocks of x.
inline symspace::StepFunction shuffled(const symspace::StepFunction& x, std::mt19937_64& rng) {
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  return symspace::permute_blocks(x, order);
}

struct WeightPair {
  symspace::GFun phi, psi;
};

// Pairs in G with psi dominated by phi near 0.
inline std::vector<WeightPair> catalog_pairs() {
  using symspace::GFun;
  const GFun psi = GFun::powlog(0.5, 0.5);
  return {{GFun::pow(0.5), GFun::pow(1.0)},          {GFun::pow(0.5), GFun::pow(0.75)},
          {GFun::pow(0.25), GFun::pow(0.5)},         {GFun::pow(0.5), GFun::pow(0.5)},
          {psi, GFun::pow(0.5)},                     {GFun::pow(0.25), psi},
          {GFun::pow(0.5), GFun::powlog(0.75, 0.5)}, {GFun::pow(0.9), GFun::pow(1.0)},
          {psi, GFun::powlog(0.75, 0.5)},            {GFun::pow(0.3), GFun::scaled(0.5, GFun::pow(0.3))},
          {GFun::pow(1.0 / 3.0), GFun::pow(0.5)},    {GFun::pow(0.5), GFun::powlog(0.5, -0.5)}};
}

}  // namespace testing_support

#endif  // SYMSPACE_TESTS_SUPPORT_HPP
