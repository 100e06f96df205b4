#ifndef SYMSPACE_CEX_HPP
#define SYMSPACE_CEX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "symspace/conditions.hpp"
#include "symspace/embed.hpp"
#include "symspace/errors.hpp"
#include "symspace/exact_scalar.hpp"
#include "symspace/gfun.hpp"
#include "symspace/norms.hpp"
#include "symspace/step_function.hpp"

namespace symspace {

// Largest family index whose w_m still fits in double range: w_6 needs
// b_k = 2^{k/2}(k+2)^{-1/2} up to k = 2570, about 2^1285.
inline constexpr int kMaxFamilyDepth = 5;

namespace cex {

// n_0 = 1, n_{m+1} = max{n : sum_{k=n_m}^{n-1} 1/(k+2) <= 1}; returns n_0..n_count-1.
inline std::vector<std::int64_t> n_sequence(int count) {
  std::vector<std::int64_t> n{1};
  while (static_cast<int>(n.size()) < count) {
    detail::CompensatedSum s;
    std::int64_t k = n.back();
    while (true) {
      detail::CompensatedSum t = s;
      t.add(1.0 / static_cast<double>(k + 2));
      if (t.value() > 1.0) break;
      s = t;
      ++k;
    }
    n.push_back(k);
  }
  return n;
}

// sum_{k=lo}^{hi-1} 1/(k+2)
inline double harmonic_block(std::int64_t lo, std::int64_t hi) {
  detail::CompensatedSum s;
  for (std::int64_t k = lo; k < hi; ++k) s.add(1.0 / static_cast<double>(k + 2));
  return s.value();
}

// b_k = (k+2)^{-1/2} 2^{k/2}
inline ExactScalar b(std::int64_t k) {
  return (ExactScalar::pow2(k) / ExactScalar(static_cast<double>(k + 2))).sqrt();
}

// ||w_m||_2^2 with b_k^2 2^{-k-1} = 1/(2(k+2)) and b_last^2 2^{-last} = 1/(last+2)
inline double w_norm_squared(std::int64_t n_lo, std::int64_t n_hi) {
  return 0.5 * harmonic_block(n_lo, n_hi - 1) + 1.0 / static_cast<double>(n_hi + 1);
}

// b_k on (2^{-k-1}, 2^{-k}] for lo <= k < hi-1, b_{hi-1} on (0, 2^{-(hi-1)}]
inline StepFunction make_w(std::int64_t lo, std::int64_t hi) {
  std::vector<Breakpoint> right;
  std::vector<double> values;
  for (std::int64_t k = hi - 1; k >= lo; --k) {
    right.push_back(Breakpoint::dyadic(k));
    values.push_back(b(k).to_double());
  }
  right.emplace_back(1.0);
  values.push_back(0.0);
  return StepFunction(std::move(right), std::move(values));
}

// w restricted to D = (2^{-hi}, 2^{-lo}]
inline StepFunction make_v(std::int64_t lo, std::int64_t hi) {
  std::vector<Breakpoint> right{Breakpoint::dyadic(hi)};
  std::vector<double> values{0.0};
  for (std::int64_t k = hi - 1; k >= lo; --k) {
    right.push_back(Breakpoint::dyadic(k));
    values.push_back(b(k).to_double());
  }
  right.emplace_back(1.0);
  values.push_back(0.0);
  return StepFunction(std::move(right), std::move(values));
}

}  // namespace cex

struct CexFamily {
  GFun psi = GFun::powlog(0.5, 0.5);
  int M_max = 0;
  std::vector<std::int64_t> n;  // n_0 .. n_{M_max+1}
  std::vector<ExactScalar> b;   // b_0 .. b_{n_{M_max+1}-1}
  std::vector<StepFunction> w;  // w_0 .. w_{M_max}
  std::vector<StepFunction> v;
  std::vector<double> w_norm;  // ||w_m||_2

  // D_m = (2^{-n_{m+1}}, 2^{-n_m}]
  std::pair<Breakpoint, Breakpoint> D(int m) const {
    return {Breakpoint::dyadic(n[m + 1]), Breakpoint::dyadic(n[m])};
  }
};

// chi_b = b^{-1/2} chi_(0,b]
inline StepFunction chi(double b) {
  if (!(b > 0.0) || b > 1.0) throw DomainError("chi needs b in (0,1]");
  return scaled(StepFunction::indicator(b), 1.0 / std::sqrt(b));
}

inline CexFamily build_family(int M_max) {
  if (M_max < 0) throw DomainError("family depth must be nonnegative");
  if (M_max > kMaxFamilyDepth)
    throw DepthError("family depth " + std::to_string(M_max) + " exceeds the double-range budget of " +
                     std::to_string(kMaxFamilyDepth));
  CexFamily f;
  f.M_max = M_max;
  f.n = cex::n_sequence(M_max + 2);
  for (std::int64_t k = 0; k < f.n.back(); ++k) f.b.push_back(cex::b(k));
  for (int m = 0; m <= M_max; ++m) {
    f.w.push_back(cex::make_w(f.n[m], f.n[m + 1]));
    f.v.push_back(cex::make_v(f.n[m], f.n[m + 1]));
    f.w_norm.push_back(lp_norm(f.w.back(), 2.0));
  }
  return f;
}

struct FNormResult {
  double value = 0.0;
  double chi_part = 0.0;  // sup_b b^{-1/2} int_0^b x*
  double chi_argmax = 0.0;
  std::vector<double> w_pairings;  // int x* w_m / ||w_m||_2, m = 0..m_eff
  int m_eff = -1;
  double tail_bound = 0.0;  // bound on every pairing with m > m_eff
};

namespace cex {

// int_0^1 w_m = sum_{k<last} b_k 2^{-k-1} + b_last 2^{-last}, each term as sqrt(2^{-j}/(k+2))
inline ExactScalar w_integral(std::int64_t lo, std::int64_t hi) {
  ExactScalar s;
  const std::int64_t last = hi - 1;
  for (std::int64_t k = last; k >= lo; --k) {
    const std::int64_t j = k == last ? k : k + 2;
    s += (ExactScalar::pow2(-j) / ExactScalar(static_cast<double>(k + 2))).sqrt();
  }
  return s;
}

inline constexpr int kFNormMaxIndex = 12;

}  // namespace cex

// sup over the test family {chi_b} u {w_m/||w_m||_2 : m >= 0} of int x* v.
// Up to m = 5 the pairings use w_m as step functions.  Beyond that w_m lives
// below 2^-945, where x* is constant (its first value c), so the pairing is
// c int w_m / ||w_m||_2 in extended range.  The search stops once
// 2c sum_{k >= n_{m+1}} b_k 2^{-k}, which bounds every later pairing, drops
// below eps times the running maximum.
inline FNormResult f_norm(const StepFunction& x, const CexFamily& fam, double eps = 1e-12) {
  FNormResult r;
  const StepFunction xs = rearrange(x);
  const double top = xs.values()[0];
  const SupResult chi_sup = marcinkiewicz_norm(xs, GFun::pow(0.5));
  r.chi_part = chi_sup.value;
  r.chi_argmax = chi_sup.argmax;
  r.value = r.chi_part;
  if (top == 0.0) return r;

  // log of 2c b_n 2^{-n} / (1 - 2^{-1/2}), geometric bound with ratio 2^{-1/2}
  const double log_ratio = std::log(1.0 - std::numbers::sqrt2 / 2.0);
  auto log_tail = [&](std::int64_t n) {
    return std::log(2.0 * top) - 0.5 * static_cast<double>(n) * std::numbers::ln2 -
           0.5 * std::log(static_cast<double>(n + 2)) - log_ratio;
  };

  const std::vector<std::int64_t> n = cex::n_sequence(cex::kFNormMaxIndex + 2);
  const ExactScalar first_block = xs.right(0).exact();
  for (int m = 0; m <= cex::kFNormMaxIndex; ++m) {
    double pairing = 0.0;
    if (m <= fam.M_max) {
      pairing = inner_product(xs, fam.w[m]) / fam.w_norm[m];
    } else if (m <= kMaxFamilyDepth) {
      pairing = inner_product(xs, cex::make_w(n[m], n[m + 1])) / std::sqrt(cex::w_norm_squared(n[m], n[m + 1]));
    } else {
      if (first_block < ExactScalar::pow2(-n[m]))
        throw RangeError("f_norm: first block of x* lies below the support of w_" + std::to_string(m));
      pairing = (ExactScalar(top) * cex::w_integral(n[m], n[m + 1])).to_double() /
                std::sqrt(cex::w_norm_squared(n[m], n[m + 1]));
    }
    r.w_pairings.push_back(pairing);
    r.value = std::max(r.value, pairing);
    r.m_eff = m;
    const double lt = log_tail(n[m + 1]);
    r.tail_bound = std::exp(lt);
    if (lt < std::log(eps * r.value)) return r;
  }
  throw RangeError("f_norm: test family search did not converge");
}

// Certified two-sided bound.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

namespace cex {

// Riemann bracket of a nonincreasing f on [a,b] with n equal parts.
template <class F>
Bracket riemann_decreasing(const F& f, double a, double b, long n) {
  const double h = (b - a) / static_cast<double>(n);
  detail::CompensatedSum lo, hi;
  double prev = f(a);
  for (long i = 1; i <= n; ++i) {
    const double cur = f(i == n ? b : a + static_cast<double>(i) * h);
    hi.add(prev);
    lo.add(cur);
    prev = cur;
  }
  // widen by the accumulated rounding of n evaluations and additions
  const double slack = 1e-15 * static_cast<double>(n + 16);
  return {lo.value() * h * (1.0 - slack), hi.value() * h * (1.0 + slack)};
}

inline long parts_for(double ratio, double rel_width) {
  return std::max(1L, static_cast<long>(std::ceil((ratio - 1.0) / rel_width)));
}

// J_k = int_0^1 ds / sqrt((1+s)(k+3-log2(1+s))), so that
// int_{2^{-k-1}}^{2^{-k}} dt/psi = 2^{-(k+1)/2} J_k for psi = t^{1/2} log2^{1/2}(4/t).
inline Bracket inv_psi_octave(std::int64_t k, double rel_width = 1e-4) {
  const double c = static_cast<double>(k + 3);
  auto g = [c](double s) { return 1.0 / std::sqrt((1.0 + s) * (c - std::log2(1.0 + s))); };
  return riemann_decreasing(g, 0.0, 1.0, parts_for(g(0.0) / g(1.0), rel_width));
}

// int_0^T dt/psi <= 2 T^{1/2} log2^{-1/2}(4/T), since log2(4/t) >= log2(4/T) below T
inline double inv_psi_below(double T) { return 2.0 * std::sqrt(T) / std::sqrt(2.0 - std::log2(T)); }

// int_0^b dt/psi for b in (0,1]; `octaves` full dyadic octaves below the partial one.
inline Bracket inv_psi_integral(double b, int octaves = 60, double rel_width = 1e-4) {
  const GFun psi = GFun::powlog(0.5, 0.5);
  if (!(b > 0.0) || b > 1.0) throw DomainError("integration bound must lie in (0,1]");
  // b in (2^{-k0-1}, 2^{-k0}]
  int e = 0;
  const double f = std::frexp(b, &e);
  const std::int64_t k0 = f == 0.5 ? 1 - e : -e;
  Bracket total;
  const double a = std::ldexp(1.0, -static_cast<int>(k0) - 1);
  if (b > a) {
    auto f = [&](double t) { return 1.0 / psi(t); };
    const Bracket p = riemann_decreasing(f, a, b, parts_for(f(a) / f(b), rel_width));
    total.lo += p.lo;
    total.hi += p.hi;
  }
  for (std::int64_t k = k0 + 1; k <= k0 + octaves; ++k) {
    const Bracket j = inv_psi_octave(k, rel_width);
    const double scale = std::exp2(-0.5 * static_cast<double>(k + 1));
    total.lo += scale * j.lo;
    total.hi += scale * j.hi;
  }
  total.hi += inv_psi_below(std::ldexp(1.0, -static_cast<int>(k0 + octaves) - 1));
  return total;
}

// int w_m / psi = 2^{-1/2} sum_{k<last} J_k (k+2)^{-1/2} + b_last int_0^{2^{-last}} dt/psi,
// with the last term bounded above by 2/(last+2)
inline Bracket w_over_psi(std::int64_t lo, std::int64_t hi, double rel_width = 1e-4) {
  const std::int64_t last = hi - 1;
  Bracket total;
  for (std::int64_t k = lo; k < last; ++k) {
    const Bracket j = inv_psi_octave(k, rel_width);
    const double c = std::numbers::sqrt2 / 2.0 / std::sqrt(static_cast<double>(k + 2));
    total.lo += c * j.lo;
    total.hi += c * j.hi;
  }
  const Bracket j = inv_psi_octave(last, rel_width);
  total.lo += std::numbers::sqrt2 / 2.0 / std::sqrt(static_cast<double>(last + 2)) * j.lo;
  total.hi += 2.0 / static_cast<double>(last + 2);
  return total;
}

}  // namespace cex

struct ClaimEntry {
  std::string claim_id;
  std::string formula;
  double computed = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct SampleRecord {
  std::size_t index = 0;
  std::vector<double> coeffs;
  double max_coeff = 0.0;
  double quasi = 0.0;
  double e_norm = 0.0;  // Marcinkiewicz norm with the tilde of psi
  double f_norm = 0.0;
  double ratio = 0.0;   // e_norm / f_norm; 0 for the zero vector
};

struct SampleSummary {
  std::size_t count = 0;
  double max_quasi_over_max = 0.0;
  double min_f_over_max = std::numeric_limits<double>::infinity();
  double max_e_over_max = 0.0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
  double spread() const { return max_ratio > 0.0 ? max_ratio / min_ratio : 0.0; }
};

struct CexReport {
  int M_max = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> n;
  std::vector<ClaimEntry> claims;
  SampleSummary half, full;  // first half of the samples and all of them
  bool pass() const {
    return std::all_of(claims.begin(), claims.end(), [](const ClaimEntry& c) { return c.pass; });
  }
};

// ||v||_E / ||v||_F spread cap.  Brute force over the coefficient grids
// {0, 1/4, ..., 1}^4 and {0, 1/8, ..., 1}^4 at M_max = 3 gives 1.4533
// (tests/test_cex.cpp, SpreadCapCalibration); the cap leaves room for
// deeper families.
inline constexpr double kSpreadCap = 2.0;
// the spread over all samples may exceed the spread over the first half by at most this factor
inline constexpr double kSpreadDoubling = 1.25;

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

namespace cex {

inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Coefficient vectors: independent uniforms on [0,1], every tenth one a one-hot vector.
inline std::vector<std::vector<double>> draw_coefficients(int M_max, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t dim = static_cast<std::size_t>(M_max) + 1;
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> a(dim, 0.0);
    if (i % 10 == 9) {
      a[rng() % dim] = 1.0;
    } else {
      for (double& c : a) c = unit_uniform(rng);
    }
    out.push_back(std::move(a));
  }
  return out;
}

inline SampleRecord evaluate_sample(const CexFamily& fam, std::size_t index, std::vector<double> a) {
  SampleRecord r;
  r.index = index;
  r.max_coeff = *std::max_element(a.begin(), a.end());
  const StepFunction x = disjoint_sum(a, fam.v);
  r.coeffs = std::move(a);
  if (r.max_coeff == 0.0) return r;
  r.quasi = quasi_norm(x, fam.psi);
  r.e_norm = marcinkiewicz_norm(x, tilde_of(fam.psi)).value;
  r.f_norm = f_norm(x, fam).value;
  r.ratio = r.e_norm / r.f_norm;
  return r;
}

// Evaluated in parallel; records come back ordered by index.
inline std::vector<SampleRecord> evaluate_samples(const CexFamily& fam, std::vector<std::vector<double>> coeffs) {
  const std::size_t count = coeffs.size();
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  const std::size_t chunk = (count + workers - 1) / std::max<std::size_t>(workers, 1);
  std::vector<std::future<std::vector<SampleRecord>>> jobs;
  for (std::size_t lo = 0; lo < count; lo += chunk) {
    const std::size_t hi = std::min(count, lo + chunk);
    jobs.push_back(std::async(std::launch::async, [&fam, &coeffs, lo, hi] {
      std::vector<SampleRecord> part;
      for (std::size_t i = lo; i < hi; ++i) part.push_back(evaluate_sample(fam, i, coeffs[i]));
      return part;
    }));
  }
  std::vector<SampleRecord> out;
  out.reserve(count);
  for (auto& j : jobs) {
    std::vector<SampleRecord> part = j.get();
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(out.begin(), out.end(), [](const SampleRecord& a, const SampleRecord& b) { return a.index < b.index; });
  return out;
}

inline SampleSummary summarize(std::span<const SampleRecord> records) {
  SampleSummary s;
  s.count = records.size();
  for (const SampleRecord& r : records) {
    if (r.max_coeff == 0.0) continue;
    s.max_quasi_over_max = std::max(s.max_quasi_over_max, r.quasi / r.max_coeff);
    s.min_f_over_max = std::min(s.min_f_over_max, r.f_norm / r.max_coeff);
    s.max_e_over_max = std::max(s.max_e_over_max, r.e_norm / r.max_coeff);
    s.min_ratio = std::min(s.min_ratio, r.ratio);
    s.max_ratio = std::max(s.max_ratio, r.ratio);
  }
  return s;
}

inline std::string indexed(const std::string& id, int m) { return id + "[m=" + std::to_string(m) + "]"; }

}  // namespace cex

struct ConditionsReport {
  std::vector<ClaimEntry> claims;
};

// (A) holds and (B) fails for the fundamental functions psi and t^{1/2};
// (B) holds for the control pair t^{1/4}, t^{1/2}.
inline ConditionsReport conditions_check(const CexFamily& fam) {
  ConditionsReport rep;
  auto entry = [&](std::string id, std::string formula, auto run, Verdict expected) {
    ClaimEntry c{std::move(id), std::move(formula), 0.0, 0.0, false};
    try {
      const Verdict v = run();
      c.computed = v == Verdict::holds ? 1.0 : v == Verdict::fails ? 0.0 : 0.5;
      c.bound = expected == Verdict::holds ? 1.0 : 0.0;
      c.pass = v == expected;
    } catch (const Error&) {
      c.computed = std::numeric_limits<double>::quiet_NaN();
    }
    rep.claims.push_back(std::move(c));
  };
  const GFun root = GFun::pow(0.5);
  entry("condition_a_holds", "t^{1/2}/psi(t) -> 0", [&] { return condition_a(fam.psi, root).verdict; },
        Verdict::holds);
  entry("condition_b_fails", "lower dilation index of t^{1/2}/psi is 0",
        [&] { return condition_b(fam.psi, root).verdict; }, Verdict::fails);
  entry("condition_b_control", "lower dilation index of t^{1/2}/t^{1/4} is 1/4",
        [&] { return condition_b(GFun::pow(0.25), root).verdict; }, Verdict::holds);
  return rep;
}

// Mechanical check of every quantitative claim about the family.  Runs
// `samples` random coefficient vectors; nothing throws, failures are entries.
inline CexReport verify_all(const CexFamily& fam, std::size_t samples, std::uint64_t seed = kDefaultSeed) {
  using cex::indexed;
  CexReport rep;
  rep.M_max = fam.M_max;
  rep.samples = samples;
  rep.seed = seed;
  rep.n = fam.n;
  auto add = [&](std::string id, std::string formula, double computed, double bound, bool pass) {
    rep.claims.push_back({std::move(id), std::move(formula), computed, bound, pass});
  };
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  // b_k psi(2^-k) = 1 in extended-range arithmetic, worst deviation in ulps of 1
  double worst_ulps = 0.0;
  for (std::size_t k = 0; k < fam.b.size(); ++k) {
    const ExactScalar p = fam.b[k] * fam.psi.exact_at(Breakpoint::dyadic(static_cast<std::int64_t>(k)));
    worst_ulps = std::max(worst_ulps, std::fabs((p - ExactScalar(1.0)).to_double()) / kEps);
  }
  add("b_psi_identity", "b_k psi(2^-k) = 1 for k < n_{M+1} (ulps)", worst_ulps, 2.0, worst_ulps <= 2.0);

  // n-sequence maximality
  for (int m = 0; m + 1 < static_cast<int>(fam.n.size()); ++m) {
    const double s = cex::harmonic_block(fam.n[m], fam.n[m + 1]);
    const double next = s + 1.0 / static_cast<double>(fam.n[m + 1] + 2);
    add(indexed("n_sequence_maximal", m), "sum_{n_m <= k < n_{m+1}} 1/(k+2) <= 1 < same + 1/(n_{m+1}+2)", s, 1.0,
        s <= 1.0 && next > 1.0);
  }
  if (fam.n.size() > 1) add("n_1", "n_1 = 5", static_cast<double>(fam.n[1]), 5.0, fam.n[1] == 5);
  if (fam.n.size() > 2) add("n_2", "n_2 = 16", static_cast<double>(fam.n[2]), 16.0, fam.n[2] == 16);

  for (int m = 0; m <= fam.M_max; ++m) {
    const double nrm = fam.w_norm[m];
    add(indexed("w_norm_bounds", m), "1/2 <= ||w_m||_2 <= 1", nrm, 1.0, nrm >= 0.5 && nrm <= 1.0);
    // b_k^2 2^{-k-1} = 1/(2(k+2)) term by term, and the simplified sum against the step function
    double worst = 0.0;
    for (std::int64_t k = fam.n[m]; k < fam.n[m + 1]; ++k) {
      const ExactScalar lhs = fam.b[k] * fam.b[k] * ExactScalar::pow2(-k - 1);
      const double rhs = 0.5 / static_cast<double>(k + 2);
      worst = std::max(worst, std::fabs(lhs.to_double() - rhs) / rhs);
    }
    const double simplified = cex::w_norm_squared(fam.n[m], fam.n[m + 1]);
    const double dev = std::max(worst / kEps, std::fabs(nrm * nrm - simplified) / simplified / kEps);
    add(indexed("half_sum_identity", m), "b_k^2 2^{-k-1} = 1/(2(k+2)); ||w_m||_2^2 = simplified sum (ulps)", dev,
        64.0, dev <= 64.0);
  }
  if (fam.M_max >= 0) {
    const double w0 = fam.w_norm[0] * fam.w_norm[0];
    const double oracle = 1.0 / 6 + 1.0 / 10 + 1.0 / 8 + 1.0 / 6;
    add("w0_norm_squared", "||w_0||_2^2 = 1/6 + 1/10 + 1/8 + 1/6", w0, oracle, std::fabs(w0 - oracle) <= 1e-12);
  }

  // structure: disjoint supports and v_m <= w_m
  bool disjoint = true;
  try {
    std::vector<double> ones(fam.v.size(), 1.0);
    (void)disjoint_sum(ones, fam.v);
  } catch (const OverlapError&) {
    disjoint = false;
  }
  add("v_disjoint_supports", "supp v_m pairwise disjoint", disjoint ? 1.0 : 0.0, 1.0, disjoint);
  double excess = 0.0;
  for (int m = 0; m <= fam.M_max; ++m) {
    const StepFunction d = combine(fam.v[m], fam.w[m], [](double a, double c) { return a - c; });
    for (double x : d.values()) excess = std::max(excess, x);
  }
  add("v_below_w", "max (v_m - w_m) <= 0", excess, 0.0, excess <= 0.0);

  // integrals against 1/psi, certified upper brackets
  double chi_worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double bb = std::exp2(-40.0 * i / 63.0);
    chi_worst = std::max(chi_worst, cex::inv_psi_integral(bb).hi / std::sqrt(bb));
  }
  add("chi_over_psi", "int chi_b / psi <= 2 on 64 points b = 2^{-40 i/63}", chi_worst, 2.0, chi_worst <= 2.0);
  for (int m = 0; m <= fam.M_max; ++m) {
    const Bracket br = cex::w_over_psi(fam.n[m], fam.n[m + 1]);
    add(indexed("w_over_psi", m), "int w_m / psi <= 2", br.hi, 2.0, br.hi <= 2.0);
  }
  {
    const ClampedReciprocal c = clamp_reciprocal(fam.psi, 200, 8);
    const double val = f_norm(c.x, fam).value;
    add("clamped_reciprocal_F", "||min(1/psi, 1/psi(2^-200))||_F <= 4 (upper step majorant)", val, 4.0, val <= 4.0);
  }
  for (int m = 0; m <= fam.M_max; ++m) {
    const double val = f_norm(fam.v[m], fam).value;
    add(indexed("v_F_lower", m), "||v_m||_F >= 1/4", val, 0.25, val >= 0.25);
  }

  // random coefficient vectors
  const std::vector<SampleRecord> records =
      cex::evaluate_samples(fam, cex::draw_coefficients(fam.M_max, samples, seed));
  rep.full = cex::summarize(records);
  rep.half = cex::summarize(std::span<const SampleRecord>(records).first(samples / 2));
  const double quasi_tol = 1.0 + 8.0 * kEps;
  add("quasi_below_max_coeff", "||sum a_m v_m||_{M*(psi)} <= max a_m", rep.full.max_quasi_over_max, quasi_tol,
      rep.full.max_quasi_over_max <= quasi_tol);
  const bool any = rep.full.max_ratio > 0.0;
  add("f_above_quarter_max", "||sum a_m v_m||_F >= max a_m / 4", any ? rep.full.min_f_over_max : 0.0, 0.25,
      !any || rep.full.min_f_over_max >= 0.25);
  add("e_upper_constant", "||sum a_m v_m||_E <= C max a_m, measured C", rep.full.max_e_over_max, 2.0,
      rep.full.max_e_over_max <= 2.0);
  add("equivalence_spread", "max/min of ||v||_E / ||v||_F over samples", rep.full.spread(), kSpreadCap,
      rep.full.spread() <= kSpreadCap);
  const double growth = rep.half.spread() > 0.0 ? rep.full.spread() / rep.half.spread() : 1.0;
  add("equivalence_spread_doubling", "spread(all samples) / spread(first half)", growth, kSpreadDoubling,
      growth <= kSpreadDoubling);

  for (ClaimEntry& c : conditions_check(fam).claims) rep.claims.push_back(std::move(c));
  return rep;
}

}  // namespace symspace

#endif  // SYMSPACE_CEX_HPP
