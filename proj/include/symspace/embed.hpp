#ifndef SYMSPACE_EMBED_HPP
#define SYMSPACE_EMBED_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symspace/concave_majorant.hpp"
#include "symspace/conditions.hpp"
#include "symspace/dilation.hpp"
#include "symspace/errors.hpp"
#include "symspace/gfun.hpp"
#include "symspace/norms.hpp"
#include "symspace/series.hpp"
#include "symspace/step_function.hpp"
#include "symspace/trend.hpp"

namespace symspace {

struct TraceRow {
  int k = 0;         // point t = 2^-k
  double term = 0.0;
  double partial = 0.0;
};

struct EmbedConstants {
  std::optional<double> u, C, C1, C2;
};

struct EmbedReport {
  std::string test;
  SeriesVerdict verdict = SeriesVerdict::inconclusive;
  SeriesCertificate certificate;
  EmbedConstants constants;
  std::vector<TraceRow> trace;
  std::vector<std::string> notes;
};

namespace detail {

// a_k / phi(2^-k) with a_k = psi(2^-k) - psi(2^-k-1), from the logs so that
// nothing underflows before the ratio is formed.
template <WeightFunction Phi, WeightFunction Psi>
std::vector<double> dyadic_series_terms(const Phi& phi, const Psi& psi, int depth) {
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(depth) + 1);
  double lpsi = psi.log_at(Breakpoint::dyadic(0));
  for (int k = 0; k <= depth; ++k) {
    const double lpsi_next = psi.log_at(Breakpoint::dyadic(k + 1));
    const double lphi = phi.log_at(Breakpoint::dyadic(k));
    terms.push_back(std::exp(lpsi - lphi) * -std::expm1(lpsi_next - lpsi));
    lpsi = lpsi_next;
  }
  return terms;
}

// Midpoint Stieltjes sum of int dpsi/phi over (2^-k-1, 2^-k] with n equal parts.
template <WeightFunction Phi, WeightFunction Psi>
double stieltjes_block(const Phi& phi, const Psi& psi, int k, int n) {
  const double lo = std::ldexp(1.0, -k - 1);
  const double h = lo / n;
  CompensatedSum s;
  double prev = psi.at(Breakpoint::dyadic(k + 1));
  for (int j = 0; j < n; ++j) {
    const Breakpoint right = j + 1 == n ? Breakpoint::dyadic(k) : Breakpoint(lo + (j + 1) * h);
    const double cur = psi.at(right);
    s.add((cur - prev) / phi.at(Breakpoint(lo + (j + 0.5) * h)));
    prev = cur;
  }
  return s.value();
}

// Richardson-extrapolated block integral: (4 I_2n - I_n) / 3.
template <WeightFunction Phi, WeightFunction Psi>
double block_integral(const Phi& phi, const Psi& psi, int k, int n = 64) {
  const double coarse = stieltjes_block(phi, psi, k, n);
  const double fine = stieltjes_block(phi, psi, k, 2 * n);
  return (4.0 * fine - coarse) / 3.0;
}

inline std::vector<TraceRow> make_trace(const std::vector<double>& terms, const SeriesCertificate& c) {
  std::vector<TraceRow> rows;
  for (std::size_t k = 0; k < terms.size(); ++k) rows.push_back({static_cast<int>(k), terms[k], c.partial_sums[k]});
  return rows;
}

template <WeightFunction Phi>
void note_upper_index(const Phi& phi, std::vector<std::string>& notes) {
  try {
    const DilationProfile p = dilation_profile(phi);
    if (p.delta_est >= 1.0 - 1e-9)
      notes.push_back("upper dilation index of phi is " + std::to_string(p.delta_est) + " (>= 1)");
  } catch (const FitUnstable&) {
    notes.push_back("upper dilation index of phi could not be fitted");
  }
}

}  // namespace detail

// Dyadic series sum_k (psi(2^-k) - psi(2^-k-1)) / phi(2^-k).
template <WeightFunction Phi, WeightFunction Psi>
EmbedReport series_test(const Phi& phi, const Psi& psi, int depth = 256, SeriesOptions opt = {}) {
  if (depth < 8) throw DomainError("series_test needs depth >= 8");
  EmbedReport r;
  r.test = "series";
  const auto terms = detail::dyadic_series_terms(phi, psi, depth);
  r.certificate = certify_series(terms, opt);
  r.verdict = r.certificate.verdict;
  r.trace = detail::make_trace(terms, r.certificate);
  detail::note_upper_index(phi, r.notes);
  return r;
}

// The same question through the integral int_0^1 dpsi/phi, block by block.
template <WeightFunction Phi, WeightFunction Psi>
EmbedReport stieltjes_test(const Phi& phi, const Psi& psi, int depth = 256, SeriesOptions opt = {}) {
  if (depth < 8) throw DomainError("stieltjes_test needs depth >= 8");
  EmbedReport r;
  r.test = "stieltjes";
  std::vector<double> blocks;
  for (int k = 0; k <= depth; ++k) blocks.push_back(std::max(0.0, detail::block_integral(phi, psi, k)));
  r.certificate = certify_series(blocks, opt);
  r.verdict = r.certificate.verdict;
  r.trace = detail::make_trace(blocks, r.certificate);
  return r;
}

// ---------------------------------------------------------------------------
// Index chain: condition (B) gives psi(ts)phi(s) / (psi(s)phi(ts)) <= C t^u,
// hence psi/phi <= C1 t^u and int dpsi/phi <= C1/u.

struct Theorem5Options {
  DilationOptions dilation{};
  int grid = 64;             // dyadic (t, s) grid depth for C and C1
  int depth = 256;           // blocks of the integral
  double margin = 0.01;      // u = gamma(psi/phi) - margin
  double tolerance = 0.05;   // slack on the index inequality
  double rel_tol = 1e-9;     // slack on the integral bound
};

struct Theorem5Report {
  double gamma = 0.0;
  double u = 0.0;
  double C = 0.0;
  double C1 = 0.0;
  double delta_phi = 0.0;
  double integral = 0.0;      // int_0^1 dpsi/phi (block quadrature + certified tail)
  double integral_tail = 0.0;
  double dyadic_sum = 0.0;    // sum a_k / phi(2^-k), a lower Stieltjes sum
  double bound = 0.0;         // C1 / u
  bool index_ok = false;
  bool integral_ok = false;
  bool pass = false;
  SeriesCertificate certificate;
};

template <WeightFunction Phi, WeightFunction Psi>
Theorem5Report theorem5_chain(const Phi& phi, const Psi& psi, Theorem5Options opt = {}) {
  ConditionBOptions bo;
  bo.dilation = opt.dilation;
  const ConditionBResult b = condition_b(phi, psi, bo);
  if (b.verdict != Verdict::holds)
    throw PreconditionFailed("condition (B) does not hold: " + std::string(to_string(b.verdict)) +
                             " (gamma of psi/phi = " + std::to_string(b.gamma_est) + ")");

  Theorem5Report r;
  r.gamma = b.gamma_est;
  r.u = std::max(b.gamma_est - opt.margin, 0.5 * b.gamma_est);

  std::vector<double> lr(static_cast<std::size_t>(2 * opt.grid) + 1);
  for (int i = 0; i <= 2 * opt.grid; ++i) {
    const Breakpoint t = Breakpoint::dyadic(i);
    lr[static_cast<std::size_t>(i)] = psi.log_at(t) - phi.log_at(t);
  }
  const double ln2 = std::numbers::ln2;
  double logC = -INFINITY, logC1 = -INFINITY;
  for (int i = 0; i <= opt.grid; ++i) {
    // t = 2^-i, s = 2^-j: (psi/phi)(ts) / (psi/phi)(s) / t^u
    for (int j = 0; j <= opt.grid; ++j)
      logC = std::max(logC, lr[static_cast<std::size_t>(i + j)] - lr[static_cast<std::size_t>(j)] + r.u * i * ln2);
    logC1 = std::max(logC1, lr[static_cast<std::size_t>(i)] + r.u * i * ln2);
  }
  r.C = std::exp(logC);
  r.C1 = std::exp(logC1);
  r.bound = r.C1 / r.u;

  r.delta_phi = dilation_profile(phi, opt.dilation).delta_est;
  r.index_ok = r.delta_phi <= 1.0 - r.u + opt.tolerance;

  std::vector<double> blocks;
  for (int k = 0; k <= opt.depth; ++k) blocks.push_back(detail::block_integral(phi, psi, k));
  r.certificate = certify_series(blocks);
  r.integral_tail = r.certificate.tail_bound;
  r.integral = r.certificate.partial_sum + r.integral_tail;
  const auto terms = detail::dyadic_series_terms(phi, psi, opt.depth);
  r.dyadic_sum = certify_series(terms).partial_sum;
  r.integral_ok = r.certificate.verdict == SeriesVerdict::converges && r.integral <= r.bound * (1.0 + opt.rel_tol);
  r.pass = r.index_ok && r.integral_ok;
  return r;
}

// ---------------------------------------------------------------------------
// Witness for the failure of (A): points t_k with sum t_k <= 1 and
// phi(t_k) <= C2 psi(t_k), supporting disjoint indicators whose Lorentz
// norms are comparable.

struct Witness {
  std::vector<int> exponents;  // t_k = 2^-exponents[k]
  double C2 = 0.0;             // max phi/psi over the chosen points
  double threshold = 0.0;      // 2 * liminf estimate used for selection
  double liminf = 0.0;
};

struct WitnessResult {
  std::optional<Witness> witness;
  std::string reason;  // why nothing was found
  TrendAnalysis analysis;
};

template <WeightFunction Phi, WeightFunction Psi>
WitnessResult witness_search(const Phi& phi, const Psi& psi, int n, int depth = 60) {
  if (n < 1) throw DomainError("witness_search needs n >= 1");
  std::vector<double> log_psi_over_phi;
  for (int j = 0; j <= depth; ++j) {
    const Breakpoint t = Breakpoint::dyadic(j);
    log_psi_over_phi.push_back(psi.log_at(t) - phi.log_at(t));
  }
  WitnessResult out;
  out.analysis = analyze_trend(log_psi_over_phi);
  if (out.analysis.trend == Trend::vanishes) {
    out.reason = "psi/phi -> 0 (condition (A) holds): phi/psi exceeds every candidate C2";
    return out;
  }
  // liminf of phi/psi from the tail (the last half of the window)
  double lim = INFINITY;
  for (std::size_t j = log_psi_over_phi.size() / 2; j < log_psi_over_phi.size(); ++j)
    lim = std::min(lim, std::exp(-log_psi_over_phi[j]));
  Witness w;
  w.liminf = lim;
  w.threshold = 2.0 * lim;
  for (int j = 2; j <= depth && static_cast<int>(w.exponents.size()) < n; ++j) {
    if (!w.exponents.empty() && j < w.exponents.back() + 2) continue;
    const double r = std::exp(-log_psi_over_phi[static_cast<std::size_t>(j)]);
    if (r <= w.threshold) {
      w.exponents.push_back(j);
      w.C2 = std::max(w.C2, r);
    }
  }
  if (static_cast<int>(w.exponents.size()) < n) {
    out.reason = "only " + std::to_string(w.exponents.size()) + " admissible points up to depth " +
                 std::to_string(depth);
    return out;
  }
  out.witness = w;
  return out;
}

// ---------------------------------------------------------------------------
// Construction of rho with rho/phi -> 0 and M(rho~) inside Lambda(psi).

struct RhoConstruction {
  ConcaveMajorant rho;  // least concave majorant of h_points
  double u = 0.0;
  int K = 0;
  int series_depth = 0;
  double delta_phi = 0.0;
  std::vector<double> a{};  // a_k = psi(2^-k) - psi(2^-k-1), k <= K
  std::vector<double> S{};  // tail sums, truncation tail included
  std::vector<double> g{};  // g_0 = S_0, g_k = max(S_k, 2^-u g_{k-1})
  double truncation_tail = 0.0;
  std::vector<std::pair<double, double>> h_points{};  // (2^-k, sqrt(g_k) phi(2^-k)) and the origin
  double rho_index = 0.0;  // fitted exponent of rho over the deeper half of the grid
};

template <WeightFunction Phi, WeightFunction Psi>
RhoConstruction construct_rho(const Phi& phi, const Psi& psi, std::optional<double> u = std::nullopt, int K = 64) {
  if (K < 8) throw DomainError("construct_rho needs K >= 8");
  const int depth = std::max(4 * K, 256);
  const auto terms = detail::dyadic_series_terms(phi, psi, depth);
  const SeriesCertificate cert = certify_series(terms);
  if (cert.verdict != SeriesVerdict::converges)
    throw PreconditionFailed("the construction needs a convergent dyadic series, verdict: " +
                             std::string(to_string(cert.verdict)));

  const double delta = dilation_profile(phi).delta_est;
  double uu;
  if (u) {
    if (!(*u > 0.0)) throw PreconditionFailed("u must be positive");
    if (delta + *u >= 1.0)
      throw PreconditionFailed("index budget exceeded: delta_phi + u = " + std::to_string(delta + *u) + " >= 1");
    uu = *u;
  } else {
    if (delta >= 1.0) throw PreconditionFailed("no index budget: delta_phi >= 1");
    uu = 0.5 * (1.0 - delta);
  }

  // S_k for k <= K from the full window, summed backwards
  std::vector<double> S(static_cast<std::size_t>(depth) + 1);
  detail::CompensatedSum back;
  back.add(cert.tail_bound);
  for (int k = depth; k >= 0; --k) {
    back.add(terms[static_cast<std::size_t>(k)]);
    S[static_cast<std::size_t>(k)] = back.value();
  }
  const double shrink = std::exp2(-uu);
  std::vector<double> a, Sk, g;
  for (int k = 0; k <= K; ++k) {
    a.push_back(psi.at(Breakpoint::dyadic(k)) - psi.at(Breakpoint::dyadic(k + 1)));
    Sk.push_back(S[static_cast<std::size_t>(k)]);
    g.push_back(k == 0 ? Sk[0] : std::max(Sk.back(), shrink * g.back()));
  }
  std::vector<std::pair<double, double>> h{{0.0, 0.0}};
  for (int k = K; k >= 0; --k)
    h.emplace_back(std::ldexp(1.0, -k), std::sqrt(g[static_cast<std::size_t>(k)]) * phi.at(Breakpoint::dyadic(k)));

  RhoConstruction rc{.rho = concave_majorant(h)};
  rc.u = uu;
  rc.K = K;
  rc.series_depth = depth;
  rc.delta_phi = delta;
  rc.truncation_tail = cert.tail_bound;
  rc.a = std::move(a);
  rc.S = std::move(Sk);
  rc.g = std::move(g);
  rc.h_points = std::move(h);

  std::vector<double> x, y;
  for (int k = K / 2; k <= K; ++k) {
    const Breakpoint t = Breakpoint::dyadic(k);
    x.push_back(t.log());
    y.push_back(rc.rho.function.log_at(t));
  }
  rc.rho_index = detail::ls_slope(x, y);
  return rc;
}

struct RatioCheck {
  bool pass = false;
  bool decreasing = false;
  double final_ratio = 0.0;
  std::vector<double> ratios;
};

// f(2^-k)/phi(2^-k) nonincreasing in k and below eps at k = depth.
template <WeightFunction F, WeightFunction Phi>
RatioCheck check_ratio_vanishes(const F& f, const Phi& phi, int depth, double eps = 1e-2) {
  RatioCheck c;
  c.decreasing = true;
  for (int k = 0; k <= depth; ++k) {
    const Breakpoint t = Breakpoint::dyadic(k);
    c.ratios.push_back(std::exp(f.log_at(t) - phi.log_at(t)));
    if (k > 0 && c.ratios[k] > c.ratios[k - 1] * (1.0 + 1e-12)) c.decreasing = false;
  }
  c.final_ratio = c.ratios.back();
  c.pass = c.decreasing && c.final_ratio < eps;
  return c;
}

struct RhoVerification {
  RatioCheck ratio;                // rho/phi -> 0
  SeriesCertificate rho_series;    // sum a_k / rho(2^-k)
  SeriesCertificate abel_dini;     // sum a_k / (sqrt(S_k) phi(2^-k))
  bool pass = false;
};

template <WeightFunction Phi, WeightFunction Psi>
RhoVerification verify_rho(const RhoConstruction& rc, const Phi& phi, const Psi& psi, int depth = -1,
                           double eps = 1e-2) {
  const int d = depth < 0 ? rc.K : std::min(depth, rc.K);
  RhoVerification v;
  v.ratio = check_ratio_vanishes(rc.rho.function, phi, d, eps);
  v.rho_series = certify_series(detail::dyadic_series_terms(rc.rho.function, psi, d));
  std::vector<double> t;
  for (int k = 0; k <= d; ++k)
    t.push_back(rc.a[static_cast<std::size_t>(k)] /
                (std::sqrt(rc.S[static_cast<std::size_t>(k)]) * phi.at(Breakpoint::dyadic(k))));
  v.abel_dini = certify_series(t);
  v.pass = v.ratio.pass && v.rho_series.verdict == SeriesVerdict::converges &&
           v.abel_dini.verdict == SeriesVerdict::converges;
  return v;
}

// ---------------------------------------------------------------------------

struct ClampedReciprocal {
  StepFunction x;
  double clamp_level = 0.0;  // 1/phi(2^-depth)
  int depth = 0;
  int subdivisions = 0;
};

// Step majorant of min(1/phi(t), 1/phi(2^-depth)): each dyadic block
// (2^-k-1, 2^-k] is cut into `sub` equal parts carrying the value at the
// left end (1/phi decreases); (0, 2^-depth] carries the clamp level.
template <WeightFunction Phi>
ClampedReciprocal clamp_reciprocal(const Phi& phi, int depth = 200, int sub = 8) {
  if (depth < 1 || depth > 1000) throw DomainError("clamp depth must lie in [1, 1000]");
  if (sub < 1) throw DomainError("clamp needs at least one part per block");
  std::vector<Breakpoint> right;
  std::vector<double> values;
  const double level = std::exp(-phi.log_at(Breakpoint::dyadic(depth)));
  right.push_back(Breakpoint::dyadic(depth));
  values.push_back(level);
  for (int k = depth - 1; k >= 0; --k) {
    const double lo = std::ldexp(1.0, -k - 1);
    const double h = lo / sub;
    for (int j = 0; j < sub; ++j) {
      const double left = lo + j * h;
      right.push_back(j + 1 == sub ? Breakpoint::dyadic(k) : Breakpoint(left + h));
      values.push_back(std::exp(-phi.log_at(j == 0 ? Breakpoint::dyadic(k + 1) : Breakpoint(left))));
    }
  }
  return {StepFunction(std::move(right), std::move(values)), level, depth, sub};
}

}  // namespace symspace

#endif  // SYMSPACE_EMBED_HPP
