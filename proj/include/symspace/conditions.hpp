#ifndef SYMSPACE_CONDITIONS_HPP
#define SYMSPACE_CONDITIONS_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "symspace/dilation.hpp"
#include "symspace/errors.hpp"
#include "symspace/gfun.hpp"
#include "symspace/trend.hpp"

namespace symspace {

enum class Verdict { holds, fails, inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct ConditionAOptions {
  int depth = 60;
  TrendOptions trend{};
};

struct ConditionAResult {
  Verdict verdict = Verdict::inconclusive;
  TrendAnalysis analysis;  // trace of ln(psi/phi)(2^-j), j = 0..depth
};

// psi(t)/phi(t) -> 0 as t -> 0, decided from r_j = psi(2^-j)/phi(2^-j).
// Throws EmbedOrderError when r_j grows without bound (psi not dominated).
template <WeightFunction Phi, WeightFunction Psi>
ConditionAResult condition_a(const Phi& phi, const Psi& psi, ConditionAOptions opt = {}) {
  if (opt.depth < 4) throw DomainError("condition_a needs depth >= 4");
  std::vector<double> log_r;
  for (int j = 0; j <= opt.depth; ++j) {
    const Breakpoint t = Breakpoint::dyadic(j);
    log_r.push_back(psi.log_at(t) - phi.log_at(t));
  }
  ConditionAResult out;
  out.analysis = analyze_trend(log_r, opt.trend);
  switch (out.analysis.trend) {
    case Trend::vanishes: out.verdict = Verdict::holds; break;
    case Trend::persists: out.verdict = Verdict::fails; break;
    case Trend::unbounded: throw EmbedOrderError("psi/phi is unbounded near 0: psi is not dominated by phi");
    case Trend::inconclusive: out.verdict = Verdict::inconclusive; break;
  }
  return out;
}

struct ConditionBOptions {
  DilationOptions dilation{};
  double threshold = 0.02;
  int order_depth = 60;
};

struct ConditionBResult {
  Verdict verdict = Verdict::inconclusive;
  std::optional<DilationProfile> profile;  // absent only if the fit failed outright
  double gamma_est = 0.0;
  bool fit_stable = false;
};

// Lower dilation index of psi/phi is positive.
template <WeightFunction Phi, WeightFunction Psi>
ConditionBResult condition_b(const Phi& phi, const Psi& psi, ConditionBOptions opt = {}) {
  // order check first, exactly as for condition (A)
  ConditionAOptions ao;
  ao.depth = opt.order_depth;
  (void)condition_a(phi, psi, ao);

  ConditionBResult out;
  try {
    const DilationProfile p = dilation_profile(ratio(psi, phi), opt.dilation);
    out.gamma_est = p.gamma_est;
    out.fit_stable = true;
    out.profile = p;
    out.verdict = p.gamma_est > opt.threshold ? Verdict::holds : Verdict::fails;
  } catch (const FitUnstable& e) {
    out.profile = e.profile();
    out.gamma_est = e.profile().gamma_est;
    out.verdict = Verdict::inconclusive;
  }
  return out;
}

}  // namespace symspace

#endif  // SYMSPACE_CONDITIONS_HPP
