#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "support.hpp"
#include "symspace/cex.hpp"

using namespace symspace;

namespace {

// int_0^b dt / (t^{1/2} log2^{1/2}(4/t)) via t = 4 * 2^{-L}: an incomplete gamma of order 1/2
double inv_psi_closed(double b) {
  const double L0 = 2.0 - std::log2(b);
  return 2.0 * std::sqrt(2.0 * std::numbers::pi * std::numbers::ln2) * std::erfc(std::sqrt(L0 * std::numbers::ln2 / 2));
}

double b_double(int k) { return std::sqrt(std::exp2(k) / (k + 2.0)); }

const CexFamily& family5() {
  static const CexFamily f = build_family(5);
  return f;
}

}  // namespace

TEST(CexFamily, NSequence) {
  // exact rational harmonic sums give 1, 5, 16, 46, 127, 347, 945
  EXPECT_EQ(cex::n_sequence(7), (std::vector<std::int64_t>{1, 5, 16, 46, 127, 347, 945}));
  EXPECT_DOUBLE_EQ(cex::harmonic_block(1, 5), 1.0 / 3 + 1.0 / 4 + 1.0 / 5 + 1.0 / 6);
  EXPECT_GT(cex::harmonic_block(1, 6), 1.0);
  double h = 0.0;
  for (int j = 7; j <= 17; ++j) h += 1.0 / j;
  EXPECT_NEAR(cex::harmonic_block(5, 16), h, 1e-15);
  EXPECT_NEAR(h, 0.98955, 1e-5);
  EXPECT_GT(h + 1.0 / 18, 1.0);
}

TEST(CexFamily, MaximalityAllPairs) {
  const CexFamily& f = family5();
  for (int m = 0; m + 1 < static_cast<int>(f.n.size()); ++m) {
    const double s = cex::harmonic_block(f.n[m], f.n[m + 1]);
    EXPECT_LE(s, 1.0);
    EXPECT_GT(s + 1.0 / (f.n[m + 1] + 2.0), 1.0);
  }
}

TEST(CexFamily, BTimesPsiIsOne) {
  EXPECT_DOUBLE_EQ(cex::b(0).to_double(), std::sqrt(0.5));
  const CexFamily& f = family5();
  ASSERT_EQ(f.b.size(), 945u);
  for (std::size_t k = 0; k < f.b.size(); ++k) {
    const ExactScalar p = f.b[k] * f.psi.exact_at(Breakpoint::dyadic(static_cast<std::int64_t>(k)));
    EXPECT_LE(std::fabs((p - ExactScalar(1.0)).to_double()), 2 * std::numeric_limits<double>::epsilon()) << k;
  }
  for (int k : {0, 1, 7, 30}) EXPECT_NEAR(f.b[k].to_double(), b_double(k), 1e-15 * b_double(k));
}

TEST(CexFamily, DepthBudget) {
  EXPECT_NO_THROW(build_family(0));
  EXPECT_THROW(build_family(6), DepthError);
  EXPECT_THROW(build_family(12), DepthError);
  EXPECT_THROW(build_family(-1), DomainError);
}

TEST(CexFamily, W0Shape) {
  const CexFamily& f = family5();
  const StepFunction& w0 = f.w[0];
  // b_1, b_2, b_3 on their octaves, b_4 on (0, 1/16], zero on (1/2, 1]
  const double oracle = b_double(1) / 4 + b_double(2) / 8 + b_double(3) / 16 + b_double(4) / 16;
  EXPECT_NEAR(integrate(w0), oracle, 1e-15);
  EXPECT_EQ(w0.value_at(0.75), 0.0);
  EXPECT_DOUBLE_EQ(w0.value_at(0.3), b_double(1));
  EXPECT_DOUBLE_EQ(w0.value_at(1e-3), b_double(4));
  EXPECT_NEAR(std::pow(lp_norm(w0, 2.0), 2), 1.0 / 6 + 1.0 / 10 + 1.0 / 8 + 1.0 / 6, 1e-12);
  EXPECT_NEAR(lp_norm(w0, 2.0), 0.74722, 1e-5);
}

TEST(CexFamily, WNormBounds) {
  const CexFamily& f = family5();
  for (int m = 0; m <= 5; ++m) {
    EXPECT_GE(f.w_norm[m], 0.5);
    EXPECT_LE(f.w_norm[m], 1.0);
    EXPECT_NEAR(f.w_norm[m] * f.w_norm[m], cex::w_norm_squared(f.n[m], f.n[m + 1]), 1e-13);
  }
}

TEST(CexFamily, VStructure) {
  const CexFamily& f = family5();
  const std::vector<double> coeffs{2.0, 3.0};
  const std::vector<StepFunction> parts{f.v[0], f.v[1]};
  const StepFunction x = disjoint_sum(coeffs, parts);
  for (int k = 1; k < 5; ++k) EXPECT_DOUBLE_EQ(x.value_at(0.75 * std::exp2(-k)), 2.0 * b_double(k)) << k;
  for (int k = 5; k < 16; ++k) EXPECT_DOUBLE_EQ(x.value_at(0.75 * std::exp2(-k)), 3.0 * b_double(k)) << k;
  EXPECT_EQ(x.value_at(0.75 * std::exp2(-16)), 0.0);
  EXPECT_EQ(x.value_at(0.9), 0.0);

  std::vector<double> ones(f.v.size(), 1.0);
  EXPECT_NO_THROW(disjoint_sum(ones, f.v));
  for (int m = 0; m <= 5; ++m) {
    const StepFunction d = combine(f.v[m], f.w[m], [](double a, double b) { return b - a; });
    for (double v : d.values()) EXPECT_GE(v, 0.0);
    const auto [lo, hi] = f.D(m);
    EXPECT_DOUBLE_EQ(integrate(f.v[m]), integrate(restrict_to(f.w[m], lo, hi)));
  }
}

TEST(FNorm, Examples) {
  const CexFamily& f = family5();
  for (double b : {1.0, 0.25, 0.1, 1e-3, 1e-9}) EXPECT_NEAR(f_norm(StepFunction::indicator(b), f).value, std::sqrt(b), 1e-15);
  // self-pairing plus the L2 bound pin the value to ||w_m||_2
  for (int m = 0; m <= 5; ++m) EXPECT_NEAR(f_norm(f.w[m], f).value, f.w_norm[m], 1e-12 * f.w_norm[m]);
  EXPECT_EQ(f_norm(StepFunction::constant(0.0), f).value, 0.0);
  const FNormResult r = f_norm(clamp_reciprocal(f.psi, 200, 8).x, f);
  EXPECT_LE(r.value, 4.0);
  EXPECT_LT(r.tail_bound, 1e-12 * r.value);
}

TEST(FNorm, VLowerBound) {
  const CexFamily& f = family5();
  for (int m = 0; m <= 5; ++m) EXPECT_GE(f_norm(f.v[m], f).value, 0.25);
}

TEST(FNorm, PairingsBeyondTheFamily) {
  // a family built to depth 0 must still see the pairings with w_1..w_5
  const CexFamily small = build_family(0);
  const CexFamily& big = family5();
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const StepFunction x = testing_support::random_step(rng);
    EXPECT_NEAR(f_norm(x, small).value, f_norm(x, big).value, 1e-14 * f_norm(x, big).value);
  }
  EXPECT_NEAR(f_norm(big.v[4], small).value, f_norm(big.v[4], big).value, 1e-12);
}

TEST(FNorm, Sandwich) {
  const CexFamily& f = family5();
  std::mt19937_64 rng(29);
  for (int i = 0; i < 1000; ++i) {
    const StepFunction x = testing_support::random_step(rng, 12, true);
    const double fn = f_norm(x, f).value;
    ASSERT_LE(marcinkiewicz_norm(x, GFun::pow(0.5)).value, fn * (1 + 1e-12));
    ASSERT_LE(fn, lp_norm(x, 2.0) * (1 + 1e-12));
  }
}

TEST(Quadrature, BracketsContainClosedForm) {
  for (double b : {1.0, 0.75, 0.3, 1.0 / 1024, 1e-9}) {
    const Bracket br = cex::inv_psi_integral(b);
    const double exact = inv_psi_closed(b);
    EXPECT_LE(br.lo, exact) << b;
    EXPECT_GE(br.hi, exact) << b;
    EXPECT_LE(br.hi - br.lo, 2e-4 * exact) << b;
  }
  for (std::int64_t k : {0, 3, 40, 900}) {
    const Bracket j = cex::inv_psi_octave(k);
    EXPECT_LE(j.hi - j.lo, 1.01e-4 * j.hi);
  }
  // m = 0: b_k times octave integrals plus b_4 int_0^{1/16}
  double oracle = 0.0;
  for (int k = 1; k <= 3; ++k) oracle += b_double(k) * (inv_psi_closed(std::exp2(-k)) - inv_psi_closed(std::exp2(-k - 1)));
  oracle += b_double(4) * inv_psi_closed(1.0 / 16);
  const Bracket w0 = cex::w_over_psi(1, 5);
  EXPECT_LE(w0.lo, oracle);
  EXPECT_GE(w0.hi, oracle);
  EXPECT_LE(w0.hi, 2.0);
}

TEST(Samples, QuasiAndLowerBounds) {
  const CexFamily f = build_family(3);
  const auto coeffs = cex::draw_coefficients(3, 200, kDefaultSeed);
  for (std::size_t i = 9; i < coeffs.size(); i += 10) {
    EXPECT_EQ(std::count(coeffs[i].begin(), coeffs[i].end(), 1.0), 1);
    EXPECT_EQ(std::count(coeffs[i].begin(), coeffs[i].end(), 0.0), 3);
  }
  const auto records = cex::evaluate_samples(f, coeffs);
  ASSERT_EQ(records.size(), coeffs.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SampleRecord& r = records[i];
    EXPECT_EQ(r.index, i);
    EXPECT_LE(r.quasi, r.max_coeff * (1 + 8 * std::numeric_limits<double>::epsilon()));
    EXPECT_GE(r.f_norm, r.max_coeff / 4);
    EXPECT_LE(r.e_norm, 2.0 * r.max_coeff);
    EXPECT_LE(r.ratio, 8.0);
  }
  // the zero vector is skipped, not divided by
  const SampleRecord z = cex::evaluate_sample(f, 0, std::vector<double>(4, 0.0));
  EXPECT_EQ(z.ratio, 0.0);
  EXPECT_EQ(z.f_norm, 0.0);
}

TEST(Samples, SeedReproducible) {
  const CexFamily f = build_family(2);
  const auto a = cex::evaluate_samples(f, cex::draw_coefficients(2, 40, 7));
  const auto b = cex::evaluate_samples(f, cex::draw_coefficients(2, 40, 7));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].coeffs, b[i].coeffs);
    EXPECT_EQ(a[i].ratio, b[i].ratio);
  }
}

TEST(Samples, SpreadCapCalibration) {
  // brute force over the grid {0, 1/4, ..., 1}^4 at M_max = 3; frozen result 1.453305
  // (the finer grid {0, 1/8, ..., 1}^4 gives the same extremes)
  const CexFamily f = build_family(3);
  std::vector<std::vector<double>> grid;
  for (int idx = 1; idx < 5 * 5 * 5 * 5; ++idx) {
    std::vector<double> a;
    for (int r = idx, i = 0; i < 4; ++i, r /= 5) a.push_back((r % 5) / 4.0);
    grid.push_back(std::move(a));
  }
  const SampleSummary s = cex::summarize(cex::evaluate_samples(f, grid));
  EXPECT_NEAR(s.spread(), 1.453305, 1e-6);
  EXPECT_LE(s.spread(), kSpreadCap);
  EXPECT_LE(s.max_quasi_over_max, 1 + 8 * std::numeric_limits<double>::epsilon());
}

TEST(Conditions, CounterexamplePair) {
  const ConditionsReport r = conditions_check(build_family(0));
  ASSERT_EQ(r.claims.size(), 3u);
  for (const ClaimEntry& c : r.claims) EXPECT_TRUE(c.pass) << c.claim_id;
}

TEST(VerifyAll, DegenerateRun) {
  const CexReport r = verify_all(build_family(0), 1);
  for (const ClaimEntry& c : r.claims) EXPECT_TRUE(c.pass) << c.claim_id << " " << c.computed;
  EXPECT_TRUE(r.pass());
}

TEST(VerifyAll, DepthThreeAllClaims) {
  const CexReport r = verify_all(build_family(3), 200);
  for (const ClaimEntry& c : r.claims) EXPECT_TRUE(c.pass) << c.claim_id << " " << c.computed;
  EXPECT_EQ(r.full.count, 200u);
  EXPECT_EQ(r.half.count, 100u);
}
