#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "symspace/embed.hpp"
#include "symspace/series.hpp"

using namespace symspace;

namespace {

const GFun kPsi = GFun::powlog(0.5, 0.5);

using Pair = testing_support::WeightPair;
using testing_support::catalog_pairs;

}  // namespace

TEST(Series, CertificateKinds) {
  std::vector<double> geo, p2, harmonic, zero(100, 0.0);
  for (int k = 0; k < 200; ++k) {
    geo.push_back(std::pow(0.5, k));
    p2.push_back(1.0 / ((k + 2.0) * (k + 2.0)));
    harmonic.push_back(1.0 / (k + 2.0));
  }
  const auto g = certify_series(geo);
  EXPECT_EQ(g.verdict, SeriesVerdict::converges);
  EXPECT_EQ(g.method, "geometric");
  EXPECT_NEAR(g.partial_sum + g.tail_bound, 2.0, 1e-15);
  const auto p = certify_series(p2);
  EXPECT_EQ(p.verdict, SeriesVerdict::converges);
  EXPECT_EQ(p.method, "p-series");
  EXPECT_NEAR(p.slope, -2.0, 1e-9);
  EXPECT_EQ(certify_series(harmonic).verdict, SeriesVerdict::inconclusive);
  EXPECT_EQ(certify_series(zero).verdict, SeriesVerdict::converges);
  EXPECT_THROW(certify_series(std::vector<double>{1.0, -1.0}), DomainError);
}

TEST(SeriesTest, Examples) {
  const auto geo = series_test(GFun::pow(0.5), GFun::pow(1.0));
  EXPECT_EQ(geo.verdict, SeriesVerdict::converges);
  const double oracle = 0.5 / (1.0 - std::sqrt(0.5));
  EXPECT_NEAR(geo.certificate.partial_sum + geo.certificate.tail_bound, oracle, 1e-12);
  for (int k = 0; k < 20; ++k) EXPECT_NEAR(geo.trace[k].term, std::exp2(-k / 2.0 - 1.0), 1e-16);

  const auto same = series_test(GFun::pow(0.5), GFun::pow(0.5));
  EXPECT_EQ(same.verdict, SeriesVerdict::diverges);
  EXPECT_NEAR(same.trace[100].term, 1.0 - std::sqrt(0.5), 1e-15);

  const auto cex = series_test(kPsi, GFun::pow(0.5));
  EXPECT_EQ(cex.verdict, SeriesVerdict::diverges);
  EXPECT_NEAR(cex.certificate.slope, -0.5, 0.01);
  for (int k : {0, 10, 100}) EXPECT_NEAR(cex.trace[k].term, (1.0 - std::sqrt(0.5)) / std::sqrt(k + 2.0), 1e-15);
}

TEST(SeriesTest, WarnsOnFullUpperIndex) {
  EXPECT_FALSE(series_test(GFun::pow(1.0), GFun::pow(1.0)).notes.empty());
  EXPECT_TRUE(series_test(GFun::pow(0.5), GFun::pow(1.0)).notes.empty());
}

TEST(Embed, IntegralAndSeriesAgree) {
  for (const Pair& p : catalog_pairs()) {
    const auto s = series_test(p.phi, p.psi);
    const auto i = stieltjes_test(p.phi, p.psi);
    EXPECT_EQ(s.verdict, i.verdict) << p.phi.spec() << " " << p.psi.spec();
  }
}

TEST(Embed, ConvergenceBoundsClampedLorentzNorm) {
  for (const Pair& p : catalog_pairs()) {
    if (series_test(p.phi, p.psi).verdict != SeriesVerdict::converges) continue;
    const double n100 = lorentz_norm(clamp_reciprocal(p.phi, 100).x, p.psi);
    const double n200 = lorentz_norm(clamp_reciprocal(p.phi, 200).x, p.psi);
    const double n400 = lorentz_norm(clamp_reciprocal(p.phi, 400).x, p.psi);
    EXPECT_LE(n200 - n100, 1e-3 * n100 + 1e-12) << p.phi.spec() << " " << p.psi.spec();
    EXPECT_LE(n400 - n200, 1e-6 * n200 + 1e-12) << p.phi.spec() << " " << p.psi.spec();
  }
  // divergent pair: the norm keeps growing with the clamp depth
  const double d100 = lorentz_norm(clamp_reciprocal(kPsi, 100).x, GFun::pow(0.5));
  const double d400 = lorentz_norm(clamp_reciprocal(kPsi, 400).x, GFun::pow(0.5));
  EXPECT_GT(d400, 1.5 * d100);
}

TEST(Embed, ClampedReciprocalDominatesClamp) {
  const auto c = clamp_reciprocal(GFun::pow(0.5), 20, 4);
  EXPECT_DOUBLE_EQ(c.clamp_level, std::exp2(10.0));
  for (double t : {1e-7, 1e-4, 0.01, 0.3, 0.999}) EXPECT_GE(c.x.value_at(t), std::min(1.0 / std::sqrt(t), 1024.0));
  // left end value of (1/2, 5/8]
  EXPECT_DOUBLE_EQ(c.x.value_at(0.6), std::sqrt(2.0));
}

TEST(Rho, WorkedExample) {
  const GFun phi = GFun::pow(0.5), psi = GFun::pow(0.75);
  const RhoConstruction rc = construct_rho(phi, psi, 0.25);
  const double c = (1.0 - std::exp2(-0.75)) / (1.0 - std::exp2(-0.25));
  EXPECT_EQ(rc.g[0], rc.S[0]);
  for (int k = 0; k <= rc.K; ++k) {
    EXPECT_NEAR(rc.S[k], c * std::exp2(-k / 4.0), 1e-12) << k;
    EXPECT_NEAR(rc.g[k], rc.S[0] * std::exp2(-k / 4.0), 1e-10) << k;
  }
  EXPECT_NEAR(rc.rho_index, 0.625, 0.03);
  for (std::size_t k = 1; k < rc.g.size(); ++k) {
    EXPECT_LE(rc.g[k], rc.g[k - 1]);
    EXPECT_GE(rc.g[k], rc.S[k]);
    EXPECT_GE(rc.g[k], std::exp2(-rc.u) * rc.g[k - 1]);
    EXPECT_EQ(rc.g[k], std::max(rc.S[k], std::exp2(-rc.u) * rc.g[k - 1]));
  }
  for (const auto& [t, h] : rc.h_points) {
    if (t > 0.0) {
      EXPECT_GE(rc.rho.function(t), h * (1 - 1e-15));
    }
  }

  const RhoVerification v = verify_rho(rc, phi, psi);
  EXPECT_TRUE(v.ratio.pass);
  EXPECT_EQ(v.rho_series.verdict, SeriesVerdict::converges);
  EXPECT_EQ(v.abel_dini.verdict, SeriesVerdict::converges);
  EXPECT_TRUE(v.pass);
  // negative control: phi against itself
  EXPECT_FALSE(check_ratio_vanishes(phi, phi, 60).pass);
}

TEST(Rho, Preconditions) {
  EXPECT_THROW(construct_rho(GFun::pow(0.5), GFun::pow(0.5)), PreconditionFailed);
  EXPECT_THROW(construct_rho(GFun::pow(0.5), GFun::pow(0.75), 0.6), PreconditionFailed);
  EXPECT_THROW(construct_rho(GFun::pow(0.5), GFun::pow(0.75), 0.0), PreconditionFailed);
  const RhoConstruction rc = construct_rho(GFun::pow(0.5), GFun::pow(0.75));
  EXPECT_NEAR(rc.u, 0.25, 0.01);
}

TEST(Rho, InvariantsAcrossPairs) {
  for (const Pair& p : catalog_pairs()) {
    if (series_test(p.phi, p.psi).verdict != SeriesVerdict::converges) continue;
    const RhoConstruction rc = construct_rho(p.phi, p.psi);
    EXPECT_EQ(rc.g[0], rc.S[0]);
    for (std::size_t k = 1; k < rc.g.size(); ++k) {
      EXPECT_EQ(rc.g[k], std::max(rc.S[k], std::exp2(-rc.u) * rc.g[k - 1]));
      EXPECT_LE(rc.g[k], rc.g[k - 1]);
    }
    for (const auto& [t, h] : rc.h_points) {
      if (t > 0.0) {
        EXPECT_GE(rc.rho.function(t), h * (1 - 1e-15));
      }
    }
  }
}

TEST(IndexChain, PowerPairs) {
  for (auto [a, b] : {std::pair{0.5, 0.75}, std::pair{0.25, 0.5}}) {
    const Theorem5Report r = theorem5_chain(GFun::pow(a), GFun::pow(b));
    EXPECT_NEAR(r.u, b - a, 0.03);
    EXPECT_NEAR(r.C, 1.0, 1e-12);
    EXPECT_NEAR(r.integral, b / (b - a), 1e-6);
    EXPECT_LE(r.integral, r.bound);
    EXPECT_LE(r.dyadic_sum, r.integral);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(series_test(GFun::pow(a), GFun::pow(b)).verdict, SeriesVerdict::converges);
  }
}

TEST(IndexChain, Preconditions) {
  EXPECT_THROW(theorem5_chain(GFun::pow(0.5), GFun::pow(0.5)), PreconditionFailed);
  EXPECT_THROW(theorem5_chain(kPsi, GFun::pow(0.5)), PreconditionFailed);
}

TEST(IndexChain, ImpliesSeriesConvergence) {
  for (const Pair& p : catalog_pairs()) {
    try {
      const Theorem5Report r = theorem5_chain(p.phi, p.psi);
      if (!r.pass) continue;
      EXPECT_EQ(series_test(p.phi, p.psi).verdict, SeriesVerdict::converges) << p.phi.spec();
    } catch (const PreconditionFailed&) {
    }
  }
}

TEST(Witness, Examples) {
  const auto same = witness_search(GFun::pow(0.5), GFun::pow(0.5), 5);
  ASSERT_TRUE(same.witness);
  EXPECT_EQ(same.witness->exponents, (std::vector<int>{2, 4, 6, 8, 10}));
  EXPECT_EQ(same.witness->C2, 1.0);

  EXPECT_FALSE(witness_search(kPsi, GFun::pow(0.5), 5).witness);

  const auto third = witness_search(GFun::pow(0.5), GFun::scaled(1.0 / 3.0, GFun::pow(0.5)), 3);
  ASSERT_TRUE(third.witness);
  double total = 0.0;
  for (int e : third.witness->exponents) total += std::ldexp(1.0, -e);
  EXPECT_LE(total, 1.0);
  EXPECT_NEAR(third.witness->C2, 3.0, 1e-12);
}

TEST(Witness, LorentzNormsComparable) {
  const GFun phi = GFun::pow(0.5), psi = GFun::scaled(0.25, GFun::pow(0.5));
  const auto w = witness_search(phi, psi, 4);
  ASSERT_TRUE(w.witness);
  for (int e : w.witness->exponents) {
    const StepFunction x = StepFunction::indicator(Breakpoint::dyadic(e));
    EXPECT_LE(lorentz_norm(x, phi), w.witness->C2 * lorentz_norm(x, psi) * (1 + 1e-15));
  }
}

TEST(Conditions, BImpliesAOnCatalog) {
  int holds_b = 0;
  for (const Pair& p : catalog_pairs()) {
    const auto b = condition_b(p.phi, p.psi);
    const auto a = condition_a(p.phi, p.psi);
    if (b.verdict == Verdict::holds) {
      ++holds_b;
      EXPECT_EQ(a.verdict, Verdict::holds) << p.phi.spec() << " " << p.psi.spec();
    }
  }
  EXPECT_GE(holds_b, 4);
}
