#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "cwgng/cwgng.hpp"
#include "support/frozen_constants.hpp"

using namespace cwgng;

namespace {

ModelParams P(double J, double h) { return ModelParams::make(J, h); }

MCConfig config(int N, long replicas, std::uint64_t seed = 11) {
  MCConfig c;
  c.N = N;
  c.replicas = replicas;
  c.seed = seed;
  return c;
}

double magnetization(const SpinConfiguration& s) {
  return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
}

struct Moments {
  double mean;
  double std_err;
};

Moments initial_moments(const ModelParams& p, int N, int draws, std::uint64_t seed) {
  const MCConfig c = config(N, draws, seed);
  double s = 0, s2 = 0;
  for (int i = 0; i < draws; ++i) {
    ReplicaStream rng(seed, static_cast<std::uint64_t>(i));
    const double m = magnetization(mc_sample_initial(c, p, rng));
    s += m;
    s2 += m * m;
  }
  const double mean = s / draws;
  return {mean, std::sqrt((s2 / draws - mean * mean) / draws)};
}

}  // namespace

TEST(ReplicaStream, PureFunctionOfSeedAndIndex) {
  ReplicaStream a(5, 17), b(5, 17), c(5, 18), d(6, 17);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
  }
  ReplicaStream u(9, 0);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    EXPECT_LT(u.below(7), 7u);
  }
}

TEST(InitialSampler, LevelLawAndConfiguration) {
  const InitialSampler s(50, P(1.2, 0.1));
  double total = 0;
  for (int k = 0; k <= 50; ++k) total += s.level_probability(k);
  EXPECT_NEAR(total, 1.0, 1e-12);
  ReplicaStream rng(1, 2);
  for (int i = 0; i < 200; ++i) {
    ReplicaStream probe = rng;
    const int plus = s.sample_plus_count(probe);
    const SpinConfiguration c = s.sample(rng);
    EXPECT_EQ(std::count(c.begin(), c.end(), 1), plus);
    EXPECT_EQ(c.size(), 50u);
  }
}

TEST(InitialSampler, IndependentSpinsAtZeroCoupling) {
  const Moments field = initial_moments(P(1e-12, 0.5), 100, 100000, 3);
  EXPECT_NEAR(field.mean, std::tanh(0.5), 3 * field.std_err);
  const Moments none = initial_moments(P(1e-12, 0.0), 100, 100000, 4);
  EXPECT_NEAR(none.mean, 0.0, 3 * none.std_err);
}

TEST(InitialSampler, TwoSymmetricModesInThePhaseCoexistenceRegion) {
  const InitialSampler s(400, P(2.0, 0));
  // Level probabilities peak near +-m_infinity.
  int best = 0;
  for (int k = 0; k <= 400; ++k) {
    if (s.level_probability(k) > s.level_probability(best)) best = k;
  }
  const double m_peak = (2.0 * best - 400) / 400;
  EXPECT_NEAR(std::abs(m_peak), frozen::kMInfJ2, 0.01);
  EXPECT_NEAR(s.level_probability(best), s.level_probability(400 - best), 1e-12);
  EXPECT_LT(s.level_probability(200), 1e-6 * s.level_probability(best));
}

TEST(Evolve, IdentityAtZeroTime) {
  SpinConfiguration c{1, -1, 1, 1, -1};
  const SpinConfiguration before = c;
  ReplicaStream rng(1, 1);
  mc_evolve(c, 0.0, rng);
  EXPECT_EQ(c, before);
}

TEST(Evolve, SingleSpinStayProbability) {
  const long trials = 1000000;
  long stays = 0;
  ReplicaStream rng(21, 0);
  for (long i = 0; i < trials; ++i) {
    SpinConfiguration c{1};
    mc_evolve(c, 1.0, rng);
    stays += c[0] == 1;
  }
  const double p = std::exp(-1.0) * std::cosh(1.0);
  EXPECT_NEAR(static_cast<double>(stays) / trials, p, 3 * std::sqrt(p * (1 - p) / trials));
}

TEST(Evolve, MeanDecaysAndExchangeabilityHolds) {
  const ModelParams p = P(2.0, 0.3);
  const MCConfig c = config(200, 20000);
  const int n = 20000;
  double d = 0, d2 = 0;
  double c12 = 0, c34 = 0;
  for (int i = 0; i < n; ++i) {
    ReplicaStream rng(31, static_cast<std::uint64_t>(i));
    SpinConfiguration s = mc_sample_initial(c, p, rng);
    const double m0 = magnetization(s);
    mc_evolve(s, 0.4, rng);
    const double x = magnetization(s) - std::exp(-0.8) * m0;
    d += x;
    d2 += x * x;
    c12 += s[0] * s[1];
    c34 += s[2] * s[3];
  }
  const double mean = d / n;
  EXPECT_NEAR(mean, 0.0, 3 * std::sqrt((d2 / n - mean * mean) / n));
  // Pair correlations of different spin pairs agree (each is a +-1 average).
  EXPECT_NEAR(c12 / n, c34 / n, 4 * std::sqrt(2.0 / n));
}

TEST(SpecKernelMC, MatchesTheLimitingKernelInTheGibbsRegime) {
  const ModelParams p = P(1.0, 0.2);
  const KernelEstimate e = mc_spec_kernel(config(200, 100000), p, 0.5, 0.3);
  const double m0 = global_minimizers(p, 0.5, 0.3).minima.front().m;
  EXPECT_NEAR(e.gamma_plus_hat, spec_kernel(0.5, 0.3, m0, p).gamma_plus, std::max(3 * e.std_err, 0.02));
  EXPECT_GE(e.accepted, 100);
  EXPECT_EQ(e.replicas, 100000);
}

TEST(SpecKernelMC, StaticLimit) {
  const ModelParams p = P(0.5, 0.2);
  const KernelEstimate e = mc_spec_kernel(config(200, 100000), p, 1e-3, 0.35);
  const double x = 0.5 * 0.35 + 0.2;
  EXPECT_NEAR(e.gamma_plus_hat, std::exp(x) / (2 * std::cosh(x)), std::max(3 * e.std_err, 0.02));
}

TEST(SpecKernelMC, SpinFlipSymmetry) {
  const ModelParams p = P(0.8, 0);
  const KernelEstimate a = mc_spec_kernel(config(200, 100000, 5), p, 0.7, 0.25);
  const KernelEstimate b = mc_spec_kernel(config(200, 100000, 6), p, 0.7, -0.25);
  EXPECT_NEAR(a.gamma_plus_hat + b.gamma_plus_hat, 1.0, 3 * std::hypot(a.std_err, b.std_err));
}

TEST(SpecKernelMC, Deterministic) {
  const ModelParams p = P(1.0, 0.2);
  MCConfig c = config(100, 20000, 77);
  const KernelEstimate a = mc_spec_kernel(c, p, 0.5, 0.3);
  const KernelEstimate b = mc_spec_kernel(c, p, 0.5, 0.3);
  c.jobs = 3;
  const KernelEstimate par = mc_spec_kernel(c, p, 0.5, 0.3);
  EXPECT_EQ(a.gamma_plus_hat, b.gamma_plus_hat);
  EXPECT_EQ(a.gamma_plus_hat, par.gamma_plus_hat);
  EXPECT_EQ(a.accepted, par.accepted);
  c.jobs = 1;
  c.seed = 78;
  EXPECT_NE(mc_spec_kernel(c, p, 0.5, 0.3).accepted, a.accepted);
}

TEST(SpecKernelMC, InsufficientAcceptance) {
  EXPECT_THROW(mc_spec_kernel(config(200, 50), P(1.0, 0.2), 0.5, 0.3), InsufficientAcceptance);
  EXPECT_THROW(mc_conditional_initial(config(200, 50), P(1.0, 0.2), 0.5, 0.3), InsufficientAcceptance);
}

TEST(MCConfig, Validation) {
  EXPECT_THROW(config(1, 10).validate(), DomainError);
  EXPECT_THROW(config(10, 0).validate(), DomainError);
  MCConfig c = config(100, 10);
  c.window = 0.01;
  EXPECT_THROW(c.validate(), DomainError);
  c.window = 0.05;
  c.jobs = 0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(ConditionalInitial, UnimodalInTheGibbsRegime) {
  const ModelParams p = P(1.0, 0.2);
  const MagnetizationHistogram hg = mc_conditional_initial(config(200, 100000), p, 0.5, 0.3);
  const auto modes = hg.modes(0.25, 4);
  ASSERT_EQ(modes.size(), 1u);
  EXPECT_NEAR(modes[0], global_minimizers(p, 0.5, 0.3).minima.front().m, 0.1);
  EXPECT_EQ(std::accumulate(hg.counts.begin(), hg.counts.end(), 0L), hg.accepted);
}

TEST(ConditionalInitial, BimodalAfterTheCriticalTime) {
  const ModelParams p = P(2.5, 0);
  ASSERT_GT(1.0, psi_c(2.5));
  const MagnetizationHistogram hg = mc_conditional_initial(config(300, 100000), p, 1.0, 0.0);
  const auto modes = hg.modes(0.25, 4);
  ASSERT_EQ(modes.size(), 2u);
  const double m_hat = std::abs(global_minimizers(p, 1.0, 0.0).minima.front().m);
  EXPECT_NEAR(modes[0], -m_hat, 0.1);
  EXPECT_NEAR(modes[1], m_hat, 0.1);
}

TEST(ConditionalInitial, ShortTimeModeAtAlpha) {
  const MagnetizationHistogram hg = mc_conditional_initial(config(200, 100000), P(0.5, 0.2), 0.01, 0.35);
  const auto modes = hg.modes(0.25, 4);
  ASSERT_EQ(modes.size(), 1u);
  EXPECT_NEAR(modes[0], 0.35, 0.1);
}
