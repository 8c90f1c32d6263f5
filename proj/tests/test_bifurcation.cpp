#include <gtest/gtest.h>

#include <cmath>

#include "cwgng/cwgng.hpp"
#include "support/frozen_constants.hpp"
#include "support/oracles.hpp"

using namespace cwgng;

namespace {

ModelParams P(double J, double h) { return ModelParams::make(J, h); }

double residual(double m, const ModelParams& p, double t, double alpha) { return k_fn(m, p) - l_fn(m, t, alpha); }

}  // namespace

TEST(Scenario, Examples) {
  EXPECT_EQ(scenario(P(1.15, 0), 0.2).scenario, ScenarioKind::none);

  const BifurcationReport sym = scenario(P(2.5, 0), 0.0);
  EXPECT_EQ(sym.scenario, ScenarioKind::single);
  ASSERT_EQ(sym.jumps.size(), 1u);
  EXPECT_NEAR(sym.jumps[0].t, psi_c(2.5), 1e-9);
  EXPECT_NEAR(sym.jumps[0].m_before, 0.0, 1e-9);
  EXPECT_NEAR(std::abs(sym.jumps[0].m_after), frozen::kCone[2].m_star, 1e-8);

  const ModelParams p = P(2.9, 0.15);
  const TangencyBounds b = tangency_bounds(p);
  const Trifurcation tri = trifurcation_magnetization(p);
  for (double w : {0.1, 0.5, 0.9}) {
    const double alpha = *b.L_B + w * (tri.M_T - *b.L_B);
    const BifurcationReport r = scenario(p, alpha);
    EXPECT_EQ(r.scenario, ScenarioKind::double_bifurcation) << alpha;
    ASSERT_TRUE(r.s_B && r.t_B);
    EXPECT_LT(*r.s_B, *r.t_B);
    EXPECT_EQ(r.jumps.size(), 2u);
  }
}

TEST(Scenario, JumpsAreCostEqualitiesOfStationaryPoints) {
  const ModelParams p = P(2.9, 0.15);
  for (double alpha : {-0.8, -0.25, -0.15, 0.0, 0.2}) {
    for (const Jump& j : scenario(p, alpha).jumps) {
      const ConditionedCost c(p, j.t, alpha);
      EXPECT_NEAR(c(j.m_before), c(j.m_after), 1e-9) << alpha << " t=" << j.t;
      EXPECT_NEAR(oracle::cost(j.m_before, 2.9, 0.15, j.t, alpha), oracle::cost(j.m_after, 2.9, 0.15, j.t, alpha), 1e-9);
      EXPECT_LE(std::abs(residual(j.m_before, p, j.t, alpha)), 1e-11);
      EXPECT_LE(std::abs(residual(j.m_after, p, j.t, alpha)), 1e-11);
    }
  }
}

TEST(Scenario, BifurcationTimesAreMonotoneInAlpha) {
  const ModelParams p = P(2.9, 0.15);
  const StationarySolver solver(p);
  double prev_t = INFINITY, prev_s = -INFINITY;
  for (int i = 0; i < 20; ++i) {
    const double alpha = -0.98 + i * (0.28 + 0.98) / 19;
    const BifurcationReport r = scenario(solver, alpha);
    ASSERT_TRUE(r.t_B) << alpha;
    EXPECT_LT(*r.t_B, prev_t) << alpha;
    prev_t = *r.t_B;
    if (r.s_B) {
      EXPECT_GT(*r.s_B, prev_s) << alpha;
      prev_s = *r.s_B;
    }
  }
}

TEST(Scenario, AgreesWithBranchTrackOnRandomDraws) {
  oracle::Draws d(31);
  std::vector<double> grid;
  for (int i = 1; i <= 1500; ++i) grid.push_back(0.002 * i);
  for (int i = 0; i < 30; ++i) {
    const ModelParams p = P(d.uniform(0.3, 3.0), d.uniform(-0.4, 0.4));
    const double alpha = d.uniform(-0.95, 0.95);
    const StationarySolver solver(p);
    ScenarioOptions opt;
    opt.t_end = 3.0;
    const BifurcationReport r = scenario(solver, alpha, opt);
    const BranchTrack bt = branch_track(solver, alpha, grid);
    ASSERT_EQ(r.jumps.size(), bt.jumps.size()) << p.J << " " << p.h << " " << alpha;
    for (std::size_t k = 0; k < r.jumps.size(); ++k) EXPECT_NEAR(r.jumps[k].t, bt.jumps[k].t, 1e-8);
  }
}

TEST(Trifurcation, ThreeEqualMinimaBelowZero) {
  const ModelParams p = P(2.9, 0.15);
  const Trifurcation tri = trifurcation_magnetization(p);
  EXPECT_LT(tri.M_T, 0.0);
  ASSERT_EQ(tri.minimizers.size(), 3u);
  const double c0 = oracle::cost(tri.minimizers[0], 2.9, 0.15, tri.t_T, tri.M_T);
  for (double m : tri.minimizers) {
    EXPECT_NEAR(oracle::cost(m, 2.9, 0.15, tri.t_T, tri.M_T), c0, 1e-8) << m;
    EXPECT_LE(std::abs(residual(m, p, tri.t_T, tri.M_T)), 1e-10);
  }
  // The grid oracle sees no lower minimum elsewhere.
  EXPECT_GE(oracle::grid_global_min(2.9, 0.15, tri.t_T, tri.M_T, 20000).cost, c0 - 1e-9);
  EXPECT_EQ(global_minimizers(p, tri.t_T, tri.M_T).degeneracy(), 3u);
}

TEST(Trifurcation, AbsentAtLargeField) {
  EXPECT_THROW(trifurcation_magnetization(P(2.9, 1.6)), NotFound);
}

TEST(HStar, LiesBetweenTheReferenceFields) {
  const double hs = h_star(2.9);
  EXPECT_GT(hs, 0.15);
  EXPECT_LT(hs, 1.6);
  for (double J : {2.0, 2.5, 2.9}) EXPECT_GT(h_star(J), 0.0) << J;
}

TEST(HStar, WindowClosesThere) {
  const double hs = h_star(2.9);
  EXPECT_NO_THROW(trifurcation_magnetization(P(2.9, hs - 1e-3)));
  EXPECT_THROW(trifurcation_magnetization(P(2.9, hs + 1e-3)), NotFound);
  // The margin predicate is continuous and changes sign at h_*.
  double prev = *double_window_margin(P(2.9, hs - 0.02));
  for (int i = 1; i <= 40; ++i) {
    const double h = hs - 0.02 + i * 0.001;
    const auto m = double_window_margin(P(2.9, h));
    ASSERT_TRUE(m) << h;
    EXPECT_LT(std::abs(*m - prev), 0.02) << h;
    prev = *m;
  }
  EXPECT_GT(*double_window_margin(P(2.9, hs - 1e-4)), 0.0);
  EXPECT_LT(*double_window_margin(P(2.9, hs + 1e-4)), 0.0);
}
