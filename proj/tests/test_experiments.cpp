// Copyright 2026 The trotterlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <atomic>
#include <random>

#include "oracles.hpp"
#include "trotterlab/experiments.hpp"

namespace trotterlab {
namespace {

std::vector<FitPoint> power_law(double exponent, std::initializer_list<double> xs) {
  std::vector<FitPoint> pts;
  for (double x : xs) pts.push_back({x, std::pow(x, exponent), 0.0});
  return pts;
}

TEST(Fit, ExactPowerLaws) {
  const auto sq = power_law(2.0, {1, 2, 4, 8});
  const FitReport r = fit_loglog_slope(sq);
  EXPECT_NEAR(r.slope, 2.0, 1e-12);
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
  EXPECT_EQ(r.points_used, 4);
  EXPECT_NEAR(r.max_min_ratio, 64.0, 1e-9);
  EXPECT_TRUE(r.valid);
  const FitReport flat = fit_loglog_slope(power_law(0.0, {1, 2, 4}));
  EXPECT_NEAR(flat.slope, 0.0, 1e-12);
  EXPECT_EQ(flat.r_squared, 1.0);
}

TEST(Fit, NoisyCubic) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<FitPoint> pts;
  for (int i = 0; i < 12; ++i) {
    const double x = std::pow(2.0, -i);
    pts.push_back({x, x * x * x * (1.0 + noise(rng)), 0.0});
  }
  const FitReport r = fit_loglog_slope(pts);
  EXPECT_GT(r.slope, 2.9);
  EXPECT_LT(r.slope, 3.1);
  EXPECT_GT(r.r_squared, 0.999);
}

TEST(Fit, WindowAndFloor) {
  auto pts = power_law(1.0, {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0});
  const FitReport w = fit_loglog_slope(pts, {1e-3, 1.0});
  EXPECT_EQ(w.points_used, 4);
  EXPECT_EQ(w.points_excluded, 0);
  const FitReport f = fit_loglog_slope(pts, {}, 5e-3);
  EXPECT_EQ(f.points_used, 4);
  EXPECT_EQ(f.points_excluded, 2);
  pts[4].floor = 2.0;
  EXPECT_EQ(fit_loglog_slope(pts).points_excluded, 1);
  EXPECT_THROW(fit_loglog_slope(pts, {}, 0.5), TooFewPoints);
  EXPECT_THROW(fit_loglog_slope(power_law(1.0, {1, 2})), TooFewPoints);
}

TEST(Setup, NamedChoices) {
  for (auto k : {KineticScheme::FiniteDifference, KineticScheme::PseudoSpectral,
                 KineticScheme::ModifiedPseudoSpectral}) {
    EXPECT_EQ(parse_kinetic(to_string(k)), k);
  }
  for (auto m : {SweepMode::Local, SweepMode::Global}) EXPECT_EQ(parse_mode(to_string(m)), m);
  EXPECT_THROW(parse_kinetic("fft"), InvalidArgument);
  EXPECT_THROW(potential_by_id("quartic"), InvalidArgument);
  const GridSpec g = make_grid({}, 1.0 / 32);
  EXPECT_THROW(observable_by_id("x", g), InvalidArgument);
  EXPECT_EQ(g.N, 32);
  EXPECT_EQ(steps_for(1.0, 1.0 / 64), 64);
  EXPECT_THROW(steps_for(1.0, 0.3), InvalidArgument);
  EXPECT_EQ(default_s_values().size(), 8u);
  EXPECT_EQ(default_h_values().back(), 1.0 / 1024);
}

TEST(ParallelFor, CoversEveryIndexOnceAndRethrows) {
  std::vector<std::atomic<int>> hits(50);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 4) throw InvalidArgument("boom");
                            }),
               InvalidArgument);
}

TEST(SweepTimestep, LocalSlopesAndDeterminism) {
  TimestepSweepConfig cfg;
  cfg.h = 1.0 / 32;
  cfg.observables = {"cos"};
  const SweepTable one = sweep_timestep(cfg);
  cfg.threads = 3;
  const SweepTable three = sweep_timestep(cfg);
  ASSERT_EQ(one.rows.size(), three.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    EXPECT_EQ(one.rows[i].value, three.rows[i].value);
    EXPECT_EQ(one.rows[i].metric, three.rows[i].metric);
  }
  const FitReport* lie = one.fit("lie1/cos/observable_error");
  const FitReport* strang = one.fit("strang2/cos/observable_error");
  ASSERT_NE(lie, nullptr);
  ASSERT_NE(strang, nullptr);
  EXPECT_NEAR(lie->slope, 2.0, 0.2);
  EXPECT_NEAR(strang->slope, 3.0, 0.2);
}

TEST(SweepH, RowsCarryGridSize) {
  HSweepConfig cfg;
  cfg.h_values = {1.0 / 8, 1.0 / 16, 1.0 / 32};
  cfg.observables = {"cos"};
  cfg.schemes = {SplittingScheme::Lie1};
  const SweepTable t = sweep_h(cfg);
  for (const auto& row : t.rows) {
    EXPECT_EQ(row.N, std::lround(1.0 / row.h));
    EXPECT_GE(row.value, 0.0);
  }
  const FitReport* u = t.fit("lie1/unitary_error");
  ASSERT_NE(u, nullptr);
  EXPECT_LT(u->slope, -0.5);
}

TEST(CommutatorScan, InverseHScaling) {
  CommutatorScanConfig cfg;
  cfg.h_values = {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
  const SweepTable t = commutator_scan(cfg);
  int fitted = 0;
  for (const auto& fit : t.fits) {
    if (fit.series.find("[A_h,B_h]") != std::string::npos || fit.series == "A_h") {
      EXPECT_GT(fit.slope, -1.3) << fit.series;
      EXPECT_LT(fit.slope, -0.7) << fit.series;
      ++fitted;
    }
  }
  EXPECT_GE(fitted, 3);
  for (const auto& row : t.rows) {
    if (row.metric == "[B_h,B_h]") {
      EXPECT_EQ(row.value, 0.0);
    }
  }
  EXPECT_EQ(t.fit("[B_h,B_h]"), nullptr);
}

TEST(CommutatorScan, NormsScaleInverselyWithPlanckConstant) {
  // Dividing by h is the only h dependence apart from the grid, so h * ||B/h|| is fixed.
  CommutatorScanConfig cfg;
  cfg.h_values = {1.0 / 8, 1.0 / 16, 1.0 / 32};
  const SweepTable t = commutator_scan(cfg);
  for (const auto& row : t.rows) {
    if (row.metric == "B_h") {
      EXPECT_NEAR(row.value * row.h, 1.0, 1e-12);
    }
  }
}

TEST(CalculusSuite, RatesAndVanishingGap) {
  CalculusConfig cfg;
  cfg.N_values = {16, 32, 64};
  const SweepTable t = calculus_suite(cfg);
  const FitReport* comp = t.fit("weyl/composition");
  const FitReport* comm = t.fit("weyl/commutator");
  ASSERT_NE(comp, nullptr);
  ASSERT_NE(comm, nullptr);
  EXPECT_GT(comp->slope, 1.7);
  EXPECT_GT(comm->slope, 2.7);
  // The norm may undershoot the sup, but never exceeds it by more than O(h).
  std::vector<double> gaps;
  for (const auto& row : t.rows) {
    if (row.metric == "cv_gap") gaps.push_back(std::abs(row.value));
    if (row.metric == "cv_gap_over_h") {
      EXPECT_LT(row.value, 1.0);
    }
  }
  ASSERT_EQ(gaps.size(), 3u);
  EXPECT_GT(gaps[0], gaps[1]);
  EXPECT_GT(gaps[1], gaps[2]);
}

TEST(Query, CountsAreMinimal) {
  const ProblemSetup setup;
  const double h = 1.0 / 32;
  const HamiltonianPair pair = make_pair(setup, make_grid(setup, h));
  const ComplexMatrix O = observable_by_id("cos", pair.grid);
  const double e1 = observable_error(O, pair, {SplittingScheme::Strang2, 1.0, 1, h});
  EXPECT_EQ(query_count(e1 * 1.0001, SplittingScheme::Strang2, h, setup).steps, 1);

  const QueryResult r = query_count(1e-3, SplittingScheme::Lie1, h, setup);
  EXPECT_LE(r.error, 1e-3);
  EXPECT_GT(observable_error(O, pair, {SplittingScheme::Lie1, 1.0 / (r.steps - 1), r.steps - 1, h}), 1e-3);
  EXPECT_THROW(query_count(1e-6, SplittingScheme::Lie1, h, setup, "cos", 1.0, 4), Unreachable);
}

}  // namespace
}  // namespace trotterlab
