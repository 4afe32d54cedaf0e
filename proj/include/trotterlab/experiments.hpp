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

// Parameter sweeps, log-log slope fits and the calculus property suite.
// Every entry point is deterministic for a fixed configuration, whatever the
// number of worker threads.

#ifndef TROTTERLAB_EXPERIMENTS_HPP
#define TROTTERLAB_EXPERIMENTS_HPP

#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trotterlab/evolve.hpp"
#include "trotterlab/hamiltonian.hpp"
#include "trotterlab/quantize.hpp"

namespace trotterlab {

// ---------------------------------------------------------------------------
// Fitting

struct FitPoint {
  double x = 0.0;
  double y = 0.0;
  /// Per-point round-off floor; y <= floor is excluded.
  double floor = 0.0;
};

struct FitWindow {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct FitReport {
  std::string series;
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double r_squared = std::numeric_limits<double>::quiet_NaN();
  int points_used = 0;
  int points_excluded = 0;  // inside the window but at or below the floor
  FitWindow window;
  /// max(y) / min(y) over the points used.
  double max_min_ratio = std::numeric_limits<double>::quiet_NaN();
  bool valid = false;
};

/// Round-off floor for errors on an N-point grid.
inline double round_off_floor(long N) { return 1e-11 * static_cast<double>(N); }

/// Ordinary least squares of log y against log x. Throws TooFewPoints when
/// fewer than 3 points survive the window and floor.
FitReport fit_loglog_slope(std::span<const FitPoint> points, FitWindow window = {}, double floor = 0.0);

// ---------------------------------------------------------------------------
// Tables

struct SweepRow {
  double s = std::numeric_limits<double>::quiet_NaN();
  double h = std::numeric_limits<double>::quiet_NaN();
  long N = 0;
  std::string scheme;
  std::string observable;
  std::string metric;
  double value = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::map<std::string, std::string> metadata;
  std::vector<FitReport> fits;

  const FitReport* fit(const std::string& series) const;
};

// ---------------------------------------------------------------------------
// Problem setup

struct ProblemSetup {
  double a_dom = -std::numbers::pi;
  double b_dom = std::numbers::pi;
  /// "cos" (V = cos x), "cos2" (V = cos 2x) or "zero".
  std::string potential = "cos";
  KineticScheme kinetic = KineticScheme::FiniteDifference;
  double modifier_c = 0.1;
};

Potential potential_by_id(const std::string& id);
/// "cos" for diag(cos x_j), "p" for the spectral momentum.
ComplexMatrix observable_by_id(const std::string& id, const GridSpec& grid);
std::string_view to_string(KineticScheme kinetic);
KineticScheme parse_kinetic(std::string_view name);

GridSpec make_grid(const ProblemSetup& setup, double h);
HamiltonianPair make_pair(const ProblemSetup& setup, const GridSpec& grid);

enum class SweepMode { Local, Global };

std::string_view to_string(SweepMode mode);
SweepMode parse_mode(std::string_view name);

/// Steps needed to reach t with step s; s must divide t.
long steps_for(double t, double s);

struct TimestepSweepConfig {
  ProblemSetup setup;
  SweepMode mode = SweepMode::Local;
  double h = 1.0 / 64.0;
  std::vector<double> s_values;  // empty means 2^-4 .. 2^-11
  double t = 1.0;                // global mode only
  std::vector<SplittingScheme> schemes{SplittingScheme::Lie1, SplittingScheme::Strang2};
  std::vector<std::string> observables{"cos", "p"};
  bool expectation = true;
  double x0 = 0.0;
  double p0 = 0.5;
  /// Fit window over s; defaults to [2^-11, 2^-6] in local mode and all points in global mode.
  std::optional<FitWindow> window;
  int threads = 1;
};

struct HSweepConfig {
  ProblemSetup setup;
  SweepMode mode = SweepMode::Local;
  std::vector<double> h_values;  // empty means 2^-3 .. 2^-10
  /// Step size; NaN selects 0.1 (local) or 0.02 (global).
  double s = std::numeric_limits<double>::quiet_NaN();
  double t = 1.0;
  std::vector<SplittingScheme> schemes{SplittingScheme::Lie1, SplittingScheme::Strang2};
  std::vector<std::string> observables{"cos", "p"};
  bool unitary = true;
  bool expectation = true;
  double x0 = 0.0;
  double p0 = 0.5;
  int threads = 1;
};

std::vector<double> default_s_values();
std::vector<double> default_h_values();

/// Rows: one per (s, scheme, observable, metric) with metric in
/// {observable_error, expectation_error}; fits per series over log s.
SweepTable sweep_timestep(const TimestepSweepConfig& config);

/// Rows: unitary_error per (h, scheme) and observable/expectation errors per
/// (h, scheme, observable); fits per series over log h.
SweepTable sweep_h(const HSweepConfig& config);

struct CommutatorScanConfig {
  ProblemSetup setup;
  std::vector<double> h_values;  // empty means 2^-3 .. 2^-8
  int threads = 1;
};

/// Norms of A/h, B/h, [A/h, B/h], [A/h, [A/h, B/h]], [B/h, [A/h, B/h]] and the
/// trivially zero [B/h, B/h].
SweepTable commutator_scan(const CommutatorScanConfig& config);

struct CalculusConfig {
  std::vector<int> N_values{16, 32, 64, 128, 256};
  Quantizer quantizer = quantize;
  std::string quantizer_name = "weyl";
  double egorov_t = 0.5;
  int threads = 1;
};

/// For a = cos 2 pi x, b = cos 2 pi xi: composition, commutator and Egorov
/// remainders, cv_gap and cv_gap / h per N; fits over log h.
SweepTable calculus_suite(const CalculusConfig& config);

struct QueryResult {
  double epsilon = 0.0;
  double h = 0.0;
  long N = 0;
  SplittingScheme scheme = SplittingScheme::Strang2;
  std::string observable;
  long steps = 0;
  double error = 0.0;  // observable error at the reported step count
  int evaluations = 0;
};

inline constexpr long kQueryCap = 1L << 15;

struct QueryConfig {
  ProblemSetup setup;
  std::vector<double> epsilons{3e-2, 7.5e-3, 1e-2, 2.5e-3};
  std::vector<double> h_values{1.0 / 64.0, 1.0 / 256.0};
  std::vector<SplittingScheme> schemes{SplittingScheme::Strang2};
  std::string observable = "cos";
  double t = 1.0;
  long cap = kQueryCap;
  int threads = 1;
};

/// Smallest n with observable_error(n steps of t / n) <= epsilon, found by
/// doubling and then bisection. Throws Unreachable past the cap.
QueryResult query_count(double epsilon, SplittingScheme scheme, double h, const ProblemSetup& setup = {},
                        const std::string& observable = "cos", double t = 1.0, long cap = kQueryCap);

/// All (epsilon, h, scheme) counts, plus fits of log n against log epsilon.
SweepTable query_table(const QueryConfig& config, std::vector<QueryResult>* results = nullptr);

/// Runs task(i) for i in [0, count) on up to `threads` workers. Callers write
/// into slot i, so merged output is independent of scheduling.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& task);

}  // namespace trotterlab

#endif  // TROTTERLAB_EXPERIMENTS_HPP
