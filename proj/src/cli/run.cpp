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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <tuple>

#include "trotterlab/cli.hpp"

namespace trotterlab::cli {

namespace {

constexpr const char* kSweepHeader = "s,h,N,scheme,observable,metric,value";

ProblemSetup setup_of(const RunConfig& c) {
  return {c.a_dom, c.b_dom, c.potential, c.kinetic, c.modifier_cutoff};
}

std::string join(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  out += '\n';
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepHeader) + '\n';
  for (const auto& r : rows) {
    out += join({format_number(r.s), format_number(r.h), std::to_string(r.N), r.scheme, r.observable, r.metric,
                 format_number(r.value)});
  }
  return out;
}

std::string brief(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

std::string range_text(double lo, double hi) { return "[" + brief(lo) + ", " + brief(hi) + "]"; }

void check_slope(RunResult& result, const FitReport& fit, double lo, double hi) {
  const bool ok = fit.valid && fit.slope >= lo && fit.slope <= hi;
  result.checks.push_back({"slope " + fit.series, ok,
                           (fit.valid ? "slope " + format_number(fit.slope) : std::string("no valid fit")) +
                               " expected in " + range_text(lo, hi)});
}

void check_min_slope(RunResult& result, const FitReport& fit, double lo) {
  const bool ok = fit.valid && fit.slope >= lo;
  result.checks.push_back({"slope " + fit.series, ok,
                           (fit.valid ? "slope " + format_number(fit.slope) : std::string("no valid fit")) +
                               " expected >= " + brief(lo)});
}

bool has_metric(const FitReport& fit, std::string_view metric) {
  return fit.series.size() >= metric.size() && fit.series.ends_with(metric);
}

bool is_scheme(const FitReport& fit, SplittingScheme scheme) {
  return fit.series.starts_with(std::string(to_string(scheme)) + "/");
}

// expectation_error <= observable_error on every row where both exist.
void check_domination(RunResult& result, const std::vector<SweepRow>& rows, const std::string& label) {
  using Key = std::tuple<double, double, std::string, std::string>;
  std::map<Key, double> op;
  for (const auto& r : rows) {
    if (r.metric == "observable_error") op[{r.s, r.h, r.scheme, r.observable}] = r.value;
  }
  int compared = 0;
  int violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    if (r.metric != "expectation_error") continue;
    const auto it = op.find({r.s, r.h, r.scheme, r.observable});
    if (it == op.end()) continue;
    ++compared;
    worst = std::max(worst, r.value - it->second);
    if (r.value > it->second + 1e-12) ++violations;
  }
  if (compared == 0) return;
  result.checks.push_back({"expectation domination " + label, violations == 0,
                           std::to_string(violations) + " of " + std::to_string(compared) +
                               " rows violate; max(expectation - observable) = " + format_number(worst)});
}

void s_sweep_checks(RunResult& result, const SweepTable& table, bool global) {
  for (const auto& fit : table.fits) {
    if (!has_metric(fit, "/observable_error")) continue;
    if (is_scheme(fit, SplittingScheme::Lie1)) {
      global ? check_slope(result, fit, 0.8, 1.2) : check_slope(result, fit, 1.8, 2.2);
    } else {
      global ? check_slope(result, fit, 1.8, 2.2) : check_slope(result, fit, 2.7, 3.3);
    }
  }
  check_domination(result, table.rows, global ? "(global s-sweep)" : "(local s-sweep)");
}

void h_sweep_checks(RunResult& result, const SweepTable& table) {
  for (const auto& fit : table.fits) {
    if (has_metric(fit, "/unitary_error")) {
      check_slope(result, fit, -1.3, -0.7);
    } else if (has_metric(fit, "/observable_error")) {
      check_slope(result, fit, -0.25, 0.25);
      const bool ok = fit.valid && fit.max_min_ratio <= 3.0;
      result.checks.push_back({"flatness " + fit.series, ok,
                               "max/min " + format_number(fit.max_min_ratio) + " expected <= 3"});
    }
  }
  check_domination(result, table.rows, "(h-sweep)");
}

void append_notes(RunResult& result, const SweepTable& table) {
  for (const auto& [k, v] : table.metadata) result.notes.push_back(k + "=" + v);
}

RunResult run_sweep_s(const RunConfig& c, int threads) {
  TimestepSweepConfig cfg;
  cfg.setup = setup_of(c);
  cfg.mode = c.mode;
  cfg.h = c.h;
  cfg.s_values = c.s_values;
  cfg.t = c.t;
  cfg.schemes = c.schemes;
  cfg.observables = c.observables;
  cfg.expectation = c.expectation;
  cfg.x0 = c.wavepacket.x0;
  cfg.p0 = c.wavepacket.p0;
  cfg.threads = threads;
  const SweepTable table = sweep_timestep(cfg);
  RunResult result{sweep_csv(table.rows), table.fits, {}, {}};
  s_sweep_checks(result, table, c.mode == SweepMode::Global);
  append_notes(result, table);
  return result;
}

HSweepConfig h_sweep_config(const RunConfig& c, SweepMode mode, int threads) {
  HSweepConfig cfg;
  cfg.setup = setup_of(c);
  cfg.mode = mode;
  cfg.h_values = c.h_values;
  cfg.s = c.s;
  cfg.t = c.t;
  cfg.schemes = c.schemes;
  cfg.observables = c.observables;
  cfg.expectation = c.expectation;
  cfg.x0 = c.wavepacket.x0;
  cfg.p0 = c.wavepacket.p0;
  cfg.threads = threads;
  return cfg;
}

RunResult run_sweep_h(const RunConfig& c, int threads) {
  const SweepTable table = sweep_h(h_sweep_config(c, c.mode, threads));
  RunResult result{sweep_csv(table.rows), table.fits, {}, {}};
  h_sweep_checks(result, table);
  append_notes(result, table);
  return result;
}

RunResult run_long_time(const RunConfig& c, int threads) {
  RunConfig s_part = c;
  s_part.mode = SweepMode::Global;
  RunResult result = run_sweep_s(s_part, threads);
  const SweepTable h_table = sweep_h(h_sweep_config(c, SweepMode::Global, threads));
  const std::string h_csv = sweep_csv(h_table.rows);
  result.csv += h_csv.substr(h_csv.find('\n') + 1);
  for (auto fit : h_table.fits) {
    fit.series = "h-sweep:" + fit.series;
    result.fits.push_back(fit);
  }
  RunResult h_checks;
  h_sweep_checks(h_checks, h_table);
  for (auto& check : h_checks.checks) {
    check.name = "h-sweep: " + check.name;
    result.checks.push_back(check);
  }
  append_notes(result, h_table);
  return result;
}

RunResult run_commutator_scan(const RunConfig& c, int threads) {
  const SweepTable table = commutator_scan({setup_of(c), c.h_values, threads});
  RunResult result;
  result.csv = "h,N,quantity,value\n";
  for (const auto& r : table.rows) {
    result.csv += join({format_number(r.h), std::to_string(r.N), r.metric, format_number(r.value)});
    if (r.metric == "[B_h,B_h]") {
      result.checks.push_back({"zero commutator at h=" + format_number(r.h), r.value == 0.0,
                               "||[B_h,B_h]|| = " + format_number(r.value)});
    }
  }
  result.fits = table.fits;
  for (const auto& fit : table.fits) check_slope(result, fit, -1.3, -0.7);
  append_notes(result, table);
  return result;
}

RunResult run_calculus(const RunConfig& c, int threads) {
  CalculusConfig cfg;
  cfg.N_values = c.N_values;
  cfg.quantizer = c.quantizer == "left" ? Quantizer(quantize_left) : Quantizer(quantize);
  cfg.quantizer_name = c.quantizer;
  cfg.egorov_t = c.egorov_t;
  cfg.threads = threads;
  const SweepTable table = calculus_suite(cfg);
  RunResult result;
  result.csv = "N,h,quantizer,quantity,value\n";
  std::vector<std::pair<double, double>> ratio;  // (log2 N, cv_gap / h)
  for (const auto& r : table.rows) {
    result.csv += join({std::to_string(r.N), format_number(r.h), r.scheme, r.metric, format_number(r.value)});
    if (r.metric == "cv_gap_over_h") ratio.emplace_back(std::log2(static_cast<double>(r.N)), r.value);
  }
  result.fits = table.fits;
  for (const auto& fit : table.fits) {
    if (fit.series.ends_with("commutator")) {
      check_min_slope(result, fit, 2.7);
    } else {
      check_min_slope(result, fit, 1.8);
    }
  }
  // cv_gap / h must stay finite and must not trend upward in N.
  bool finite = !ratio.empty();
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : ratio) {
    finite = finite && std::isfinite(y);
    mx += x;
    my += y;
  }
  double trend = 0.0;
  if (ratio.size() >= 2 && finite) {
    mx /= static_cast<double>(ratio.size());
    my /= static_cast<double>(ratio.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : ratio) {
      sxx += (x - mx) * (x - mx);
      sxy += (x - mx) * (y - my);
    }
    trend = sxy / sxx;
  }
  result.checks.push_back({"cv_gap/h bounded and nonincreasing", finite && trend <= 0.0,
                           "trend per doubling of N " + format_number(trend)});
  append_notes(result, table);
  return result;
}

RunResult run_query(const RunConfig& c, int threads) {
  QueryConfig cfg;
  cfg.setup = setup_of(c);
  cfg.epsilons = c.epsilons;
  cfg.h_values = c.h_values;
  cfg.schemes = c.schemes;
  cfg.observable = c.observables.front();
  cfg.t = c.t;
  cfg.threads = threads;
  std::vector<QueryResult> counts;
  const SweepTable table = query_table(cfg, &counts);
  RunResult result;
  result.csv = "epsilon,h,N,scheme,observable,steps,error\n";
  for (const auto& q : counts) {
    result.csv += join({format_number(q.epsilon), format_number(q.h), std::to_string(q.N),
                        std::string(to_string(q.scheme)), q.observable, std::to_string(q.steps),
                        format_number(q.error)});
  }
  result.fits = table.fits;

  const auto steps = [&](SplittingScheme scheme, double eps, double h) -> long {
    for (const auto& q : counts) {
      if (q.scheme == scheme && q.epsilon == eps && q.h == h) return q.steps;
    }
    return -1;
  };
  for (const SplittingScheme scheme : c.schemes) {
    for (const double eps : c.epsilons) {
      long lo = std::numeric_limits<long>::max();
      long hi = 0;
      for (const double h : c.h_values) {
        lo = std::min(lo, steps(scheme, eps, h));
        hi = std::max(hi, steps(scheme, eps, h));
      }
      result.checks.push_back({"h-independence " + std::string(to_string(scheme)) + " eps=" + format_number(eps),
                               hi - lo <= 1,
                               "counts span [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"});
      if (scheme != SplittingScheme::Strang2) continue;
      const double quarter = eps / 4.0;
      if (std::find(c.epsilons.begin(), c.epsilons.end(), quarter) == c.epsilons.end()) continue;
      for (const double h : c.h_values) {
        const double r = static_cast<double>(steps(scheme, quarter, h)) / static_cast<double>(steps(scheme, eps, h));
        result.checks.push_back({"eps/4 ratio strang2 eps=" + format_number(eps) + " h=" + format_number(h),
                                 r >= 1.5 && r <= 2.7, "ratio " + format_number(r) + " expected in [1.5, 2.7]"});
      }
    }
  }
  append_notes(result, table);
  return result;
}

std::string describe_fit(const FitReport& f) {
  if (!f.valid) {
    return f.series + ": no fit (" + std::to_string(f.points_excluded) + " points below the round-off floor)";
  }
  return f.series + ": slope=" + format_number(f.slope) + " intercept=" + format_number(f.intercept) +
         " r2=" + format_number(f.r_squared) + " used=" + std::to_string(f.points_used) +
         " excluded=" + std::to_string(f.points_excluded) + " window=" + range_text(f.window.lo, f.window.hi) +
         " max/min=" + format_number(f.max_min_ratio);
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

bool RunResult::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

RunResult execute(const RunConfig& config, int threads) {
  switch (config.command) {
    case Command::SweepS:
      return run_sweep_s(config, threads);
    case Command::SweepH:
      return run_sweep_h(config, threads);
    case Command::LongTime:
      return run_long_time(config, threads);
    case Command::CommutatorScan:
      return run_commutator_scan(config, threads);
    case Command::CalculusCheck:
      return run_calculus(config, threads);
    case Command::QueryCount:
      return run_query(config, threads);
  }
  throw InvalidArgument("unhandled command");
}

int run(const RunConfig& config, const RunOptions& options, std::ostream& log) {
  const int threads = options.threads.value_or(config.threads);
  if (threads < 1) throw ValidationError("threads", "must be positive");
  const std::string path = options.output.value_or(config.output);
  const RunResult result = execute(config, threads);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file '" + path + "' for writing");
  out << result.csv;
  out.close();
  if (!out) throw Error("failed while writing output file '" + path + "'");

  log << "command: " << to_string(config.command) << '\n';
  for (const auto& note : result.notes) log << "  " << note << '\n';
  log << "wrote " << path << '\n';
  for (const auto& fit : result.fits) log << "fit " << describe_fit(fit) << '\n';
  if (!options.assert_criteria) return 0;
  for (const auto& check : result.checks) {
    log << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
  }
  return result.all_passed() ? 0 : 2;
}

}  // namespace trotterlab::cli
