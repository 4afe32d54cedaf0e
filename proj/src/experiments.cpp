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

#include "trotterlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace trotterlab {

namespace {

constexpr const char* kObservableError = "observable_error";
constexpr const char* kExpectationError = "expectation_error";
constexpr const char* kUnitaryError = "unitary_error";

std::string series_name(std::string_view scheme, std::string_view observable, std::string_view metric) {
  std::string out;
  for (std::string_view part : {scheme, observable, metric}) {
    if (part.empty()) continue;
    if (!out.empty()) out += '/';
    out += part;
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<double> powers_of_two(int from, int to) {
  std::vector<double> out;
  for (int e = from; e >= to; --e) out.push_back(std::ldexp(1.0, e));
  return out;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_nonempty(bool empty, const char* what) {
  if (empty) throw EmptyInput(std::string(what) + " must not be empty");
}

void add_setup_metadata(SweepTable& table, const ProblemSetup& setup) {
  table.metadata["grid_relation"] = "N=round((b-a)/(2*pi*h))";
  table.metadata["domain"] = "[" + format_double(setup.a_dom) + "," + format_double(setup.b_dom) + "]";
  table.metadata["potential"] = setup.potential;
  table.metadata["kinetic"] = std::string(to_string(setup.kinetic));
}

// Fits every series found in rows whose x-coordinate is given by key(row).
template <typename Key>
void fit_series(SweepTable& table, Key key, FitWindow window) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<FitPoint>> points;
  for (const auto& row : table.rows) {
    const std::string name = series_name(row.scheme, row.observable, row.metric);
    auto [it, inserted] = points.try_emplace(name);
    if (inserted) order.push_back(name);
    it->second.push_back({key(row), row.value, round_off_floor(row.N)});
  }
  for (const auto& name : order) {
    FitReport report;
    try {
      report = fit_loglog_slope(points[name], window);
    } catch (const TooFewPoints&) {
      report.window = window;
      for (const auto& p : points[name]) {
        if (window.contains(p.x) && !(p.y > p.floor)) ++report.points_excluded;
      }
    }
    report.series = name;
    table.fits.push_back(report);
  }
}

}  // namespace

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        // Report the lowest failing index so the error is schedule-independent.
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Potential potential_by_id(const std::string& id) {
  if (id == "cos") return [](double x) { return std::complex<double>(std::cos(x)); };
  if (id == "cos2") return [](double x) { return std::complex<double>(std::cos(2.0 * x)); };
  if (id == "zero") return [](double) { return std::complex<double>(0.0); };
  throw InvalidArgument("unknown potential '" + id + "'");
}

ComplexMatrix observable_by_id(const std::string& id, const GridSpec& grid) {
  if (id == "cos") return cosine_observable(grid);
  if (id == "p") return momentum_observable(grid);
  throw InvalidArgument("unknown observable '" + id + "'");
}

std::string_view to_string(KineticScheme kinetic) {
  switch (kinetic) {
    case KineticScheme::FiniteDifference:
      return "fd";
    case KineticScheme::PseudoSpectral:
      return "spectral";
    case KineticScheme::ModifiedPseudoSpectral:
      return "modified_spectral";
  }
  return "fd";
}

KineticScheme parse_kinetic(std::string_view name) {
  if (name == "fd") return KineticScheme::FiniteDifference;
  if (name == "spectral") return KineticScheme::PseudoSpectral;
  if (name == "modified_spectral") return KineticScheme::ModifiedPseudoSpectral;
  throw InvalidArgument("unknown kinetic scheme '" + std::string(name) + "'");
}

std::string_view to_string(SweepMode mode) { return mode == SweepMode::Local ? "local" : "global"; }

SweepMode parse_mode(std::string_view name) {
  if (name == "local") return SweepMode::Local;
  if (name == "global") return SweepMode::Global;
  throw InvalidArgument("unknown mode '" + std::string(name) + "'");
}

GridSpec make_grid(const ProblemSetup& setup, double h) {
  return GridSpec::from_planck(setup.a_dom, setup.b_dom, h);
}

HamiltonianPair make_pair(const ProblemSetup& setup, const GridSpec& grid) {
  return make_hamiltonian(grid, setup.kinetic, potential_by_id(setup.potential), setup.modifier_c);
}

long steps_for(double t, double s) {
  if (!(s > 0.0) || !(t > 0.0)) throw InvalidArgument("steps_for: t and s must be positive");
  const double ratio = t / s;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio) {
    throw InvalidArgument("step size " + format_double(s) + " does not divide t=" + format_double(t));
  }
  return n;
}

std::vector<double> default_s_values() { return powers_of_two(-4, -11); }

std::vector<double> default_h_values() { return powers_of_two(-3, -10); }

SweepTable sweep_timestep(const TimestepSweepConfig& config) {
  const std::vector<double> s_values =
      sorted_unique(config.s_values.empty() ? default_s_values() : config.s_values);
  require_nonempty(config.schemes.empty(), "schemes");
  require_nonempty(config.observables.empty(), "observables");
  const bool global = config.mode == SweepMode::Global;

  const GridSpec grid = make_grid(config.setup, config.h);
  const HamiltonianPair pair = make_pair(config.setup, grid);
  const ExactPropagator exact(pair.hamiltonian(), config.h);
  std::vector<ComplexMatrix> observables;
  for (const auto& id : config.observables) observables.push_back(observable_by_id(id, grid));
  const ComplexVector psi =
      config.expectation ? gaussian_wavepacket(grid, config.x0, config.p0, config.h) : ComplexVector();

  // In global mode every s shares the final time.
  std::vector<ComplexMatrix> exact_final;
  if (global) {
    for (const auto& o : observables) exact_final.push_back(exact.heisenberg(o, config.t));
  }

  const std::size_t per_s = config.schemes.size();
  const std::size_t tasks = s_values.size() * per_s;
  std::vector<std::vector<SweepRow>> slots(tasks);
  parallel_for(tasks, config.threads, [&](std::size_t i) {
    const double s = s_values[i / per_s];
    const SplittingScheme scheme = config.schemes[i % per_s];
    const EvolutionPlan plan{scheme, s, global ? steps_for(config.t, s) : 1, config.h};
    for (std::size_t o = 0; o < observables.size(); ++o) {
      const ComplexMatrix trotter = heisenberg_trotter(observables[o], pair, plan);
      const ComplexMatrix reference = global ? exact_final[o] : exact.heisenberg(observables[o], s);
      SweepRow row{s, config.h, grid.N, std::string(to_string(scheme)), config.observables[o], kObservableError,
                   spectral_norm(trotter - reference)};
      slots[i].push_back(row);
      if (config.expectation) {
        row.metric = kExpectationError;
        row.value = expectation_gap(trotter, reference, psi);
        slots[i].push_back(row);
      }
    }
  });

  SweepTable table;
  for (auto& slot : slots) {
    for (auto& row : slot) table.rows.push_back(std::move(row));
  }
  add_setup_metadata(table, config.setup);
  table.metadata["command"] = global ? "long-time" : "sweep-s";
  table.metadata["mode"] = std::string(to_string(config.mode));
  table.metadata["h"] = format_double(config.h);
  table.metadata["N"] = std::to_string(grid.N);
  if (global) table.metadata["t"] = format_double(config.t);

  const FitWindow window =
      config.window ? *config.window : (global ? FitWindow{} : FitWindow{std::ldexp(1.0, -11), std::ldexp(1.0, -6)});
  fit_series(table, [](const SweepRow& r) { return r.s; }, window);
  return table;
}

SweepTable sweep_h(const HSweepConfig& config) {
  const std::vector<double> h_values =
      sorted_unique(config.h_values.empty() ? default_h_values() : config.h_values);
  require_nonempty(config.schemes.empty(), "schemes");
  for (double h : h_values) {
    if (!(h > 0.0 && h <= 1.0)) throw InvalidArgument("sweep_h: h values must lie in (0, 1]");
  }
  const bool global = config.mode == SweepMode::Global;
  const double s = std::isnan(config.s) ? (global ? 0.02 : 0.1) : config.s;
  const long n = global ? steps_for(config.t, s) : 1;

  std::vector<std::vector<SweepRow>> slots(h_values.size());
  parallel_for(h_values.size(), config.threads, [&](std::size_t i) {
    const double h = h_values[i];
    const GridSpec grid = make_grid(config.setup, h);
    const HamiltonianPair pair = make_pair(config.setup, grid);
    const ExactPropagator exact(pair.hamiltonian(), h);
    const double t = static_cast<double>(n) * s;
    const ComplexVector psi = config.expectation ? gaussian_wavepacket(grid, config.x0, config.p0, h) : ComplexVector();

    std::vector<ComplexMatrix> observables;
    std::vector<ComplexMatrix> references;
    for (const auto& id : config.observables) {
      observables.push_back(observable_by_id(id, grid));
      references.push_back(exact.heisenberg(observables.back(), t));
    }
    for (const SplittingScheme scheme : config.schemes) {
      const EvolutionPlan plan{scheme, s, n, h};
      const std::string name(to_string(scheme));
      if (config.unitary) {
        slots[i].push_back({s, h, grid.N, name, "", kUnitaryError, unitary_error(pair, plan, exact)});
      }
      for (std::size_t o = 0; o < observables.size(); ++o) {
        const ComplexMatrix trotter = heisenberg_trotter(observables[o], pair, plan);
        SweepRow row{s, h, grid.N, name, config.observables[o], kObservableError,
                     spectral_norm(trotter - references[o])};
        slots[i].push_back(row);
        if (config.expectation) {
          row.metric = kExpectationError;
          row.value = expectation_gap(trotter, references[o], psi);
          slots[i].push_back(row);
        }
      }
    }
  });

  SweepTable table;
  for (auto& slot : slots) {
    for (auto& row : slot) table.rows.push_back(std::move(row));
  }
  add_setup_metadata(table, config.setup);
  table.metadata["command"] = "sweep-h";
  table.metadata["mode"] = std::string(to_string(config.mode));
  table.metadata["s"] = format_double(s);
  table.metadata["steps"] = std::to_string(n);
  fit_series(table, [](const SweepRow& r) { return r.h; }, FitWindow{});
  return table;
}

SweepTable commutator_scan(const CommutatorScanConfig& config) {
  const std::vector<double> h_values =
      sorted_unique(config.h_values.empty() ? powers_of_two(-3, -8) : config.h_values);
  std::vector<std::vector<SweepRow>> slots(h_values.size());
  parallel_for(h_values.size(), config.threads, [&](std::size_t i) {
    const double h = h_values[i];
    const GridSpec grid = make_grid(config.setup, h);
    const HamiltonianPair pair = make_pair(config.setup, grid);
    const ComplexMatrix a = pair.kinetic.dense / h;
    const ComplexMatrix b = pair.potential.dense / h;
    const ComplexMatrix ab = a * b - b * a;
    const ComplexMatrix a_ab = a * ab - ab * a;
    const ComplexMatrix b_ab = b * ab - ab * b;
    const ComplexMatrix bb = b * b - b * b;
    const auto push = [&](const char* name, double value) { slots[i].push_back({NAN, h, grid.N, "", "", name, value}); };
    push("A_h", spectral_norm(a));
    push("B_h", spectral_norm(b));
    push("[A_h,B_h]", spectral_norm(ab));
    push("[A_h,[A_h,B_h]]", spectral_norm(a_ab));
    push("[B_h,[A_h,B_h]]", spectral_norm(b_ab));
    push("[B_h,B_h]", spectral_norm(bb));
  });

  SweepTable table;
  for (auto& slot : slots) {
    for (auto& row : slot) table.rows.push_back(std::move(row));
  }
  add_setup_metadata(table, config.setup);
  table.metadata["command"] = "commutator-scan";
  // The zero row is a sanity check, not a scaling series.
  SweepTable scaling;
  for (const auto& row : table.rows) {
    if (row.metric != "[B_h,B_h]") scaling.rows.push_back(row);
  }
  fit_series(scaling, [](const SweepRow& r) { return r.h; }, FitWindow{});
  table.fits = std::move(scaling.fits);
  return table;
}

SweepTable calculus_suite(const CalculusConfig& config) {
  require_nonempty(config.N_values.empty(), "N_values");
  std::vector<int> Ns = config.N_values;
  std::sort(Ns.begin(), Ns.end());
  Ns.erase(std::unique(Ns.begin(), Ns.end()), Ns.end());
  for (int N : Ns) {
    if (N < 16 || !is_power_of_two(static_cast<std::size_t>(N))) {
      throw InvalidArgument("calculus_suite: N values must be powers of two >= 16");
    }
  }
  if (!config.quantizer) throw InvalidArgument("calculus_suite: quantizer is empty");

  const TorusSymbol a = TorusSymbol::cos_x(1);
  const TorusSymbol b = TorusSymbol::cos_xi(1);
  const TorusSymbol ab_sum = a + b;

  std::vector<std::vector<SweepRow>> slots(Ns.size());
  parallel_for(Ns.size(), config.threads, [&](std::size_t i) {
    const QuantizationContext ctx{Ns[i]};
    const double h = ctx.h();
    const auto push = [&](const char* name, double value) {
      slots[i].push_back({NAN, h, ctx.N, config.quantizer_name, "", name, value});
    };
    push("composition", composition_remainder(a, b, ctx, config.quantizer));
    push("commutator", commutator_remainder(a, b, ctx, config.quantizer));
    const double gap = cv_gap(ab_sum, ctx, config.quantizer);
    push("cv_gap", gap);
    push("cv_gap_over_h", gap / h);
    push("egorov", egorov_remainder(a, b, config.egorov_t, ctx, config.quantizer));
  });

  SweepTable table;
  for (auto& slot : slots) {
    for (auto& row : slot) table.rows.push_back(std::move(row));
  }
  table.metadata["command"] = "calculus-check";
  table.metadata["symbols"] = "a=cos(2*pi*x), b=cos(2*pi*xi)";
  table.metadata["quantizer"] = config.quantizer_name;
  table.metadata["egorov_t"] = format_double(config.egorov_t);
  SweepTable scaling;
  for (const auto& row : table.rows) {
    if (row.metric == "composition" || row.metric == "commutator" || row.metric == "egorov") {
      scaling.rows.push_back(row);
    }
  }
  fit_series(scaling, [](const SweepRow& r) { return r.h; }, FitWindow{});
  table.fits = std::move(scaling.fits);
  return table;
}

QueryResult query_count(double epsilon, SplittingScheme scheme, double h, const ProblemSetup& setup,
                        const std::string& observable, double t, long cap) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("query_count: epsilon must lie in (0, 1)");
  if (!(t > 0.0)) throw InvalidArgument("query_count: t must be positive");
  const GridSpec grid = make_grid(setup, h);
  const HamiltonianPair pair = make_pair(setup, grid);
  const ComplexMatrix O = observable_by_id(observable, grid);
  const ComplexMatrix reference = ExactPropagator(pair.hamiltonian(), h).heisenberg(O, t);

  QueryResult result{epsilon, h, grid.N, scheme, observable, 0, 0.0, 0};
  const auto error_at = [&](long n) {
    ++result.evaluations;
    const EvolutionPlan plan{scheme, t / static_cast<double>(n), n, h};
    return spectral_norm(heisenberg_trotter(O, pair, plan) - reference);
  };

  long hi = 1;
  double hi_error = error_at(hi);
  while (hi_error > epsilon) {
    if (hi >= cap) {
      throw Unreachable("query_count: error " + format_double(hi_error) + " still above epsilon=" +
                        format_double(epsilon) + " at the cap of " + std::to_string(cap) + " steps");
    }
    hi = std::min(2 * hi, cap);
    hi_error = error_at(hi);
  }
  long lo = hi / 2;  // known to fail unless hi == 1
  if (hi > 1) {
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      const double e = error_at(mid);
      if (e <= epsilon) {
        hi = mid;
        hi_error = e;
      } else {
        lo = mid;
      }
    }
  }
  result.steps = hi;
  result.error = hi_error;
  return result;
}

SweepTable query_table(const QueryConfig& config, std::vector<QueryResult>* results) {
  require_nonempty(config.epsilons.empty(), "epsilons");
  require_nonempty(config.h_values.empty(), "h_values");
  require_nonempty(config.schemes.empty(), "schemes");
  const std::vector<double> eps = sorted_unique(config.epsilons);
  const std::vector<double> hs = sorted_unique(config.h_values);
  const std::size_t per_eps = hs.size() * config.schemes.size();
  std::vector<QueryResult> out(eps.size() * per_eps);
  parallel_for(out.size(), config.threads, [&](std::size_t i) {
    const double e = eps[i / per_eps];
    const double h = hs[(i % per_eps) / config.schemes.size()];
    const SplittingScheme scheme = config.schemes[i % config.schemes.size()];
    out[i] = query_count(e, scheme, h, config.setup, config.observable, config.t, config.cap);
  });

  SweepTable table;
  for (const auto& r : out) {
    SweepRow row{config.t / static_cast<double>(r.steps), r.h, r.N, std::string(to_string(r.scheme)),
                 r.observable, "steps", static_cast<double>(r.steps)};
    table.rows.push_back(row);
  }
  add_setup_metadata(table, config.setup);
  table.metadata["command"] = "query-count";
  table.metadata["t"] = format_double(config.t);

  // log n against log epsilon per (scheme, h).
  for (const SplittingScheme scheme : config.schemes) {
    for (const double h : hs) {
      std::vector<FitPoint> pts;
      long N = 0;
      for (const auto& r : out) {
        if (r.scheme == scheme && r.h == h) {
          pts.push_back({r.epsilon, static_cast<double>(r.steps), 0.0});
          N = r.N;
        }
      }
      FitReport report;
      try {
        report = fit_loglog_slope(pts);
      } catch (const TooFewPoints&) {
      }
      report.series = std::string(to_string(scheme)) + "/" + config.observable + "/steps/N=" + std::to_string(N);
      table.fits.push_back(report);
    }
  }
  if (results) *results = std::move(out);
  return table;
}

}  // namespace trotterlab
