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

#include "trotterlab/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace trotterlab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_grid(const GridSpec& grid) {
  if (grid.N <= 0) throw InvalidArgument("GridSpec: N must be positive");
  if (grid.d <= 0) throw InvalidArgument("GridSpec: d must be positive");
  if (!(grid.b_dom > grid.a_dom)) throw InvalidArgument("GridSpec: empty domain");
  if (!(grid.h > 0.0)) throw InvalidArgument("GridSpec: h must be positive");
}

void require_even(const GridSpec& grid, const char* op) {
  if (grid.N % 2 != 0) throw OddN(std::string(op) + ": N must be even, got " + std::to_string(grid.N));
}

SplitOperator from_fourier_diagonal(const RealVector& d) {
  FactoredOperator<double> f = FactoredOperator<double>::fourier(d.cast<std::complex<double>>());
  ComplexMatrix dense = f.materialize();
  dense = (dense + dense.adjoint()).eval() / 2.0;
  return {std::move(dense), std::move(f)};
}

// Kronecker sum of d copies of a one-axis block; keeps the factored form only for d = 1.
SplitOperator lift(SplitOperator one_axis, int d) {
  if (d == 1) return one_axis;
  std::vector<ComplexMatrix> blocks(static_cast<std::size_t>(d), one_axis.dense);
  return {kron_sum(blocks), std::nullopt};
}

}  // namespace

GridSpec GridSpec::from_planck(double a_dom, double b_dom, double h, int d) {
  if (!(h > 0.0)) throw InvalidArgument("GridSpec: h must be positive");
  GridSpec g{a_dom, b_dom, static_cast<int>(std::lround((b_dom - a_dom) / (2.0 * kPi * h))), h, d};
  require_grid(g);
  return g;
}

RealVector GridSpec::nodes() const {
  RealVector x(N);
  for (int j = 0; j < N; ++j) x(j) = node(j);
  return x;
}

bool GridSpec::satisfies_planck_relation() const {
  return N == static_cast<int>(std::lround(length() / (2.0 * kPi * h)));
}

Eigen::Index GridSpec::dim() const {
  Eigen::Index n = 1;
  for (int i = 0; i < d; ++i) n *= N;
  return n;
}

int signed_bin(int idx, int N) { return idx < N - N / 2 ? idx : idx - N; }

SplitOperator build_fd_kinetic(const GridSpec& grid) {
  require_grid(grid);
  const int N = grid.N;
  const double L = grid.length();
  const double prefactor = grid.h * grid.h * double(N) * double(N) / (2.0 * L * L);
  // DFT of the first column 2 e_0 - e_1 - e_{N-1}, times the prefactor.
  RealVector d(N);
  for (int k = 0; k < N; ++k) d(k) = 2.0 * prefactor * (1.0 - std::cos(2.0 * kPi * k / N));
  return lift(from_fourier_diagonal(d), grid.d);
}

SplitOperator build_potential(const Potential& V, const GridSpec& grid) {
  require_grid(grid);
  RealVector values(grid.N);
  for (int j = 0; j < grid.N; ++j) {
    const std::complex<double> v = V(grid.node(j));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NonFinite("build_potential: V is not finite at x=" + std::to_string(grid.node(j)));
    }
    if (v.imag() != 0.0) {
      throw NonRealPotential("build_potential: V has imaginary part at x=" + std::to_string(grid.node(j)));
    }
    values(j) = v.real();
  }
  const ComplexVector diag = values.cast<std::complex<double>>();
  SplitOperator one_axis{ComplexMatrix(diag.asDiagonal()), FactoredOperator<double>::position(diag)};
  return lift(std::move(one_axis), grid.d);
}

SplitOperator build_potential(const TorusSymbol& V, const GridSpec& grid) {
  if (V.depends_on_xi()) throw InvalidArgument("build_potential: symbol depends on xi");
  if (!V.is_real()) throw NonRealPotential("build_potential: symbol is not real-valued");
  const double a = grid.a_dom;
  const double L = grid.length();
  return build_potential([&](double x) { return std::complex<double>(eval(V, (x - a) / L, 0.0).real()); },
                         grid);
}

SplitOperator build_sp_kinetic(const GridSpec& grid) {
  require_grid(grid);
  require_even(grid, "build_sp_kinetic");
  const double scale = 0.5 * grid.h * grid.h * std::pow(2.0 * kPi / grid.length(), 2);
  RealVector d(grid.N);
  for (int idx = 0; idx < grid.N; ++idx) {
    const double k = signed_bin(idx, grid.N);
    d(idx) = scale * k * k;
  }
  return lift(from_fourier_diagonal(d), grid.d);
}

double modifier_cutoff(double u, double c) {
  if (!(c > 0.0 && c < 0.5)) throw BadCutoff("modifier_cutoff: c must lie in (0, 1/2)");
  const double inner = 0.5 - c;
  const double outer = 0.5 * (1.0 - c);
  const double au = std::abs(u);
  if (au <= inner) return 1.0;
  if (au >= outer) return 0.0;
  // Smooth step built from exp(-1/t): f(r) / (f(r) + f(1 - r)).
  const auto f = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double r = (outer - au) / (outer - inner);
  return f(r) / (f(r) + f(1.0 - r));
}

SplitOperator build_modified_sp_kinetic(const GridSpec& grid, double c) {
  require_grid(grid);
  require_even(grid, "build_modified_sp_kinetic");
  if (!(c > 0.0 && c < 0.5)) throw BadCutoff("build_modified_sp_kinetic: c must lie in (0, 1/2)");
  const double scale = 0.5 * grid.h * grid.h * std::pow(2.0 * kPi / grid.length(), 2);
  RealVector d(grid.N);
  for (int idx = 0; idx < grid.N; ++idx) {
    const double k = signed_bin(idx, grid.N);
    d(idx) = scale * k * k * modifier_cutoff(k / grid.N, c);
  }
  return lift(from_fourier_diagonal(d), grid.d);
}

ComplexMatrix momentum_observable(const GridSpec& grid) {
  require_grid(grid);
  require_even(grid, "momentum_observable");
  const double scale = grid.h * 2.0 * kPi / grid.length();
  RealVector d(grid.N);
  for (int idx = 0; idx < grid.N; ++idx) d(idx) = scale * signed_bin(idx, grid.N);
  return from_fourier_diagonal(d).dense;
}

ComplexMatrix cosine_observable(const GridSpec& grid) {
  require_grid(grid);
  ComplexVector diag(grid.N);
  for (int j = 0; j < grid.N; ++j) diag(j) = std::cos(grid.node(j));
  return diag.asDiagonal();
}

HamiltonianPair make_hamiltonian(const GridSpec& grid, KineticScheme kinetic, const Potential& V,
                                 double modifier_c) {
  SplitOperator a;
  switch (kinetic) {
    case KineticScheme::FiniteDifference:
      a = build_fd_kinetic(grid);
      break;
    case KineticScheme::PseudoSpectral:
      a = build_sp_kinetic(grid);
      break;
    case KineticScheme::ModifiedPseudoSpectral:
      a = build_modified_sp_kinetic(grid, modifier_c);
      break;
  }
  return {std::move(a), build_potential(V, grid), grid};
}

}  // namespace trotterlab
