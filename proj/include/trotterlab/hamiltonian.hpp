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

// Physical-domain discretizations of H = -(h^2 / 2) Laplacian + V(x) with
// periodic boundary conditions on [a, b]. This is the only place where the
// physical domain is mapped to the unit torus, via x -> (x - a) / (b - a).

#ifndef TROTTERLAB_HAMILTONIAN_HPP
#define TROTTERLAB_HAMILTONIAN_HPP

#include <complex>
#include <functional>
#include <optional>

#include "trotterlab/fourier.hpp"
#include "trotterlab/numkit.hpp"
#include "trotterlab/symbols.hpp"

namespace trotterlab {

struct GridSpec {
  double a_dom = 0.0;
  double b_dom = 1.0;
  int N = 1;
  double h = 1.0;
  int d = 1;

  /// N = round((b - a) / (2 pi h)); on [-pi, pi] this is N = 1 / h.
  static GridSpec from_planck(double a_dom, double b_dom, double h, int d = 1);

  double length() const { return b_dom - a_dom; }
  double node(int j) const { return a_dom + length() * j / N; }
  RealVector nodes() const;
  /// Whether N equals (b - a) / (2 pi h) up to rounding.
  bool satisfies_planck_relation() const;
  /// Total dimension N^d.
  Eigen::Index dim() const;
};

/// Dense matrix plus, for d = 1, its diagonal factorization.
struct SplitOperator {
  ComplexMatrix dense;
  std::optional<FactoredOperator<double>> factored;

  Eigen::Index dim() const { return dense.rows(); }
};

struct HamiltonianPair {
  SplitOperator kinetic;    // A, diagonal in the Fourier basis
  SplitOperator potential;  // B, diagonal in position
  GridSpec grid;

  ComplexMatrix hamiltonian() const { return kinetic.dense + potential.dense; }
};

enum class KineticScheme { FiniteDifference, PseudoSpectral, ModifiedPseudoSpectral };

using Potential = std::function<std::complex<double>(double)>;

/// Signed frequency of native DFT bin idx: [0, ..., N/2-1, -N/2, ..., -1].
int signed_bin(int idx, int N);

/// Central finite differences: circulant with first column
/// (h^2 N^2 / (2 (b-a)^2)) [2, -1, 0, ..., 0, -1]; Kronecker sum for d > 1.
SplitOperator build_fd_kinetic(const GridSpec& grid);

/// diag(V(x_0), ..., V(x_{N-1})) in physical coordinates. For d > 1 the
/// separable sum V(x_1) + ... + V(x_d).
SplitOperator build_potential(const Potential& V, const GridSpec& grid);
/// Potential given as an x-only torus symbol, evaluated at (x - a) / (b - a).
SplitOperator build_potential(const TorusSymbol& V, const GridSpec& grid);

/// F^-1 D_sp F with D_sp = (h^2 / 2)(2 pi / (b-a))^2 diag(k^2). Requires even N.
SplitOperator build_sp_kinetic(const GridSpec& grid);

/// Smooth cutoff chi: 1 on |u| <= 1/2 - c, 0 for |u| >= (1 - c) / 2.
double modifier_cutoff(double u, double c);

/// Spectral kinetic with symbol xi^2 chi(xi), xi = k / N; exact on |k / N| <= 1/2 - c.
SplitOperator build_modified_sp_kinetic(const GridSpec& grid, double c);

/// Spectral momentum -i h d/dx: F^-1 diag(h (2 pi / (b-a)) k) F. Requires even N.
ComplexMatrix momentum_observable(const GridSpec& grid);

/// diag(cos(x_j)).
ComplexMatrix cosine_observable(const GridSpec& grid);

HamiltonianPair make_hamiltonian(const GridSpec& grid, KineticScheme kinetic, const Potential& V,
                                 double modifier_c = 0.1);

}  // namespace trotterlab

#endif  // TROTTERLAB_HAMILTONIAN_HPP
