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

// Phase-space symbols on the unit torus T^2 = {(x, xi)}.
//
// A TorusSymbol is a trigonometric polynomial
//   a(x, xi) = sum_{|k| <= Kx, |kappa| <= Kxi} c(k, kappa) exp(2 pi i (k x + kappa xi)),
// so derivatives are lattice multiplications and products are convolutions.
// Anything that is not a finite polynomial (e.g. a pullback under a nonlinear
// flow) travels as a SampledSymbol and is truncated back when quantized.

#ifndef TROTTERLAB_SYMBOLS_HPP
#define TROTTERLAB_SYMBOLS_HPP

#include <complex>
#include <functional>
#include <initializer_list>

#include "trotterlab/numkit.hpp"

namespace trotterlab {

class TorusSymbol {
 public:
  struct Term {
    int k;
    int kappa;
    std::complex<double> c;
  };

  /// The zero symbol.
  TorusSymbol();
  /// Zero symbol with room for |k| <= kx_max, |kappa| <= kxi_max.
  TorusSymbol(int kx_max, int kxi_max);
  /// Takes a (2 Kx + 1) x (2 Kxi + 1) coefficient block, entry (k + Kx, kappa + Kxi).
  explicit TorusSymbol(ComplexMatrix coeffs);

  static TorusSymbol from_terms(std::initializer_list<Term> terms);
  static TorusSymbol constant(std::complex<double> c);
  static TorusSymbol cos_x(int freq = 1);
  static TorusSymbol sin_x(int freq = 1);
  static TorusSymbol cos_xi(int freq = 1);
  static TorusSymbol sin_xi(int freq = 1);

  int kx_max() const { return kx_max_; }
  int kxi_max() const { return kxi_max_; }
  const ComplexMatrix& coeffs() const { return coeffs_; }

  /// Coefficient c(k, kappa); zero outside the stored lattice.
  std::complex<double> coeff(int k, int kappa) const;
  /// Writable coefficient; the lattice grows to fit.
  std::complex<double>& coeff_ref(int k, int kappa);

  bool depends_on_x() const;
  bool depends_on_xi() const;
  /// c(-k, -kappa) == conj(c(k, kappa)) within tol.
  bool is_real(double tol = 1e-12) const;

  TorusSymbol d_x() const;
  TorusSymbol d_xi() const;

  TorusSymbol& operator+=(const TorusSymbol& other);
  TorusSymbol& operator-=(const TorusSymbol& other);
  TorusSymbol& operator*=(std::complex<double> s);

 private:
  void grow(int kx_max, int kxi_max);

  int kx_max_ = 0;
  int kxi_max_ = 0;
  ComplexMatrix coeffs_;
};

TorusSymbol operator+(TorusSymbol a, const TorusSymbol& b);
TorusSymbol operator-(TorusSymbol a, const TorusSymbol& b);
TorusSymbol operator*(std::complex<double> s, TorusSymbol a);
/// Pointwise product (coefficient convolution).
TorusSymbol operator*(const TorusSymbol& a, const TorusSymbol& b);

std::complex<double> eval(const TorusSymbol& a, double x, double xi);

/// {a, b} = d_xi a * d_x b - d_x a * d_xi b, exactly in coefficient space.
TorusSymbol poisson_bracket(const TorusSymbol& a, const TorusSymbol& b);

/// max |a| over a samples_per_axis^2 uniform grid (default 64^2 = 4096 points).
double sup_norm(const TorusSymbol& a, int samples_per_axis = 64);

/// M x M samples on the grid (i / M, j / M); row index is x, column is xi.
struct SampledSymbol {
  ComplexMatrix grid;

  int M() const { return static_cast<int>(grid.rows()); }
};

SampledSymbol sample(const TorusSymbol& a, int M);
SampledSymbol sample(const std::function<std::complex<double>(double, double)>& f, int M);

/// Fourier coefficients of the samples truncated to |k|, |kappa| <= K
/// (K < 0 selects the default M / 4). Coefficients below
/// prune_tol * max|c| are dropped.
TorusSymbol truncate(const SampledSymbol& a, int K = -1, double prune_tol = 1e-14);

/// Default sampling resolution for pullbacks.
inline constexpr int kDefaultPullbackGrid = 256;

/// Samples of a o phi_t, where phi_t is the Hamiltonian flow of a generator
/// depending on x only (xi -> xi - t b'(x)) or on xi only (x -> x + t b'(xi)).
/// Throws NotSplit when the generator depends on both variables.
SampledSymbol pullback_split_flow(const TorusSymbol& a, const TorusSymbol& generator, double t,
                                  int M = kDefaultPullbackGrid);

}  // namespace trotterlab

#endif  // TROTTERLAB_SYMBOLS_HPP
