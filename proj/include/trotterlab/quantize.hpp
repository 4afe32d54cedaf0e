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

// Discrete Weyl quantization op_N on the quantized torus H_N (d = 1), and the
// remainders of the semiclassical calculus measured in the spectral norm.
//
// In the orthonormal basis (Q_n) of H_N,
//   op_N(a)_{mj} = sum_{k, l} c(k, j - m - l N) (-1)^{k l} exp(pi i (j + m) k / N)
// with h = 1 / (2 pi N).

#ifndef TROTTERLAB_QUANTIZE_HPP
#define TROTTERLAB_QUANTIZE_HPP

#include <functional>
#include <numbers>

#include "trotterlab/numkit.hpp"
#include "trotterlab/symbols.hpp"

namespace trotterlab {

/// Dimension of H_N. The Planck constant is derived, never stored.
struct QuantizationContext {
  int N = 1;

  double h() const { return 1.0 / (2.0 * std::numbers::pi * N); }
};

using Quantizer = std::function<ComplexMatrix(const TorusSymbol&, const QuantizationContext&)>;

ComplexMatrix quantize(const TorusSymbol& a, const QuantizationContext& ctx);

/// Left (x-first) ordering: op_{mj} = sum_{k,l} c(k, j - m - l N) exp(2 pi i m k / N).
/// Agrees with op_N on x-only and xi-only symbols but not on mixed ones; the
/// calculus checks use it as a negative control.
ComplexMatrix quantize_left(const TorusSymbol& a, const QuantizationContext& ctx);

/// quantize(truncate(a)); requires M >= 4 N.
ComplexMatrix quantize_sampled(const SampledSymbol& a, const QuantizationContext& ctx,
                               const Quantizer& q = quantize);

/// ||op(a) op(b) - op(ab) - (h / 2i) op({a, b})||, expected O(h^2).
double composition_remainder(const TorusSymbol& a, const TorusSymbol& b, const QuantizationContext& ctx,
                             const Quantizer& q = quantize);

/// ||[op(a), op(b)] - (h / i) op({a, b})||, expected O(h^3).
double commutator_remainder(const TorusSymbol& a, const TorusSymbol& b, const QuantizationContext& ctx,
                            const Quantizer& q = quantize);

/// ||op(a)|| - sup|a|, expected <= C(a) h. Requires a real symbol.
double cv_gap(const TorusSymbol& a, const QuantizationContext& ctx, const Quantizer& q = quantize);

/// Sampling grid used for Egorov pullbacks at dimension N: max(256, 4N).
int egorov_grid(int N);

/// ||e^{it op(b)/h} op(a) e^{-it op(b)/h} - op(a o phi_t)||, expected O(h^2)
/// at fixed t. The generator must be split and |t| <= 1.
double egorov_remainder(const TorusSymbol& a, const TorusSymbol& generator, double t,
                        const QuantizationContext& ctx, const Quantizer& q = quantize);

}  // namespace trotterlab

#endif  // TROTTERLAB_QUANTIZE_HPP
