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

#include "trotterlab/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace trotterlab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_context(const QuantizationContext& ctx) {
  if (ctx.N <= 0) throw InvalidArgument("quantize: N must be positive");
}

// floor(a / b) for b > 0.
long floor_div(long a, long b) { return (a >= 0) ? a / b : -((-a + b - 1) / b); }
long ceil_div(long a, long b) { return -floor_div(-a, b); }

bool slice_is_zero(const TorusSymbol& a, int k) {
  return a.coeffs().row(k + a.kx_max()).cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

ComplexMatrix quantize(const TorusSymbol& a, const QuantizationContext& ctx) {
  require_context(ctx);
  const long N = ctx.N;
  const long kxi = a.kxi_max();
  ComplexMatrix out = ComplexMatrix::Zero(N, N);
  std::vector<std::complex<double>> phase(static_cast<std::size_t>(2 * N));

  for (int k = -a.kx_max(); k <= a.kx_max(); ++k) {
    if (slice_is_zero(a, k)) continue;
    // exp(pi i s k / N) for s = j + m in [0, 2N - 2].
    for (long s = 0; s < 2 * N; ++s) {
      phase[static_cast<std::size_t>(s)] = std::polar(1.0, kPi * double(s) * k / double(N));
    }
    for (long j = 0; j < N; ++j) {
      for (long m = 0; m < N; ++m) {
        // Every l with |j - m - l N| <= Kxi contributes.
        const long l_lo = ceil_div(j - m - kxi, N);
        const long l_hi = floor_div(j - m + kxi, N);
        std::complex<double> acc{};
        for (long l = l_lo; l <= l_hi; ++l) {
          const auto c = a.coeff(k, static_cast<int>(j - m - l * N));
          const bool odd = ((long(k) * l) % 2) != 0;
          acc += odd ? -c : c;
        }
        out(m, j) += acc * phase[static_cast<std::size_t>(j + m)];
      }
    }
  }
  return out;
}

ComplexMatrix quantize_left(const TorusSymbol& a, const QuantizationContext& ctx) {
  require_context(ctx);
  const long N = ctx.N;
  const long kxi = a.kxi_max();
  ComplexMatrix out = ComplexMatrix::Zero(N, N);
  for (int k = -a.kx_max(); k <= a.kx_max(); ++k) {
    if (slice_is_zero(a, k)) continue;
    for (long j = 0; j < N; ++j) {
      for (long m = 0; m < N; ++m) {
        const long l_lo = ceil_div(j - m - kxi, N);
        const long l_hi = floor_div(j - m + kxi, N);
        std::complex<double> acc{};
        for (long l = l_lo; l <= l_hi; ++l) acc += a.coeff(k, static_cast<int>(j - m - l * N));
        out(m, j) += acc * std::polar(1.0, 2.0 * kPi * double(m) * k / double(N));
      }
    }
  }
  return out;
}

ComplexMatrix quantize_sampled(const SampledSymbol& a, const QuantizationContext& ctx, const Quantizer& q) {
  require_context(ctx);
  if (a.M() < 4 * ctx.N) {
    throw GridTooCoarse("quantize_sampled: sample grid M=" + std::to_string(a.M()) + " is below 4N=" +
                        std::to_string(4 * ctx.N));
  }
  return q(truncate(a), ctx);
}

double composition_remainder(const TorusSymbol& a, const TorusSymbol& b, const QuantizationContext& ctx,
                             const Quantizer& q) {
  const double h = ctx.h();
  const ComplexMatrix r = q(a, ctx) * q(b, ctx) - q(a * b, ctx) - (h / std::complex<double>(0.0, 2.0)) * q(poisson_bracket(a, b), ctx);
  return spectral_norm(r);
}

double commutator_remainder(const TorusSymbol& a, const TorusSymbol& b, const QuantizationContext& ctx,
                            const Quantizer& q) {
  const double h = ctx.h();
  const ComplexMatrix qa = q(a, ctx);
  const ComplexMatrix qb = q(b, ctx);
  const ComplexMatrix r = qa * qb - qb * qa - (h / std::complex<double>(0.0, 1.0)) * q(poisson_bracket(a, b), ctx);
  return spectral_norm(r);
}

double cv_gap(const TorusSymbol& a, const QuantizationContext& ctx, const Quantizer& q) {
  if (!a.is_real()) throw InvalidArgument("cv_gap: symbol must be real-valued");
  return spectral_norm(q(a, ctx)) - sup_norm(a);
}

int egorov_grid(int N) { return std::max(kDefaultPullbackGrid, 4 * N); }

double egorov_remainder(const TorusSymbol& a, const TorusSymbol& generator, double t,
                        const QuantizationContext& ctx, const Quantizer& q) {
  if (generator.depends_on_x() && generator.depends_on_xi()) {
    throw NotSplit("egorov_remainder: generator depends on both x and xi");
  }
  if (std::abs(t) > 1.0) throw InvalidArgument("egorov_remainder: |t| must not exceed 1");
  const double h = ctx.h();
  const ComplexMatrix qb = q(generator, ctx);
  const ComplexMatrix ub = expm_hermitian(qb, t / h);
  const ComplexMatrix evolved = ub * q(a, ctx) * ub.adjoint();
  const ComplexMatrix flowed = quantize_sampled(pullback_split_flow(a, generator, t, egorov_grid(ctx.N)), ctx, q);
  return spectral_norm(evolved - flowed);
}

}  // namespace trotterlab
