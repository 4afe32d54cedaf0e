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

#include <random>

#include "oracles.hpp"
#include "trotterlab/symbols.hpp"

namespace trotterlab {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TorusSymbol random_symbol(int kx, int kxi, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  TorusSymbol a(kx, kxi);
  for (int k = -kx; k <= kx; ++k) {
    for (int q = -kxi; q <= kxi; ++q) a.coeff_ref(k, q) = cplx(g(rng), g(rng));
  }
  return a;
}

double coeff_distance(const TorusSymbol& a, const TorusSymbol& b) {
  const int kx = std::max(a.kx_max(), b.kx_max());
  const int kxi = std::max(a.kxi_max(), b.kxi_max());
  double worst = 0.0;
  for (int k = -kx; k <= kx; ++k) {
    for (int q = -kxi; q <= kxi; ++q) worst = std::max(worst, std::abs(a.coeff(k, q) - b.coeff(k, q)));
  }
  return worst;
}

oracle::ScalarField field(const TorusSymbol& a) {
  return [a](double x, double xi) { return eval(a, x, xi); };
}

TEST(TorusSymbol, Evaluation) {
  EXPECT_NEAR(std::abs(eval(TorusSymbol::cos_x(), 0.25, 0.3)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(eval(TorusSymbol::constant(1.0), 0.7, 0.1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(eval(TorusSymbol::cos_x() * TorusSymbol::cos_xi(), 0.0, 0.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(eval(TorusSymbol::sin_xi(2), 0.3, 0.0625).real(), std::sin(2 * kPi * 2 * 0.0625), 1e-14);
}

TEST(TorusSymbol, RealityAndDependence) {
  EXPECT_TRUE(TorusSymbol::cos_x().is_real());
  EXPECT_TRUE((TorusSymbol::sin_x() * TorusSymbol::cos_xi()).is_real());
  EXPECT_FALSE(TorusSymbol::from_terms({{1, 0, 1.0}}).is_real());
  EXPECT_TRUE(TorusSymbol::cos_x().depends_on_x());
  EXPECT_FALSE(TorusSymbol::cos_x().depends_on_xi());
  EXPECT_FALSE(TorusSymbol::constant(3.0).depends_on_x());
  EXPECT_THROW(TorusSymbol(ComplexMatrix::Zero(2, 3)), InvalidArgument);
}

TEST(TorusSymbol, ProductMatchesPointwiseProduct) {
  std::mt19937_64 rng(1);
  const TorusSymbol a = random_symbol(2, 1, rng);
  const TorusSymbol b = random_symbol(1, 3, rng);
  const TorusSymbol ab = a * b;
  for (double x : {0.0, 0.13, 0.71}) {
    for (double xi : {0.0, 0.42, 0.9}) {
      EXPECT_NEAR(std::abs(eval(ab, x, xi) - eval(a, x, xi) * eval(b, x, xi)), 0.0, 1e-11);
    }
  }
}

TEST(TorusSymbol, DerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(2);
  const TorusSymbol a = random_symbol(2, 2, rng);
  const double e = 1e-6;
  for (double x : {0.1, 0.55}) {
    for (double xi : {0.2, 0.8}) {
      const cplx dx = (eval(a, x + e, xi) - eval(a, x - e, xi)) / (2 * e);
      const cplx dxi = (eval(a, x, xi + e) - eval(a, x, xi - e)) / (2 * e);
      EXPECT_NEAR(std::abs(eval(a.d_x(), x, xi) - dx), 0.0, 1e-6);
      EXPECT_NEAR(std::abs(eval(a.d_xi(), x, xi) - dxi), 0.0, 1e-6);
    }
  }
}

TEST(PoissonBracket, TrivialCases) {
  const TorusSymbol a = TorusSymbol::cos_x() + TorusSymbol::sin_xi();
  EXPECT_LT(coeff_distance(poisson_bracket(a, a), TorusSymbol()), 1e-12);
  EXPECT_LT(coeff_distance(poisson_bracket(TorusSymbol::cos_x(), TorusSymbol::sin_x(3)), TorusSymbol()), 1e-12);
}

TEST(PoissonBracket, MatchesFiniteDifferenceOracleOnGrid) {
  const TorusSymbol a = TorusSymbol::cos_xi();
  const TorusSymbol b = TorusSymbol::cos_x();
  const TorusSymbol pb = poisson_bracket(a, b);
  const auto fa = field(a);
  const auto fb = field(b);
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      const double x = i / 64.0;
      const double xi = j / 64.0;
      worst = std::max(worst, std::abs(eval(pb, x, xi) - oracle::fd_poisson(fa, fb, x, xi)));
    }
  }
  EXPECT_LT(worst, 1e-6);
  // Closed form: {cos 2 pi xi, cos 2 pi x} = (2 pi)^2 sin(2 pi xi) sin(2 pi x).
  EXPECT_NEAR(eval(pb, 0.25, 0.25).real(), 4 * kPi * kPi, 1e-10);
}

TEST(PoissonBracket, BilinearAndLeibniz) {
  std::mt19937_64 rng(3);
  const TorusSymbol a = random_symbol(1, 2, rng);
  const TorusSymbol b = random_symbol(2, 1, rng);
  const TorusSymbol c = random_symbol(1, 1, rng);
  const cplx alpha(0.3, -1.2);
  EXPECT_LT(coeff_distance(poisson_bracket(a, b + alpha * c), poisson_bracket(a, b) + alpha * poisson_bracket(a, c)),
            1e-10);
  EXPECT_LT(coeff_distance(poisson_bracket(a, b * c), poisson_bracket(a, b) * c + b * poisson_bracket(a, c)), 1e-9);
  EXPECT_LT(coeff_distance(poisson_bracket(a, b), -1.0 * poisson_bracket(b, a)), 1e-10);
}

TEST(SupNorm, KnownValues) {
  EXPECT_NEAR(sup_norm(TorusSymbol::cos_x()), 1.0, 1e-14);
  EXPECT_NEAR(sup_norm(TorusSymbol::cos_x() + TorusSymbol::cos_xi()), 2.0, 1e-14);
  EXPECT_NEAR(sup_norm(TorusSymbol::constant(cplx(3.0, 4.0))), 5.0, 1e-14);
}

TEST(Sampling, TruncateRecoversBandLimitedSymbol) {
  std::mt19937_64 rng(4);
  const TorusSymbol a = random_symbol(3, 5, rng);
  const TorusSymbol back = truncate(sample(a, 64));
  EXPECT_LT(coeff_distance(a, back), 1e-12);
  const SampledSymbol s = sample(back, 64);
  EXPECT_LT((s.grid - sample(a, 64).grid).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Sampling, RejectsBadGrids) {
  EXPECT_THROW(sample(TorusSymbol::cos_x(), 48), InvalidArgument);
  EXPECT_THROW(truncate(sample(TorusSymbol::cos_x(), 16), 8), InvalidArgument);
}

TEST(Pullback, IdentityCases) {
  const TorusSymbol a = TorusSymbol::cos_x() * TorusSymbol::sin_xi();
  const SampledSymbol base = sample(a, 64);
  EXPECT_LT((pullback_split_flow(a, TorusSymbol::cos_xi(), 0.0, 64).grid - base.grid).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((pullback_split_flow(a, TorusSymbol(), 0.7, 64).grid - base.grid).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((pullback_split_flow(a, TorusSymbol::constant(2.0), 0.7, 64).grid - base.grid).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(Pullback, NotSplitGeneratorThrows) {
  EXPECT_THROW(pullback_split_flow(TorusSymbol::cos_x(), TorusSymbol::cos_x() * TorusSymbol::cos_xi(), 0.1),
               NotSplit);
}

TEST(Pullback, MatchesSymplecticEulerForXGenerator) {
  const TorusSymbol a = TorusSymbol::cos_xi();
  const TorusSymbol b = TorusSymbol::cos_x();
  const double t = 0.1;
  const int M = 32;
  const SampledSymbol pulled = pullback_split_flow(a, b, t, M);
  const auto fb = field(b);
  double worst = 0.0;
  double closed = 0.0;
  for (int i = 0; i < M; i += 3) {
    for (int j = 0; j < M; j += 5) {
      const double x = double(i) / M;
      const double xi = double(j) / M;
      const auto [fx, fxi] = oracle::symplectic_euler_flow(fb, x, xi, t);
      worst = std::max(worst, std::abs(pulled.grid(i, j) - eval(a, fx, fxi)));
      const double expected = std::cos(2 * kPi * (xi + t * 2 * kPi * std::sin(2 * kPi * x)));
      closed = std::max(closed, std::abs(pulled.grid(i, j) - expected));
    }
  }
  EXPECT_LT(worst, 1e-6);
  EXPECT_LT(closed, 1e-12);
}

TEST(Pullback, MatchesSymplecticEulerForXiGenerator) {
  const TorusSymbol a = TorusSymbol::cos_x() + TorusSymbol::sin_xi();
  const TorusSymbol b = TorusSymbol::cos_xi() + 0.5 * TorusSymbol::sin_xi(2);
  const double t = -0.3;
  const int M = 32;
  const SampledSymbol pulled = pullback_split_flow(a, b, t, M);
  const auto fb = field(b);
  double worst = 0.0;
  for (int i = 0; i < M; i += 7) {
    for (int j = 0; j < M; j += 3) {
      const auto [fx, fxi] = oracle::symplectic_euler_flow(fb, double(i) / M, double(j) / M, t);
      worst = std::max(worst, std::abs(pulled.grid(i, j) - eval(a, fx, fxi)));
    }
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Pullback, CoefficientsMatchJacobiAngerExpansion) {
  const double t = 0.5;
  const TorusSymbol c = truncate(pullback_split_flow(TorusSymbol::cos_x(), TorusSymbol::cos_xi(), t, 256));
  double worst = 0.0;
  for (int k = -3; k <= 3; ++k) {
    for (int q = -60; q <= 60; ++q) {
      worst = std::max(worst, std::abs(c.coeff(k, q) - oracle::jacobi_anger_pullback_coeff(k, q, t)));
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Pullback, PreservesSupNormOnGrid) {
  const TorusSymbol a = TorusSymbol::cos_x() * TorusSymbol::cos_xi() + 0.5 * TorusSymbol::sin_x();
  const SampledSymbol pulled = pullback_split_flow(a, TorusSymbol::cos_xi(), 0.25, 128);
  const double before = sample(a, 128).grid.cwiseAbs().maxCoeff();
  const double after = pulled.grid.cwiseAbs().maxCoeff();
  EXPECT_NEAR(after, before, 5e-3);
}

}  // namespace
}  // namespace trotterlab
