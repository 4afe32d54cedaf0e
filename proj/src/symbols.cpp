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

#include "trotterlab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "trotterlab/fourier.hpp"

namespace trotterlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_unit(double v) { return v - std::floor(v); }

std::vector<std::complex<double>> phase_table(int kmax, double arg) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(2 * kmax + 1));
  for (int k = -kmax; k <= kmax; ++k) out[static_cast<std::size_t>(k + kmax)] = std::polar(1.0, kTwoPi * k * arg);
  return out;
}

}  // namespace

TorusSymbol::TorusSymbol() : coeffs_(ComplexMatrix::Zero(1, 1)) {}

TorusSymbol::TorusSymbol(int kx_max, int kxi_max)
    : kx_max_(kx_max), kxi_max_(kxi_max), coeffs_(ComplexMatrix::Zero(2 * kx_max + 1, 2 * kxi_max + 1)) {
  if (kx_max < 0 || kxi_max < 0) throw InvalidArgument("TorusSymbol: negative lattice extent");
}

TorusSymbol::TorusSymbol(ComplexMatrix coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() % 2 == 0 || coeffs_.cols() % 2 == 0) {
    throw InvalidArgument("TorusSymbol: coefficient block must have odd extents");
  }
  kx_max_ = static_cast<int>(coeffs_.rows() / 2);
  kxi_max_ = static_cast<int>(coeffs_.cols() / 2);
}

TorusSymbol TorusSymbol::from_terms(std::initializer_list<Term> terms) {
  TorusSymbol out;
  for (const auto& t : terms) out.coeff_ref(t.k, t.kappa) += t.c;
  return out;
}

TorusSymbol TorusSymbol::constant(std::complex<double> c) { return from_terms({{0, 0, c}}); }

TorusSymbol TorusSymbol::cos_x(int freq) { return from_terms({{freq, 0, 0.5}, {-freq, 0, 0.5}}); }

TorusSymbol TorusSymbol::sin_x(int freq) {
  using namespace std::complex_literals;
  return from_terms({{freq, 0, -0.5i}, {-freq, 0, 0.5i}});
}

TorusSymbol TorusSymbol::cos_xi(int freq) { return from_terms({{0, freq, 0.5}, {0, -freq, 0.5}}); }

TorusSymbol TorusSymbol::sin_xi(int freq) {
  using namespace std::complex_literals;
  return from_terms({{0, freq, -0.5i}, {0, -freq, 0.5i}});
}

std::complex<double> TorusSymbol::coeff(int k, int kappa) const {
  if (std::abs(k) > kx_max_ || std::abs(kappa) > kxi_max_) return {};
  return coeffs_(k + kx_max_, kappa + kxi_max_);
}

std::complex<double>& TorusSymbol::coeff_ref(int k, int kappa) {
  grow(std::max(kx_max_, std::abs(k)), std::max(kxi_max_, std::abs(kappa)));
  return coeffs_(k + kx_max_, kappa + kxi_max_);
}

void TorusSymbol::grow(int kx_max, int kxi_max) {
  if (kx_max == kx_max_ && kxi_max == kxi_max_) return;
  ComplexMatrix bigger = ComplexMatrix::Zero(2 * kx_max + 1, 2 * kxi_max + 1);
  bigger.block(kx_max - kx_max_, kxi_max - kxi_max_, coeffs_.rows(), coeffs_.cols()) = coeffs_;
  coeffs_ = std::move(bigger);
  kx_max_ = kx_max;
  kxi_max_ = kxi_max;
}

bool TorusSymbol::depends_on_x() const {
  for (int k = -kx_max_; k <= kx_max_; ++k) {
    if (k == 0) continue;
    if (coeffs_.row(k + kx_max_).cwiseAbs().maxCoeff() > 0.0) return true;
  }
  return false;
}

bool TorusSymbol::depends_on_xi() const {
  for (int q = -kxi_max_; q <= kxi_max_; ++q) {
    if (q == 0) continue;
    if (coeffs_.col(q + kxi_max_).cwiseAbs().maxCoeff() > 0.0) return true;
  }
  return false;
}

bool TorusSymbol::is_real(double tol) const {
  for (int k = -kx_max_; k <= kx_max_; ++k) {
    for (int q = -kxi_max_; q <= kxi_max_; ++q) {
      if (std::abs(coeff(-k, -q) - std::conj(coeff(k, q))) > tol) return false;
    }
  }
  return true;
}

TorusSymbol TorusSymbol::d_x() const {
  TorusSymbol out = *this;
  for (int k = -kx_max_; k <= kx_max_; ++k) {
    out.coeffs_.row(k + kx_max_) *= std::complex<double>(0.0, kTwoPi * k);
  }
  return out;
}

TorusSymbol TorusSymbol::d_xi() const {
  TorusSymbol out = *this;
  for (int q = -kxi_max_; q <= kxi_max_; ++q) {
    out.coeffs_.col(q + kxi_max_) *= std::complex<double>(0.0, kTwoPi * q);
  }
  return out;
}

TorusSymbol& TorusSymbol::operator+=(const TorusSymbol& other) {
  grow(std::max(kx_max_, other.kx_max_), std::max(kxi_max_, other.kxi_max_));
  coeffs_.block(kx_max_ - other.kx_max_, kxi_max_ - other.kxi_max_, other.coeffs_.rows(),
                other.coeffs_.cols()) += other.coeffs_;
  return *this;
}

TorusSymbol& TorusSymbol::operator-=(const TorusSymbol& other) {
  grow(std::max(kx_max_, other.kx_max_), std::max(kxi_max_, other.kxi_max_));
  coeffs_.block(kx_max_ - other.kx_max_, kxi_max_ - other.kxi_max_, other.coeffs_.rows(),
                other.coeffs_.cols()) -= other.coeffs_;
  return *this;
}

TorusSymbol& TorusSymbol::operator*=(std::complex<double> s) {
  coeffs_ *= s;
  return *this;
}

TorusSymbol operator+(TorusSymbol a, const TorusSymbol& b) { return a += b; }
TorusSymbol operator-(TorusSymbol a, const TorusSymbol& b) { return a -= b; }
TorusSymbol operator*(std::complex<double> s, TorusSymbol a) { return a *= s; }

TorusSymbol operator*(const TorusSymbol& a, const TorusSymbol& b) {
  TorusSymbol out(a.kx_max() + b.kx_max(), a.kxi_max() + b.kxi_max());
  ComplexMatrix c = ComplexMatrix::Zero(out.coeffs().rows(), out.coeffs().cols());
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  // Offsets cancel: (k1 + Kxa) + (k2 + Kxb) = (k1 + k2) + Kx_out.
  for (Eigen::Index i1 = 0; i1 < ca.rows(); ++i1) {
    for (Eigen::Index j1 = 0; j1 < ca.cols(); ++j1) {
      const std::complex<double> v = ca(i1, j1);
      if (v == std::complex<double>{}) continue;
      c.block(i1, j1, cb.rows(), cb.cols()) += v * cb;
    }
  }
  return TorusSymbol(std::move(c));
}

std::complex<double> eval(const TorusSymbol& a, double x, double xi) {
  const auto ex = phase_table(a.kx_max(), x);
  const auto exi = phase_table(a.kxi_max(), xi);
  std::complex<double> acc{};
  const auto& c = a.coeffs();
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    std::complex<double> row{};
    for (Eigen::Index j = 0; j < c.cols(); ++j) row += c(i, j) * exi[static_cast<std::size_t>(j)];
    acc += row * ex[static_cast<std::size_t>(i)];
  }
  return acc;
}

TorusSymbol poisson_bracket(const TorusSymbol& a, const TorusSymbol& b) {
  return a.d_xi() * b.d_x() - a.d_x() * b.d_xi();
}

double sup_norm(const TorusSymbol& a, int samples_per_axis) {
  if (samples_per_axis <= 0) throw InvalidArgument("sup_norm: samples_per_axis must be positive");
  double best = 0.0;
  for (int i = 0; i < samples_per_axis; ++i) {
    for (int j = 0; j < samples_per_axis; ++j) {
      best = std::max(best, std::abs(eval(a, double(i) / samples_per_axis, double(j) / samples_per_axis)));
    }
  }
  return best;
}

SampledSymbol sample(const TorusSymbol& a, int M) {
  return sample([&a](double x, double xi) { return eval(a, x, xi); }, M);
}

SampledSymbol sample(const std::function<std::complex<double>(double, double)>& f, int M) {
  if (M <= 0 || !is_power_of_two(static_cast<std::size_t>(M))) {
    throw InvalidArgument("sample: M must be a power of two");
  }
  SampledSymbol out{ComplexMatrix(M, M)};
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) out.grid(i, j) = f(double(i) / M, double(j) / M);
  }
  return out;
}

TorusSymbol truncate(const SampledSymbol& a, int K, double prune_tol) {
  const int M = a.M();
  if (M <= 0) throw EmptyInput("truncate: empty sample grid");
  if (K < 0) K = M / 4;
  if (2 * K >= M) throw InvalidArgument("truncate: K must be below M / 2");

  // 2D forward transform: along x (columns), then along xi.
  ComplexMatrix g = a.grid;
  dft_columns(g);
  ComplexMatrix gt = g.transpose();
  dft_columns(gt);
  g = gt.transpose() / (double(M) * double(M));

  TorusSymbol out(K, K);
  double largest = 0.0;
  for (int k = -K; k <= K; ++k) {
    for (int q = -K; q <= K; ++q) {
      const auto v = g((k + M) % M, (q + M) % M);
      out.coeff_ref(k, q) = v;
      largest = std::max(largest, std::abs(v));
    }
  }
  const double cutoff = prune_tol * largest;
  for (int k = -K; k <= K; ++k) {
    for (int q = -K; q <= K; ++q) {
      if (std::abs(out.coeff(k, q)) < cutoff) out.coeff_ref(k, q) = 0.0;
    }
  }
  return out;
}

SampledSymbol pullback_split_flow(const TorusSymbol& a, const TorusSymbol& generator, double t, int M) {
  const bool on_x = generator.depends_on_x();
  const bool on_xi = generator.depends_on_xi();
  if (on_x && on_xi) throw NotSplit("pullback_split_flow: generator depends on both x and xi");

  if (M <= 0 || !is_power_of_two(static_cast<std::size_t>(M))) {
    throw InvalidArgument("pullback_split_flow: M must be a power of two");
  }
  if (!on_x && !on_xi) return sample(a, M);

  // The displacement depends on one coordinate only; tabulate it per grid line.
  const TorusSymbol slope = on_x ? generator.d_x() : generator.d_xi();
  std::vector<double> shift(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) {
    const double u = double(i) / M;
    shift[static_cast<std::size_t>(i)] = t * (on_x ? eval(slope, u, 0.0) : eval(slope, 0.0, u)).real();
  }

  SampledSymbol out{ComplexMatrix(M, M)};
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      const double x = double(i) / M;
      const double xi = double(j) / M;
      if (on_x) {
        // phi_t(x, xi) = (x, xi - t b'(x))
        out.grid(i, j) = eval(a, x, wrap_unit(xi - shift[static_cast<std::size_t>(i)]));
      } else {
        // phi_t(x, xi) = (x + t b'(xi), xi)
        out.grid(i, j) = eval(a, wrap_unit(x + shift[static_cast<std::size_t>(j)]), xi);
      }
    }
  }
  return out;
}

}  // namespace trotterlab
