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

// Discrete Fourier transforms and circulant diagonalization.
//
// Convention (the only one used anywhere in the library):
//   forward  (F v)_k    = sum_j v_j exp(-2 pi i k j / N)          (unnormalized)
//   inverse  (F^-1 w)_j = (1/N) sum_k w_k exp(+2 pi i k j / N)
// Bins are kept in native order [0, 1, ..., N/2-1, -N/2, ..., -1].

#ifndef TROTTERLAB_FOURIER_HPP
#define TROTTERLAB_FOURIER_HPP

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "trotterlab/errors.hpp"
#include "trotterlab/numkit.hpp"

namespace trotterlab {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Precomputed twiddles for one transform length. Power-of-two lengths run an
/// iterative radix-2 transform; any other length falls back to the O(N^2) sum.
template <typename Real>
class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n), radix2_(is_power_of_two(n)), roots_(n) {
    if (n == 0) throw EmptyInput("FftPlan: zero length");
    for (std::size_t k = 0; k < n; ++k) {
      const Real angle = -Real(2) * std::numbers::pi_v<Real> * Real(k) / Real(n);
      roots_[k] = {std::cos(angle), std::sin(angle)};
    }
    if (radix2_) {
      bitrev_.resize(n);
      std::size_t bits = 0;
      while ((std::size_t{1} << bits) < n) ++bits;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
        bitrev_[i] = r;
      }
    } else {
      scratch_.resize(n);
    }
  }

  std::size_t size() const { return n_; }

  void forward(std::complex<Real>* data) const { transform(data, false); }

  /// Inverse transform including the 1/N factor.
  void inverse(std::complex<Real>* data) const {
    transform(data, true);
    const Real scale = Real(1) / Real(n_);
    for (std::size_t i = 0; i < n_; ++i) data[i] *= scale;
  }

 private:
  void transform(std::complex<Real>* data, bool inverse) const {
    if (!radix2_) {
      naive(data, inverse);
      return;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t step = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          std::complex<Real> w = roots_[k * step];
          if (inverse) w = std::conj(w);
          const std::complex<Real> u = data[start + k];
          const std::complex<Real> v = data[start + k + half] * w;
          data[start + k] = u + v;
          data[start + k + half] = u - v;
        }
      }
    }
  }

  void naive(std::complex<Real>* data, bool inverse) const {
    for (std::size_t k = 0; k < n_; ++k) {
      std::complex<Real> acc{};
      for (std::size_t j = 0; j < n_; ++j) {
        std::complex<Real> w = roots_[(k * j) % n_];
        if (inverse) w = std::conj(w);
        acc += data[j] * w;
      }
      scratch_[k] = acc;
    }
    std::copy(scratch_.begin(), scratch_.end(), data);
  }

  std::size_t n_;
  bool radix2_;
  std::vector<std::complex<Real>> roots_;
  std::vector<std::size_t> bitrev_;
  mutable std::vector<std::complex<Real>> scratch_;
};

/// Per-thread plan cache; plans are immutable apart from naive-path scratch.
template <typename Real>
const FftPlan<Real>& fft_plan(std::size_t n) {
  thread_local std::map<std::size_t, FftPlan<Real>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, FftPlan<Real>(n)).first;
  return it->second;
}

template <typename Derived>
auto dft(const Eigen::MatrixBase<Derived>& v) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (v.size() == 0) throw EmptyInput("dft: empty input");
  CVector<Real> out = v;
  fft_plan<Real>(static_cast<std::size_t>(out.size())).forward(out.data());
  return out;
}

template <typename Derived>
auto idft(const Eigen::MatrixBase<Derived>& v) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (v.size() == 0) throw EmptyInput("idft: empty input");
  CVector<Real> out = v;
  fft_plan<Real>(static_cast<std::size_t>(out.size())).inverse(out.data());
  return out;
}

/// Forward transform of every column, in place.
template <typename Real>
void dft_columns(CMatrix<Real>& m) {
  if (m.rows() == 0) return;
  const auto& plan = fft_plan<Real>(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) plan.forward(m.col(c).data());
}

/// Inverse transform of every column, in place.
template <typename Real>
void idft_columns(CMatrix<Real>& m) {
  if (m.rows() == 0) return;
  const auto& plan = fft_plan<Real>(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) plan.inverse(m.col(c).data());
}

/// Dense N x N forward transform matrix.
template <typename Real = double>
CMatrix<Real> dft_matrix(Eigen::Index n) {
  CMatrix<Real> f = CMatrix<Real>::Identity(n, n);
  dft_columns(f);
  return f;
}

/// Dense N x N inverse transform matrix.
template <typename Real = double>
CMatrix<Real> idft_matrix(Eigen::Index n) {
  CMatrix<Real> f = CMatrix<Real>::Identity(n, n);
  idft_columns(f);
  return f;
}

/// Circulant matrix with the given first column, assembled as
/// F^-1 diag(F c) F.
template <typename Derived>
auto circulant(const Eigen::MatrixBase<Derived>& first_column) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (first_column.size() == 0) throw EmptyInput("circulant: empty first column");
  const CVector<Real> eigenvalues = dft(first_column);
  const Eigen::Index n = eigenvalues.size();
  CMatrix<Real> m = CMatrix<Real>::Identity(n, n);
  dft_columns(m);
  m = eigenvalues.asDiagonal() * m;
  idft_columns(m);
  return m;
}

/// An operator diagonal either in position space or in the Fourier basis.
template <typename Real>
struct FactoredOperator {
  enum class Kind { PositionDiagonal, FourierDiagonal };

  Kind kind = Kind::PositionDiagonal;
  CVector<Real> diag;

  static FactoredOperator position(CVector<Real> d) { return {Kind::PositionDiagonal, std::move(d)}; }
  static FactoredOperator fourier(CVector<Real> d) { return {Kind::FourierDiagonal, std::move(d)}; }

  Eigen::Index dim() const { return diag.size(); }

  /// Dense form: diag(d) or F^-1 diag(d) F.
  CMatrix<Real> materialize() const {
    CMatrix<Real> m = CMatrix<Real>::Identity(dim(), dim());
    apply_columns(m);
    return m;
  }

  /// Left-multiplies every column of m by this operator, in place.
  void apply_columns(CMatrix<Real>& m) const {
    if (m.rows() != dim()) {
      throw DimensionMismatch("FactoredOperator: operator dim " + std::to_string(dim()) +
                              " vs " + std::to_string(m.rows()) + " rows");
    }
    if (kind == Kind::PositionDiagonal) {
      m = diag.asDiagonal() * m;
      return;
    }
    dft_columns(m);
    m = diag.asDiagonal() * m;
    idft_columns(m);
  }

  FactoredOperator adjoint() const { return {kind, diag.conjugate()}; }

  /// exp(i theta D) for a real diagonal D, staying in factored form.
  FactoredOperator exp_i(Real theta) const {
    CVector<Real> d(dim());
    for (Eigen::Index i = 0; i < dim(); ++i) d(i) = std::polar(Real(1), theta * diag(i).real());
    return {kind, std::move(d)};
  }
};

template <typename Real, typename Derived>
CVector<Real> apply_factored(const FactoredOperator<Real>& op, const Eigen::MatrixBase<Derived>& v) {
  if (v.size() != op.dim()) {
    throw DimensionMismatch("apply_factored: operator dim " + std::to_string(op.dim()) +
                            " vs vector length " + std::to_string(v.size()));
  }
  CMatrix<Real> m = v;
  op.apply_columns(m);
  return m.col(0);
}

}  // namespace trotterlab

#endif  // TROTTERLAB_FOURIER_HPP
