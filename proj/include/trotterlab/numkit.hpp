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

// Dense complex linear algebra used by every other module: Hermitian
// eigendecompositions, exponentials of Hermitian generators, spectral norms
// and Kronecker sums. All routines are templated on the real scalar and accept
// arbitrary Eigen expressions.

#ifndef TROTTERLAB_NUMKIT_HPP
#define TROTTERLAB_NUMKIT_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <complex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "trotterlab/errors.hpp"

namespace trotterlab {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;

/// Eigenvalues in ascending order with the matching unitary eigenvector
/// columns.
template <typename Real>
struct EigenSystem {
  RVector<Real> eigenvalues;
  CMatrix<Real> eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }
};

/// Default cap on the dimension produced by kron_sum.
inline constexpr Eigen::Index kDefaultKronCap = 4096;

/// Relative Hermiticity tolerance used by hermitian_eig and expm_hermitian.
inline constexpr double kHermitianTolerance = 1e-10;

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* op) {
  if (!m.allFinite()) throw NonFinite(std::string(op) + ": matrix has NaN/Inf entries");
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* op) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(op) + ": matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
}

}  // namespace detail

/// Frobenius norm of the anti-Hermitian part, M - M^dagger.
template <typename Derived>
auto hermitian_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).norm();
}

/// True when ||M - M^dagger||_F <= rel_tol * ||M||_F.
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double rel_tol = kHermitianTolerance) {
  if (m.rows() != m.cols()) return false;
  return hermitian_defect(m) <= rel_tol * m.norm();
}

template <typename Derived>
auto hermitian_eig(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  detail::require_square(m, "hermitian_eig");
  detail::require_finite(m, "hermitian_eig");
  if (!is_hermitian(m)) throw NonHermitian("hermitian_eig: input is not Hermitian");

  const CMatrix<Real> input = m;
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(input, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NonFinite("hermitian_eig: solver did not converge");

  // Eigen returns ascending values; the stable pass pins the tie order.
  const Eigen::Index n = input.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& values = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });

  EigenSystem<Real> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = values(order[static_cast<std::size_t>(i)]);
    out.eigenvectors.col(i) = solver.eigenvectors().col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// e^{i theta M} from a precomputed eigensystem: V diag(e^{i theta lambda}) V^dagger.
template <typename Real>
CMatrix<Real> expm_hermitian(const EigenSystem<Real>& sys, Real theta) {
  CVector<Real> phases(sys.dim());
  for (Eigen::Index i = 0; i < sys.dim(); ++i) {
    phases(i) = std::polar(Real(1), theta * sys.eigenvalues(i));
  }
  return sys.eigenvectors * phases.asDiagonal() * sys.eigenvectors.adjoint();
}

template <typename Derived>
auto expm_hermitian(const Eigen::MatrixBase<Derived>& m,
                    typename Eigen::NumTraits<typename Derived::Scalar>::Real theta) {
  return expm_hermitian(hermitian_eig(m), theta);
}

/// Largest singular value. Hermitian input goes through the eigenvalue-only
/// path; everything else through a bidiagonal SVD.
template <typename Derived>
auto spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  detail::require_finite(m, "spectral_norm");
  if (m.size() == 0) return Real(0);
  const CMatrix<Real> a = m;
  if (a.rows() == a.cols() && hermitian_defect(a) <= Real(1e-12) * a.norm()) {
    const CMatrix<Real> sym = (a + a.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<CMatrix<Real>> svd(a);
  return svd.singularValues()(0);
}

/// Sum over j of I (x) ... (x) blocks[j] (x) ... (x) I, with block j acting on
/// tensor slot j (slot 0 is the most significant index).
template <typename Real>
CMatrix<Real> kron_sum(std::span<const CMatrix<Real>> blocks,
                       Eigen::Index cap = kDefaultKronCap) {
  if (blocks.empty()) throw EmptyInput("kron_sum: no blocks");
  Eigen::Index total = 1;
  for (const auto& b : blocks) {
    detail::require_square(b, "kron_sum");
    if (b.rows() == 0) throw EmptyInput("kron_sum: empty block");
    if (total > cap / b.rows()) {
      throw DimensionOverflow("kron_sum: product dimension exceeds cap " + std::to_string(cap));
    }
    total *= b.rows();
  }
  if (total > cap) {
    throw DimensionOverflow("kron_sum: product dimension exceeds cap " + std::to_string(cap));
  }

  CMatrix<Real> out = CMatrix<Real>::Zero(total, total);
  Eigen::Index left = 1;
  for (const auto& b : blocks) {
    const Eigen::Index n = b.rows();
    const Eigen::Index right = total / (left * n);
    for (Eigen::Index l = 0; l < left; ++l) {
      for (Eigen::Index r = 0; r < right; ++r) {
        for (Eigen::Index i = 0; i < n; ++i) {
          for (Eigen::Index j = 0; j < n; ++j) {
            out((l * n + i) * right + r, (l * n + j) * right + r) += b(i, j);
          }
        }
      }
    }
    left *= n;
  }
  return out;
}

template <typename Real>
CMatrix<Real> kron_sum(const std::vector<CMatrix<Real>>& blocks,
                       Eigen::Index cap = kDefaultKronCap) {
  return kron_sum(std::span<const CMatrix<Real>>(blocks), cap);
}

/// ||U^dagger U - I||_2, the unitarity defect.
template <typename Derived>
auto unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Mat g = u.adjoint() * u - Mat::Identity(u.cols(), u.cols());
  return spectral_norm(g);
}

}  // namespace trotterlab

#endif  // TROTTERLAB_NUMKIT_HPP
