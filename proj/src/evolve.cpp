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

#include "trotterlab/evolve.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace trotterlab {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

void require_plan(const EvolutionPlan& plan) {
  if (!(plan.s > 0.0) || !std::isfinite(plan.s)) throw InvalidArgument("EvolutionPlan: s must be positive");
  require_positive(plan.h, "EvolutionPlan: h");
  if (plan.n < 0) throw InvalidArgument("EvolutionPlan: n must be non-negative");
}

void require_hermitian(const ComplexMatrix& m, const char* op) {
  detail::require_square(m, op);
  if (!is_hermitian(m)) throw NonHermitian(std::string(op) + ": matrix is not Hermitian");
}

TrotterStep::Factor exp_factor(const SplitOperator& op, double theta) {
  if (op.factored) return op.factored->exp_i(theta);
  return expm_hermitian(op.dense, theta);
}

void apply_factor(const TrotterStep::Factor& f, ComplexMatrix& m, bool adjoint) {
  if (const auto* fo = std::get_if<FactoredOperator<double>>(&f)) {
    if (adjoint) {
      fo->adjoint().apply_columns(m);
    } else {
      fo->apply_columns(m);
    }
    return;
  }
  const auto& dense = std::get<ComplexMatrix>(f);
  if (adjoint) {
    m = dense.adjoint() * m;
  } else {
    m = dense * m;
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace

std::string_view to_string(SplittingScheme scheme) {
  return scheme == SplittingScheme::Lie1 ? "lie1" : "strang2";
}

SplittingScheme parse_scheme(std::string_view name) {
  if (name == "lie1") return SplittingScheme::Lie1;
  if (name == "strang2") return SplittingScheme::Strang2;
  throw InvalidArgument("unknown splitting scheme '" + std::string(name) + "'");
}

ComplexMatrix exact_unitary(const EigenSystem<double>& H, double t, double h) {
  require_positive(h, "exact_unitary: h");
  return expm_hermitian(H, -t / h);
}

ComplexMatrix exact_unitary(const ComplexMatrix& H, double t, double h) {
  require_positive(h, "exact_unitary: h");
  return exact_unitary(hermitian_eig(H), t, h);
}

ExactPropagator::ExactPropagator(const ComplexMatrix& H, double h) : sys_(hermitian_eig(H)), h_(h) {
  require_positive(h, "ExactPropagator: h");
}

ComplexMatrix ExactPropagator::unitary(double t) const { return exact_unitary(sys_, t, h_); }

ComplexMatrix ExactPropagator::heisenberg(const ComplexMatrix& O, double t) const {
  require_hermitian(O, "heisenberg_exact");
  if (O.rows() != sys_.dim()) throw DimensionMismatch("heisenberg_exact: observable and Hamiltonian differ in size");
  // In the eigenbasis: V diag(e^{i l t/h}) V^dagger O V diag(e^{-i l t/h}) V^dagger.
  const Eigen::Index n = sys_.dim();
  ComplexMatrix inner = sys_.eigenvectors.adjoint() * O * sys_.eigenvectors;
  ComplexVector phase(n);
  for (Eigen::Index i = 0; i < n; ++i) phase(i) = std::polar(1.0, sys_.eigenvalues(i) * t / h_);
  inner = phase.asDiagonal() * inner * phase.conjugate().asDiagonal();
  return hermitian_part(sys_.eigenvectors * inner * sys_.eigenvectors.adjoint());
}

TrotterStep::TrotterStep(const HamiltonianPair& pair, SplittingScheme scheme, double s, double h)
    : dim_(pair.kinetic.dim()) {
  require_positive(h, "TrotterStep: h");
  if (!std::isfinite(s)) throw InvalidArgument("TrotterStep: s must be finite");
  if (pair.potential.dim() != dim_) throw DimensionMismatch("TrotterStep: A and B differ in size");
  if (scheme == SplittingScheme::Lie1) {
    factors_.push_back(exp_factor(pair.potential, -s / h));
    factors_.push_back(exp_factor(pair.kinetic, -s / h));
  } else {
    Factor half_b = exp_factor(pair.potential, -s / (2.0 * h));
    factors_.push_back(half_b);
    factors_.push_back(exp_factor(pair.kinetic, -s / h));
    factors_.push_back(std::move(half_b));
  }
}

void TrotterStep::apply_columns(ComplexMatrix& m) const {
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) apply_factor(*it, m, false);
}

void TrotterStep::apply_adjoint_columns(ComplexMatrix& m) const {
  for (const auto& f : factors_) apply_factor(f, m, true);
}

ComplexMatrix TrotterStep::unitary() const {
  ComplexMatrix u = ComplexMatrix::Identity(dim_, dim_);
  apply_columns(u);
  return u;
}

ComplexMatrix trotter_step_unitary(const HamiltonianPair& pair, SplittingScheme scheme, double s, double h) {
  return TrotterStep(pair, scheme, s, h).unitary();
}

ComplexMatrix trotter_step_unitary_dense(const HamiltonianPair& pair, SplittingScheme scheme, double s, double h) {
  require_positive(h, "trotter_step_unitary_dense: h");
  const auto a = hermitian_eig(pair.kinetic.dense);
  const auto b = hermitian_eig(pair.potential.dense);
  if (scheme == SplittingScheme::Lie1) return expm_hermitian(b, -s / h) * expm_hermitian(a, -s / h);
  const ComplexMatrix half_b = expm_hermitian(b, -s / (2.0 * h));
  return half_b * expm_hermitian(a, -s / h) * half_b;
}

ComplexMatrix heisenberg_exact(const ComplexMatrix& O, const ComplexMatrix& H, double t, double h) {
  require_hermitian(H, "heisenberg_exact");
  return ExactPropagator(H, h).heisenberg(O, t);
}

ComplexMatrix heisenberg_trotter(const ComplexMatrix& O, const HamiltonianPair& pair, const EvolutionPlan& plan,
                                 const StepObserver& observer) {
  require_plan(plan);
  require_hermitian(O, "heisenberg_trotter");
  const TrotterStep step(pair, plan.scheme, plan.s, plan.h);
  if (O.rows() != step.dim()) throw DimensionMismatch("heisenberg_trotter: observable and step differ in size");
  ComplexMatrix T = O;
  ComplexMatrix work;
  for (long k = 1; k <= plan.n; ++k) {
    // U^dagger T U = (U^dagger (U^dagger T)^dagger)^dagger for Hermitian T.
    step.apply_adjoint_columns(T);
    work = T.adjoint();
    step.apply_adjoint_columns(work);
    T = work.adjoint();
    if (observer) observer(k, T);
  }
  return hermitian_part(T);
}

double observable_error(const ComplexMatrix& O, const HamiltonianPair& pair, const EvolutionPlan& plan,
                        const ExactPropagator& exact) {
  const ComplexMatrix trotter = heisenberg_trotter(O, pair, plan);
  return spectral_norm(trotter - exact.heisenberg(O, plan.t()));
}

double observable_error(const ComplexMatrix& O, const HamiltonianPair& pair, const EvolutionPlan& plan) {
  require_plan(plan);
  return observable_error(O, pair, plan, ExactPropagator(pair.hamiltonian(), plan.h));
}

ComplexMatrix trotter_unitary_power(const HamiltonianPair& pair, const EvolutionPlan& plan) {
  require_plan(plan);
  const TrotterStep step(pair, plan.scheme, plan.s, plan.h);
  ComplexMatrix w = ComplexMatrix::Identity(step.dim(), step.dim());
  for (long k = 0; k < plan.n; ++k) step.apply_columns(w);
  return w;
}

double unitary_error(const HamiltonianPair& pair, const EvolutionPlan& plan, const ExactPropagator& exact) {
  return spectral_norm(trotter_unitary_power(pair, plan) - exact.unitary(plan.t()));
}

double unitary_error(const HamiltonianPair& pair, const EvolutionPlan& plan) {
  require_plan(plan);
  return unitary_error(pair, plan, ExactPropagator(pair.hamiltonian(), plan.h));
}

ComplexVector gaussian_wavepacket(const GridSpec& grid, double x0, double p0, double h) {
  require_positive(h, "gaussian_wavepacket: h");
  if (grid.d != 1) throw InvalidArgument("gaussian_wavepacket: only d = 1 is supported");
  if (!(x0 > grid.a_dom && x0 < grid.b_dom)) throw InvalidArgument("gaussian_wavepacket: x0 outside the domain");
  const double norm = std::pow(std::numbers::pi * h, -0.25);
  const auto packet = [&](double x) {
    const double dx = x - x0;
    return norm * std::exp(-dx * dx / (2.0 * h)) * std::polar(1.0, p0 * dx / h);
  };
  const double edge = std::max(std::abs(packet(grid.a_dom)), std::abs(packet(grid.b_dom)));
  if (edge > 1e-8) {
    throw PacketTouchesBoundary("gaussian_wavepacket: boundary amplitude " + std::to_string(edge) +
                                " exceeds 1e-8");
  }
  ComplexVector psi(grid.N);
  for (int j = 0; j < grid.N; ++j) psi(j) = packet(grid.node(j));
  return psi / psi.norm();
}

double expectation_gap(const ComplexMatrix& X, const ComplexMatrix& Y, const ComplexVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw UnnormalizedState("expectation_error: state norm is not 1");
  if (X.rows() != psi.size() || Y.rows() != psi.size()) {
    throw DimensionMismatch("expectation_error: state and observable differ in size");
  }
  return std::abs(psi.dot((X - Y) * psi));
}

double expectation_error(const ComplexMatrix& O, const HamiltonianPair& pair, const EvolutionPlan& plan,
                         const ComplexVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw UnnormalizedState("expectation_error: state norm is not 1");
  require_plan(plan);
  const ExactPropagator exact(pair.hamiltonian(), plan.h);
  return expectation_gap(heisenberg_trotter(O, pair, plan), exact.heisenberg(O, plan.t()), psi);
}

}  // namespace trotterlab
