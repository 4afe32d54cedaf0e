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

// Exact and split-step propagators for H = A + B and the Heisenberg-picture
// observables T(t) = U^dagger O U they generate.

#ifndef TROTTERLAB_EVOLVE_HPP
#define TROTTERLAB_EVOLVE_HPP

#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "trotterlab/hamiltonian.hpp"
#include "trotterlab/numkit.hpp"

namespace trotterlab {

enum class SplittingScheme { Lie1, Strang2 };

std::string_view to_string(SplittingScheme scheme);
/// Accepts "lie1" / "strang2" (case-sensitive).
SplittingScheme parse_scheme(std::string_view name);

struct EvolutionPlan {
  SplittingScheme scheme = SplittingScheme::Strang2;
  double s = 0.1;
  long n = 1;
  double h = 1.0;

  double t() const { return static_cast<double>(n) * s; }
};

/// e^{-iHt/h}.
ComplexMatrix exact_unitary(const ComplexMatrix& H, double t, double h);
ComplexMatrix exact_unitary(const EigenSystem<double>& H, double t, double h);

/// Caches the eigendecomposition of H so that several times share it.
class ExactPropagator {
 public:
  ExactPropagator(const ComplexMatrix& H, double h);

  ComplexMatrix unitary(double t) const;
  /// U^dagger O U with U = e^{-iHt/h}.
  ComplexMatrix heisenberg(const ComplexMatrix& O, double t) const;
  double h() const { return h_; }

 private:
  EigenSystem<double> sys_;
  double h_;
};

/// One split step as an ordered product of factors, leftmost first.
class TrotterStep {
 public:
  using Factor = std::variant<FactoredOperator<double>, ComplexMatrix>;

  TrotterStep(const HamiltonianPair& pair, SplittingScheme scheme, double s, double h);

  /// m <- U m.
  void apply_columns(ComplexMatrix& m) const;
  /// m <- U^dagger m.
  void apply_adjoint_columns(ComplexMatrix& m) const;
  ComplexMatrix unitary() const;
  Eigen::Index dim() const { return dim_; }

 private:
  std::vector<Factor> factors_;
  Eigen::Index dim_ = 0;
};

ComplexMatrix trotter_step_unitary(const HamiltonianPair& pair, SplittingScheme scheme, double s, double h);

/// Same product from dense eigendecompositions of A and B; a cross-check path.
ComplexMatrix trotter_step_unitary_dense(const HamiltonianPair& pair, SplittingScheme scheme, double s, double h);

ComplexMatrix heisenberg_exact(const ComplexMatrix& O, const ComplexMatrix& H, double t, double h);

/// Receives (step index k >= 1, T after k conjugations).
using StepObserver = std::function<void(long, const ComplexMatrix&)>;

/// W^dagger O W with W = U^n, by n successive conjugations T <- U^dagger T U.
ComplexMatrix heisenberg_trotter(const ComplexMatrix& O, const HamiltonianPair& pair, const EvolutionPlan& plan,
                                 const StepObserver& observer = {});

double observable_error(const ComplexMatrix& O, const HamiltonianPair& pair, const EvolutionPlan& plan);
double observable_error(const ComplexMatrix& O, const HamiltonianPair& pair, const EvolutionPlan& plan,
                        const ExactPropagator& exact);

/// U^n applied to the identity through the factored step.
ComplexMatrix trotter_unitary_power(const HamiltonianPair& pair, const EvolutionPlan& plan);

double unitary_error(const HamiltonianPair& pair, const EvolutionPlan& plan);
double unitary_error(const HamiltonianPair& pair, const EvolutionPlan& plan, const ExactPropagator& exact);

/// Normalized samples of (pi h)^{-1/4} exp(-(x - x0)^2 / (2h)) exp(i p0 (x - x0) / h).
ComplexVector gaussian_wavepacket(const GridSpec& grid, double x0, double p0, double h);

/// |<psi|X|psi> - <psi|Y|psi>|.
double expectation_gap(const ComplexMatrix& X, const ComplexMatrix& Y, const ComplexVector& psi);

double expectation_error(const ComplexMatrix& O, const HamiltonianPair& pair, const EvolutionPlan& plan,
                         const ComplexVector& psi);

}  // namespace trotterlab

#endif  // TROTTERLAB_EVOLVE_HPP
