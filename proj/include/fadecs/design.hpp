// fadecs - sparse signal recovery over fading multiple-access channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <optional>

namespace fadecs::design {

/// Transmission-probability design problem: Rayleigh scales per node plus a
/// common amplitude variance and energy cap. Heterogeneous per-node caps are
/// out of scope and rejected.
struct DesignProblem {
    Eigen::VectorXd nu;                 // Rayleigh scales, caller order
    double sigma_a2 = 1.0;              // common amplitude variance
    std::optional<double> e_per_node;   // common average-power cap E
    std::optional<double> e_total;      // network budget, informational

    /// gamma_bar = min(1, E / sigma_a2); 1 when no cap is set.
    double gamma_bar() const;

    void validate() const;
};

/// The inhomogeneity factor of the sparse-projection measurement bound:
/// sqrt( max_j(gamma_j nu_j^2) * max_j(nu_j^2) / min_j(gamma_j nu_j^2)^2 ).
double psi(const Eigen::VectorXd& gamma, const Eigen::VectorXd& nu);

/// The fading-matched probabilities gamma_j = gamma_bar * nu_min^2 / nu_j^2,
/// returned in the caller's node order. These equalize gamma_j nu_j^2 and
/// minimize psi over all feasible gamma.
Eigen::VectorXd optimal_gamma(const DesignProblem& problem);

/// Average network energy of a sweep: M * gamma * N * sigma_a2.
double required_energy(double m, double gamma, int n, double sigma_a2);

/// Largest common gamma whose required energy fits the budget:
/// (min(1, E_bar / (C0 sigma_a2 k N ln(2N/eps))))^2.
double max_gamma_under_budget(double e_bar, double c0, double sigma_a2, int k,
                              int n, double epsilon);

}  // namespace fadecs::design
