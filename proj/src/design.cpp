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

#include "fadecs/design.hpp"

#include <cmath>
#include <stdexcept>

namespace fadecs::design {

double DesignProblem::gamma_bar() const {
    if (!e_per_node) return 1.0;
    return std::min(1.0, *e_per_node / sigma_a2);
}

void DesignProblem::validate() const {
    if (nu.size() == 0) throw std::invalid_argument("DesignProblem: nu must be nonempty");
    for (Eigen::Index j = 0; j < nu.size(); ++j) {
        if (!(nu[j] > 0.0))
            throw std::invalid_argument("DesignProblem: Rayleigh scales must be positive");
    }
    if (!(sigma_a2 > 0.0))
        throw std::invalid_argument("DesignProblem: sigma_a2 must be positive");
    if (e_per_node && !(*e_per_node > 0.0))
        throw std::invalid_argument("DesignProblem: energy cap must be positive");
    if (!(gamma_bar() > 0.0))
        throw std::invalid_argument("DesignProblem: gamma_bar must be positive");
}

double psi(const Eigen::VectorXd& gamma, const Eigen::VectorXd& nu) {
    if (gamma.size() != nu.size() || gamma.size() == 0)
        throw std::invalid_argument("psi: gamma and nu must have equal nonzero length");
    double max_gn = 0.0;
    double min_gn = std::numeric_limits<double>::infinity();
    double max_n = 0.0;
    for (Eigen::Index j = 0; j < nu.size(); ++j) {
        if (!(gamma[j] > 0.0 && gamma[j] <= 1.0))
            throw std::invalid_argument("psi: gamma_j must lie in (0,1]");
        if (!(nu[j] > 0.0)) throw std::invalid_argument("psi: nu_j must be positive");
        const double n2 = nu[j] * nu[j];
        const double gn = gamma[j] * n2;
        max_gn = std::max(max_gn, gn);
        min_gn = std::min(min_gn, gn);
        max_n = std::max(max_n, n2);
    }
    return std::sqrt(max_gn * max_n / (min_gn * min_gn));
}

Eigen::VectorXd optimal_gamma(const DesignProblem& problem) {
    problem.validate();
    const double gbar = problem.gamma_bar();
    const double nu0_sq = problem.nu.minCoeff() * problem.nu.minCoeff();
    Eigen::VectorXd gamma(problem.nu.size());
    for (Eigen::Index j = 0; j < problem.nu.size(); ++j) {
        gamma[j] = gbar * nu0_sq / (problem.nu[j] * problem.nu[j]);
    }
    return gamma;
}

double required_energy(double m, double gamma, int n, double sigma_a2) {
    if (!(m > 0.0) || n < 1 || !(sigma_a2 > 0.0))
        throw std::invalid_argument("required_energy: m, n, sigma_a2 must be positive");
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("required_energy: gamma must lie in [0,1]");
    return m * gamma * n * sigma_a2;
}

double max_gamma_under_budget(double e_bar, double c0, double sigma_a2, int k,
                              int n, double epsilon) {
    if (!(e_bar > 0.0) || !(c0 > 0.0) || !(sigma_a2 > 0.0) || k < 1 || n < 1)
        throw std::invalid_argument("max_gamma_under_budget: inputs must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("max_gamma_under_budget: epsilon must lie in (0,1)");
    const double sqrt_gamma =
        std::min(1.0, e_bar / (c0 * sigma_a2 * k * n * std::log(2.0 * n / epsilon)));
    return sqrt_gamma * sqrt_gamma;
}

}  // namespace fadecs::design
