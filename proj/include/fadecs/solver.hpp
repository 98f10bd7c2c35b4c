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
#include <stdexcept>

#include "fadecs/model.hpp"

namespace fadecs::solver {

/// y cannot be met by any x (equality case) or the residual ball is empty
/// (noise-tolerant case).
class InfeasibleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SolverSettings {
    // Duality-gap target, relative to max(1, objective). The equality
    // program verifies it with a rigorous dual bound after a vertex polish.
    double gap_tolerance = 1e-8;
    int max_iterations = 50;            // outer primal-dual / Newton cap
    double backtrack_alpha = 0.01;      // sufficient-decrease fraction
    double backtrack_beta = 0.5;        // step shrink factor
    int max_line_search = 32;
    double regularization_floor = 1e-12;  // added to Newton systems on failure
    double exact_threshold = 1e-4;        // theta_rec: relative error counted as exact

    void validate() const;
};

enum class SolveStatus { converged, iteration_limit };

struct Certificate {
    bool holds = false;
    double max_correlation = 0.0;
};

struct RecoveryResult {
    Eigen::VectorXd x_hat;
    double relative_error = std::numeric_limits<double>::quiet_NaN();
    bool exact = false;
    std::optional<Certificate> certificate;
    int iterations = 0;
    double duality_gap = std::numeric_limits<double>::quiet_NaN();
    SolveStatus status = SolveStatus::converged;

    /// Fills relative_error = ||x - x_hat||_2 / ||x||_2 and the exact flag.
    void score_against(const Eigen::VectorXd& x_true, double theta_rec);
};

/// min ||x||_1 subject to Bx = y, solved by the log-barrier primal-dual
/// interior point method on the standard LP split form.
RecoveryResult basis_pursuit(const Eigen::MatrixXd& b_matrix, const Eigen::VectorXd& y,
                             const SolverSettings& settings = {});

/// min ||x||_1 subject to ||y - Bx||_2 <= eps_v, as a second-order cone
/// program solved with a log-barrier method. eps_v = 0 falls back to
/// basis_pursuit.
RecoveryResult bpdn(const Eigen::MatrixXd& b_matrix, const Eigen::VectorXd& y,
                    double eps_v, const SolverSettings& settings = {});

/// b_S = (B_S^+)^T sgn(x^S); throws if B_S is rank deficient at tolerance
/// 1e-10 * ||B_S||.
Eigen::VectorXd certificate_vector(const Eigen::MatrixXd& b_matrix,
                                   const model::SparseSignal& x);

/// The sufficient condition for x to be the unique l1 minimizer:
/// max over l outside the support of |<b_l, b_S>| < 1.
Certificate recovery_certificate(const Eigen::MatrixXd& b_matrix,
                                 const model::SparseSignal& x);

struct BruteForceInfo {
    bool unique = false;       // all residual-feasible supports at the winning
                               // size produce the same estimate
    int winning_size = -1;     // -1 when nothing fits the residual tolerance
    long supports_checked = 0;
};

/// Exhaustive ground-truth oracle for tiny instances: least-squares over
/// every support of size <= k_max, sparsest consistent support wins, ties
/// broken by smaller l1 norm then lexicographic support. Guarded to
/// N <= 20, k_max <= 3.
RecoveryResult brute_force_oracle(const Eigen::MatrixXd& b_matrix,
                                  const Eigen::VectorXd& y, int k_max,
                                  BruteForceInfo* info = nullptr);

/// ||x - x_hat||_2 / ||x||_2.
double relative_error(const Eigen::VectorXd& x_true, const Eigen::VectorXd& x_hat);

/// The noise-ball radius rule used for the noisy sweeps:
/// eps_v = sigma_v sqrt(M) sqrt(1 + 2 sqrt(2)/sqrt(M)).
double noise_ball_radius(double sigma_v, int m);

}  // namespace fadecs::solver
