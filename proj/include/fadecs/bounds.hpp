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
#include <string>

#include "fadecs/model.hpp"
#include "fadecs/stats.hpp"

namespace fadecs::bounds {

/// Inputs of the nonuniform-recovery measurement bound.
struct BoundInputs {
    int k = 1;                        // sparsity, >= 1
    int n = 1;                        // signal dimension / node count
    double epsilon = 0.01;            // support-failure budget, in (0,1)
    double epsilon_prime = 0.01;      // conditioning-failure budget, in (0,1)
    double c_prime = 1.0;             // absolute constant, configurable knob
    stats::EnsembleExtremes extremes{1.0, 1.0, 1.0, 1.0};
    // Peak-to-total energy ratio of the certificate vector. When absent, the
    // analytic sqrt(k/2M) estimate is used with a two-pass fixed point.
    std::optional<double> r_ratio;

    void validate() const;
};

/// Evaluated measurement-count requirements plus the fading penalty factors.
struct BoundReport {
    double m1 = 0.0;
    double m2 = 0.0;
    double m_required = 0.0;          // max(m1, m2); callers ceil to integers
    bool m1_dominates = false;        // dominance test on the scaling terms
    double c1 = 0.0;                  // nu_max^2 / nu_min^2 (sparse, matched gamma)
    double c2 = 0.0;                  // c1^2 (dense projections)
    double psi = 0.0;                 // inhomogeneity factor of the M2 scaling
    double r_used = 0.0;              // R value the M2 evaluation used
    std::string scaling_notes;
};

BoundReport theorem1_bounds(const BoundInputs& in);

/// Analytic peak-to-total energy estimate sqrt(k/2M), clamped to (0,1].
double estimate_r_analytic(int k, int m);

/// Empirical ratio ||b_S||_inf / ||b_S||_2 with
/// b_S = (B_S^+)^T sgn(x^S) computed from a realized matrix.
double estimate_r_empirical(const Eigen::MatrixXd& b_matrix,
                            const model::SparseSignal& x);

/// M = C0 * (k / sqrt(gamma)) * ln(2N/eps), the identical-channel bound.
double corollary_iid_bound(int k, int n, double gamma, double epsilon, double c0);

enum class KMode { sublinear, linear };
enum class Coupling { gamma_k_const, gamma_k_linear };

/// A row of the gamma*k regime table: the symbolic scaling of M plus a
/// numeric evaluator. The coupling parameter is tau0 for the constant
/// coupling (unused by the scaling) and eps_tilde in (0, k/N) for the
/// linear coupling.
struct RegimeScaling {
    KMode k_mode;
    Coupling coupling;
    std::string formula;

    double evaluate(int k, int n, double coupling_param = 0.0) const;
};

RegimeScaling table1_regime(KMode k_mode, Coupling coupling);

/// The general sub-exponential measurement bound:
/// (1/lambda_min) (sqrt(k)/beta1 + sqrt(T0 ln(k/eps1') / c1'))^2 with
/// beta1 = min((1/rho_max) sqrt(c1/L), c1/(rho_max R1 L)), L = ln(2N/eps1).
double general_subexp_bound(int k, int n, double lambda_min, double rho_max,
                            double t0, double r1, double eps1, double eps1_prime,
                            double c1, double c1_prime);

/// Predicted extreme-singular-value envelope for a matrix with independent
/// rows of common second moment, ||Sigma||^(1/2) sqrt(M) -/+ t sqrt(T0),
/// checked against the realized extremes.
struct SingularValueEnvelope {
    double s_min_pred;
    double s_max_pred;
    double s_min_obs;
    double s_max_obs;
    bool holds;
};

SingularValueEnvelope singular_value_envelope(const Eigen::MatrixXd& rows,
                                              const Eigen::MatrixXd& second_moment,
                                              double t0, double t);

}  // namespace fadecs::bounds
