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
#include <vector>

#include "fadecs/rng.hpp"

namespace fadecs::model {

/// A k-sparse vector together with its support set and sign pattern.
struct SparseSignal {
    Eigen::VectorXd values;        // length N, zero off the support
    std::vector<int> support;      // ascending indices of the nonzeros

    int size() const { return static_cast<int>(values.size()); }
    int sparsity() const { return static_cast<int>(support.size()); }

    /// sgn(x^S): the +/-1 pattern of the nonzeros, in support order.
    Eigen::VectorXd sign_pattern() const;

    /// Checks values[i] != 0 <=> i in support; throws on violation.
    void validate() const;
};

/// Per-node network parameters plus the problem dimensions.
///
/// gamma[j] is the probability that node j transmits in a given MAC slot,
/// sigma[j] the amplitude standard deviation of its projection coefficient,
/// nu[j] the Rayleigh scale of its channel (mean channel power 2 nu^2).
struct NetworkConfig {
    int n = 0;                     // node count == signal dimension
    int m = 0;                     // number of MAC transmissions
    Eigen::VectorXd gamma;         // length n, entries in (0,1]
    Eigen::VectorXd sigma;         // length n, > 0
    Eigen::VectorXd nu;            // length n, > 0
    double sigma_v2 = 0.0;         // receiver noise variance, >= 0
    std::optional<double> energy_cap;    // common per-node average-power cap E
    std::optional<double> total_energy;  // network budget

    /// sigma_bar[j] = sigma[j] * nu[j], the Laplace scale of an active entry.
    Eigen::VectorXd sigma_bar() const;

    void validate() const;

    /// Identical nodes: gamma_j = gamma, sigma_j^2 = sigma_a2, nu_j^2 = nu_h2.
    static NetworkConfig iid(int n, int m, double gamma, double sigma_a2,
                             double nu_h2, double sigma_v2 = 0.0);
};

/// One realized draw of the measurement model: projection matrix A, fading
/// matrix H, effective matrix B = H (.) A, and the received vector y = Bx + v.
struct MeasurementEnsemble {
    Eigen::MatrixXd A;             // M x N sparse Gaussian
    Eigen::MatrixXd H;             // M x N nonnegative fading amplitudes
    Eigen::MatrixXd B;             // Hadamard product H (.) A
    Eigen::VectorXd y;             // length M
    Eigen::VectorXd v;             // length M noise realization
    std::uint64_t seed = 0;        // seed of the generator that produced this
};

/// Draws a k-sparse signal: support uniform over k-subsets, magnitudes
/// uniform in [lo, hi], signs independent and fair.
SparseSignal generate_signal(int n, int k, double lo, double hi, Rng& rng);

/// Draws A, H, B and y under the fading model. The entry stream is fixed
/// (row-major, Bernoulli then Gaussian then Rayleigh per entry), so a given
/// (seed, cfg, x) always produces a bit-identical ensemble.
MeasurementEnsemble generate_ensemble(const SparseSignal& x,
                                      const NetworkConfig& cfg, Rng& rng);

/// AWGN baseline: same A and v stream as generate_ensemble but H is all
/// ones, B = A.
MeasurementEnsemble awgn_ensemble(const SparseSignal& x,
                                  const NetworkConfig& cfg, Rng& rng);

}  // namespace fadecs::model
