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
#include <span>

#include "fadecs/model.hpp"

namespace fadecs::stats {

/// Law of one effective-matrix entry: a Laplace(sigma_bar) component with
/// mass gamma plus a point mass 1-gamma at zero.
struct MixtureLaw {
    double gamma;       // activation probability, in (0,1]
    double sigma_bar;   // Laplace scale sigma_j * nu_j, > 0

    MixtureLaw(double gamma, double sigma_bar);
};

/// The four scale extremes that drive every bound:
/// eta = gamma * sigma_bar^2, eta_tilde = sigma_bar.
struct EnsembleExtremes {
    double eta_max;
    double eta_min;
    double eta_tilde_max;
    double eta_tilde_min;

    EnsembleExtremes(double eta_max, double eta_min, double eta_tilde_max,
                     double eta_tilde_min);

    static EnsembleExtremes from_config(const model::NetworkConfig& cfg);
    static EnsembleExtremes from_vectors(const Eigen::VectorXd& gamma,
                                         const Eigen::VectorXd& sigma_bar);
};

/// Density of w = h*a, h ~ Rayleigh(nu_h), a ~ N(0, sigma_a^2):
/// Laplace with scale sigma_a * nu_h.
double laplace_product_pdf(double w, double sigma_a, double nu_h);

/// Closed-form Laplace CDF, used by the Kolmogorov-Smirnov checks.
double laplace_cdf(double w, double scale);

/// P(|u| > t) for the mixture law: 1 at t=0, gamma * exp(-t/sigma_bar) for t>0.
double mixture_tail(double t, const MixtureLaw& law);

/// Exact moment generating function of the mixture law,
/// 1 + gamma sigma_bar^2 t^2 / (1 - sigma_bar^2 t^2), valid for |t| < 1/sigma_bar.
double mgf_exact(double t, const MixtureLaw& law);

/// The exp(eta_max t^2) envelope, defined for |t| <= 1/eta_tilde_max. Derived
/// through a truncated series, so it is only guaranteed to dominate mgf_exact
/// away from the boundary; see the property tests, which restrict to
/// |t| <= 0.5/sigma_bar.
double mgf_bound(double t, const EnsembleExtremes& extremes);

struct TailBound {
    double raw;       // 2 exp(-min(...)), may exceed 1
    double clamped;   // min(raw, 1)
};

/// Bernstein-type bound on P(|sum_i alpha_i u_i| >= t) for independent
/// mixture variables.
TailBound bernstein_bound(double t, std::span<const double> alpha,
                          const EnsembleExtremes& extremes);

/// Empirical sub-exponential norm: max over p in [1, p_max] of
/// (mean |x|^p)^(1/p) / p.
double subexp_norm_estimate(std::span<const double> samples, int p_max);

}  // namespace fadecs::stats
