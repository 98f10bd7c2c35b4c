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

#include "fadecs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fadecs::stats {

MixtureLaw::MixtureLaw(double gamma_, double sigma_bar_)
    : gamma(gamma_), sigma_bar(sigma_bar_) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("MixtureLaw: gamma must lie in (0,1]");
    if (!(sigma_bar > 0.0))
        throw std::invalid_argument("MixtureLaw: sigma_bar must be positive");
}

EnsembleExtremes::EnsembleExtremes(double eta_max_, double eta_min_,
                                   double eta_tilde_max_, double eta_tilde_min_)
    : eta_max(eta_max_),
      eta_min(eta_min_),
      eta_tilde_max(eta_tilde_max_),
      eta_tilde_min(eta_tilde_min_) {
    if (!(eta_min > 0.0) || !(eta_tilde_min > 0.0))
        throw std::invalid_argument("EnsembleExtremes: scales must be positive");
    if (eta_min > eta_max || eta_tilde_min > eta_tilde_max)
        throw std::invalid_argument("EnsembleExtremes: min exceeds max");
}

EnsembleExtremes EnsembleExtremes::from_vectors(const Eigen::VectorXd& gamma,
                                                const Eigen::VectorXd& sigma_bar) {
    if (gamma.size() != sigma_bar.size() || gamma.size() == 0)
        throw std::invalid_argument("EnsembleExtremes: vector lengths must match and be nonzero");
    const Eigen::VectorXd eta = gamma.cwiseProduct(sigma_bar.cwiseAbs2());
    return EnsembleExtremes(eta.maxCoeff(), eta.minCoeff(), sigma_bar.maxCoeff(),
                            sigma_bar.minCoeff());
}

EnsembleExtremes EnsembleExtremes::from_config(const model::NetworkConfig& cfg) {
    return from_vectors(cfg.gamma, cfg.sigma_bar());
}

double laplace_product_pdf(double w, double sigma_a, double nu_h) {
    if (!(sigma_a > 0.0) || !(nu_h > 0.0))
        throw std::invalid_argument("laplace_product_pdf: scales must be positive");
    const double scale = sigma_a * nu_h;
    return 0.5 / scale * std::exp(-std::abs(w) / scale);
}

double laplace_cdf(double w, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("laplace_cdf: scale must be positive");
    return w < 0.0 ? 0.5 * std::exp(w / scale) : 1.0 - 0.5 * std::exp(-w / scale);
}

double mixture_tail(double t, const MixtureLaw& law) {
    if (t < 0.0) throw std::domain_error("mixture_tail: t must be nonnegative");
    if (t == 0.0) return 1.0;
    return law.gamma * std::exp(-t / law.sigma_bar);
}

double mgf_exact(double t, const MixtureLaw& law) {
    const double st = law.sigma_bar * t;
    if (!(std::abs(st) < 1.0))
        throw std::domain_error("mgf_exact: diverges for |t| >= 1/sigma_bar");
    const double st2 = st * st;
    return 1.0 + law.gamma * st2 / (1.0 - st2);
}

double mgf_bound(double t, const EnsembleExtremes& extremes) {
    if (!(std::abs(t) <= 1.0 / extremes.eta_tilde_max))
        throw std::domain_error("mgf_bound: valid only for |t| <= 1/eta_tilde_max");
    return std::exp(extremes.eta_max * t * t);
}

TailBound bernstein_bound(double t, std::span<const double> alpha,
                          const EnsembleExtremes& extremes) {
    if (!(t > 0.0)) throw std::domain_error("bernstein_bound: t must be positive");
    double norm2_sq = 0.0;
    double norm_inf = 0.0;
    for (double a : alpha) {
        norm2_sq += a * a;
        norm_inf = std::max(norm_inf, std::abs(a));
    }
    if (norm2_sq == 0.0)
        throw std::invalid_argument("bernstein_bound: alpha must be nonzero");
    const double quad = t * t / (4.0 * extremes.eta_max * norm2_sq);
    const double lin = t / (2.0 * extremes.eta_tilde_max * norm_inf);
    const double raw = 2.0 * std::exp(-std::min(quad, lin));
    return {raw, std::min(raw, 1.0)};
}

double subexp_norm_estimate(std::span<const double> samples, int p_max) {
    if (samples.empty())
        throw std::invalid_argument("subexp_norm_estimate: samples must be nonempty");
    if (p_max < 1)
        throw std::invalid_argument("subexp_norm_estimate: p_max must be >= 1");
    std::vector<double> moment_sums(static_cast<std::size_t>(p_max), 0.0);
    for (double x : samples) {
        const double a = std::abs(x);
        double ap = a;
        for (int p = 0; p < p_max; ++p) {
            moment_sums[static_cast<std::size_t>(p)] += ap;
            ap *= a;
        }
    }
    const double n = static_cast<double>(samples.size());
    double best = 0.0;
    for (int p = 1; p <= p_max; ++p) {
        const double mean = moment_sums[static_cast<std::size_t>(p - 1)] / n;
        best = std::max(best, std::pow(mean, 1.0 / p) / p);
    }
    return best;
}

}  // namespace fadecs::stats
