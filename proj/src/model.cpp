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

#include "fadecs/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fadecs::model {

Eigen::VectorXd SparseSignal::sign_pattern() const {
    Eigen::VectorXd s(static_cast<int>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) {
        s[static_cast<int>(i)] = values[support[i]] > 0 ? 1.0 : -1.0;
    }
    return s;
}

void SparseSignal::validate() const {
    std::vector<bool> on(values.size(), false);
    int prev = -1;
    for (int idx : support) {
        if (idx <= prev || idx >= values.size())
            throw std::invalid_argument("SparseSignal: support must be ascending and in range");
        prev = idx;
        on[idx] = true;
    }
    for (int i = 0; i < values.size(); ++i) {
        if ((values[i] != 0.0) != on[i])
            throw std::invalid_argument("SparseSignal: values nonzero exactly on support");
    }
}

Eigen::VectorXd NetworkConfig::sigma_bar() const {
    return sigma.cwiseProduct(nu);
}

void NetworkConfig::validate() const {
    if (n <= 0 || m <= 0)
        throw std::invalid_argument("NetworkConfig: n and m must be positive");
    if (gamma.size() != n || sigma.size() != n || nu.size() != n)
        throw std::invalid_argument("NetworkConfig: per-node vectors must have length n");
    for (int j = 0; j < n; ++j) {
        if (!(gamma[j] > 0.0 && gamma[j] <= 1.0))
            throw std::invalid_argument("NetworkConfig: gamma_j must lie in (0,1]");
        if (!(sigma[j] > 0.0) || !(nu[j] > 0.0))
            throw std::invalid_argument("NetworkConfig: sigma_j and nu_j must be positive");
    }
    if (sigma_v2 < 0.0)
        throw std::invalid_argument("NetworkConfig: sigma_v2 must be nonnegative");
    if (energy_cap) {
        for (int j = 0; j < n; ++j) {
            if (gamma[j] * sigma[j] * sigma[j] > *energy_cap * (1.0 + 1e-12)) {
                std::ostringstream msg;
                msg << "NetworkConfig: average power gamma_j*sigma_j^2 = "
                    << gamma[j] * sigma[j] * sigma[j] << " exceeds cap " << *energy_cap
                    << " at node " << j;
                throw std::invalid_argument(msg.str());
            }
        }
    }
}

NetworkConfig NetworkConfig::iid(int n, int m, double gamma, double sigma_a2,
                                 double nu_h2, double sigma_v2) {
    NetworkConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.gamma = Eigen::VectorXd::Constant(n, gamma);
    cfg.sigma = Eigen::VectorXd::Constant(n, std::sqrt(sigma_a2));
    cfg.nu = Eigen::VectorXd::Constant(n, std::sqrt(nu_h2));
    cfg.sigma_v2 = sigma_v2;
    cfg.validate();
    return cfg;
}

SparseSignal generate_signal(int n, int k, double lo, double hi, Rng& rng) {
    if (n < 0 || k < 0 || k > n)
        throw std::invalid_argument("generate_signal: need 0 <= k <= n");
    if (!(0.0 < lo && lo < hi))
        throw std::invalid_argument("generate_signal: need 0 < lo < hi");

    // partial Fisher-Yates: the first k slots are a uniform k-subset
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int t = 0; t < k; ++t) {
        const int r = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - t)));
        std::swap(pool[t], pool[r]);
    }
    std::vector<int> support(pool.begin(), pool.begin() + k);
    std::sort(support.begin(), support.end());

    SparseSignal sig;
    sig.values = Eigen::VectorXd::Zero(n);
    sig.support = std::move(support);
    for (int idx : sig.support) {
        const double mag = rng.uniform(lo, hi);
        sig.values[idx] = rng.bernoulli(0.5) ? -mag : mag;
    }
    return sig;
}

namespace {

MeasurementEnsemble draw_ensemble(const SparseSignal& x, const NetworkConfig& cfg,
                                  Rng& rng, bool with_fading) {
    cfg.validate();
    if (x.size() != cfg.n)
        throw std::invalid_argument("generate_ensemble: signal length differs from cfg.n");

    MeasurementEnsemble e;
    e.seed = rng.seed();
    e.A.resize(cfg.m, cfg.n);
    e.H.resize(cfg.m, cfg.n);
    // Fixed draw order per entry keeps the stream layout independent of the
    // Bernoulli outcomes.
    for (int i = 0; i < cfg.m; ++i) {
        for (int j = 0; j < cfg.n; ++j) {
            const bool active = rng.bernoulli(cfg.gamma[j]);
            const double a = rng.normal(cfg.sigma[j]);
            const double h = rng.rayleigh(cfg.nu[j]);
            e.A(i, j) = active ? a : 0.0;
            e.H(i, j) = with_fading ? h : 1.0;
        }
    }
    e.B = e.H.cwiseProduct(e.A);
    e.v.resize(cfg.m);
    const double sigma_v = std::sqrt(cfg.sigma_v2);
    for (int i = 0; i < cfg.m; ++i) e.v[i] = sigma_v > 0.0 ? rng.normal(sigma_v) : 0.0;
    e.y = e.B * x.values + e.v;
    return e;
}

}  // namespace

MeasurementEnsemble generate_ensemble(const SparseSignal& x,
                                      const NetworkConfig& cfg, Rng& rng) {
    return draw_ensemble(x, cfg, rng, true);
}

MeasurementEnsemble awgn_ensemble(const SparseSignal& x, const NetworkConfig& cfg,
                                  Rng& rng) {
    return draw_ensemble(x, cfg, rng, false);
}

}  // namespace fadecs::model
