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

#include "fadecs/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fadecs/solver.hpp"

namespace fadecs::bounds {

void BoundInputs::validate() const {
    if (k < 1)
        throw std::domain_error("BoundInputs: k must be >= 1 (k = 0 leaves log(k/eps') undefined)");
    if (n < 1) throw std::invalid_argument("BoundInputs: n must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(epsilon_prime > 0.0 && epsilon_prime < 1.0))
        throw std::invalid_argument("BoundInputs: failure budgets must lie in (0,1)");
    if (!(c_prime > 0.0)) throw std::invalid_argument("BoundInputs: c_prime must be positive");
    if (r_ratio && !(*r_ratio > 0.0 && *r_ratio <= 1.0))
        throw std::invalid_argument("BoundInputs: R must lie in (0,1]");
}

double estimate_r_analytic(int k, int m) {
    if (k < 1 || m < 1) throw std::invalid_argument("estimate_r_analytic: need k, m >= 1");
    return std::min(1.0, std::sqrt(static_cast<double>(k) / (2.0 * m)));
}

double estimate_r_empirical(const Eigen::MatrixXd& b_matrix,
                            const model::SparseSignal& x) {
    const Eigen::VectorXd b_s = solver::certificate_vector(b_matrix, x);
    return b_s.lpNorm<Eigen::Infinity>() / b_s.norm();
}

BoundReport theorem1_bounds(const BoundInputs& in) {
    in.validate();
    const auto& ex = in.extremes;
    const double lg = std::log(2.0 * in.n / in.epsilon);
    const double lk = std::log(static_cast<double>(in.k) / in.epsilon_prime);
    const double ratio = ex.eta_max / ex.eta_min;
    const double cond_term = std::sqrt(lk / (2.0 * in.c_prime));

    const double m1 =
        ratio * 2.0 * in.k * std::pow(std::sqrt(ratio) * std::sqrt(lg) + cond_term, 2.0);
    const auto m2_for = [&](double r) {
        return ratio * 2.0 * in.k *
               std::pow(ex.eta_tilde_max / std::sqrt(ex.eta_min) * r * lg + cond_term, 2.0);
    };

    double r_used;
    double m2;
    if (in.r_ratio) {
        r_used = *in.r_ratio;
        m2 = m2_for(r_used);
    } else {
        // M2 is implicit in M through R = sqrt(k/2M); two passes settle it:
        // evaluate with R = 1, recompute R at the implied M, re-evaluate.
        const double m_pass1 = std::max(m1, m2_for(1.0));
        r_used = estimate_r_analytic(in.k, static_cast<int>(std::ceil(m_pass1)));
        m2 = m2_for(r_used);
    }

    BoundReport rep;
    rep.m1 = m1;
    rep.m2 = m2;
    rep.m_required = std::max(m1, m2);
    rep.r_used = r_used;
    rep.m1_dominates =
        ex.eta_min <= ex.eta_max * std::sqrt(ex.eta_max) / ex.eta_tilde_max;
    const double tilde_ratio = ex.eta_tilde_max / ex.eta_tilde_min;
    rep.c1 = tilde_ratio * tilde_ratio;
    rep.c2 = rep.c1 * rep.c1;
    rep.psi = std::sqrt(ex.eta_max * ex.eta_tilde_max * ex.eta_tilde_max /
                        (ex.eta_min * ex.eta_min));
    std::ostringstream notes;
    notes << "dominant scaling "
          << (rep.m1_dominates ? "(eta_max/eta_min)^2 k log(2N/eps)"
                               : "sqrt(eta_max eta_tilde_max^2/eta_min^2) k log(2N/eps)")
          << "; R=" << r_used;
    rep.scaling_notes = notes.str();
    return rep;
}

double corollary_iid_bound(int k, int n, double gamma, double epsilon, double c0) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::domain_error("corollary_iid_bound: gamma must lie in (0,1]");
    if (k < 1 || n < 1) throw std::invalid_argument("corollary_iid_bound: need k, n >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("corollary_iid_bound: epsilon must lie in (0,1)");
    if (!(c0 > 0.0)) throw std::invalid_argument("corollary_iid_bound: c0 must be positive");
    return c0 * k / std::sqrt(gamma) * std::log(2.0 * n / epsilon);
}

RegimeScaling table1_regime(KMode k_mode, Coupling coupling) {
    RegimeScaling r;
    r.k_mode = k_mode;
    r.coupling = coupling;
    if (coupling == Coupling::gamma_k_const) {
        r.formula = k_mode == KMode::sublinear ? "k^{3/2} log N" : "N^{3/2} log N";
    } else {
        r.formula = k_mode == KMode::sublinear ? "(k^{3/2}/sqrt(eps N)) log N"
                                               : "(N/sqrt(eps)) log N";
    }
    return r;
}

double RegimeScaling::evaluate(int k, int n, double coupling_param) const {
    if (k < 1 || n < 2) throw std::invalid_argument("RegimeScaling: need k >= 1, n >= 2");
    const double logn = std::log(static_cast<double>(n));
    if (coupling == Coupling::gamma_k_const) {
        return k_mode == KMode::sublinear ? std::pow(k, 1.5) * logn
                                          : std::pow(n, 1.5) * logn;
    }
    const double eps = coupling_param;
    if (!(eps > 0.0 && eps < static_cast<double>(k) / n))
        throw std::domain_error("RegimeScaling: eps must lie in (0, k/N) for the linear coupling");
    return k_mode == KMode::sublinear ? std::pow(k, 1.5) / std::sqrt(eps * n) * logn
                                      : n / std::sqrt(eps) * logn;
}

double general_subexp_bound(int k, int n, double lambda_min, double rho_max,
                            double t0, double r1, double eps1, double eps1_prime,
                            double c1, double c1_prime) {
    if (lambda_min == 0.0)
        throw std::domain_error("general_subexp_bound: singular second moment (lambda_min = 0)");
    if (!(lambda_min > 0.0) || !(rho_max > 0.0) || !(t0 > 0.0) || !(c1 > 0.0) ||
        !(c1_prime > 0.0))
        throw std::invalid_argument("general_subexp_bound: scale parameters must be positive");
    if (!(r1 >= 0.0 && r1 <= 1.0))
        throw std::invalid_argument("general_subexp_bound: R1 must lie in [0,1]");
    if (k < 1 || n < 1) throw std::invalid_argument("general_subexp_bound: need k, n >= 1");
    if (!(eps1 > 0.0 && eps1 < 1.0) || !(eps1_prime > 0.0 && eps1_prime < 1.0))
        throw std::invalid_argument("general_subexp_bound: failure budgets must lie in (0,1)");

    const double big_l = std::log(2.0 * n / eps1);
    const double first = std::sqrt(c1 / big_l) / rho_max;
    const double beta1 =
        r1 > 0.0 ? std::min(first, c1 / (rho_max * r1 * big_l)) : first;
    const double term = std::sqrt(static_cast<double>(k)) / beta1 +
                        std::sqrt(t0 * std::log(k / eps1_prime) / c1_prime);
    return term * term / lambda_min;
}

SingularValueEnvelope singular_value_envelope(const Eigen::MatrixXd& rows,
                                              const Eigen::MatrixXd& second_moment,
                                              double t0, double t) {
    const Eigen::Index k = rows.cols();
    if (second_moment.rows() != k || second_moment.cols() != k)
        throw std::invalid_argument("singular_value_envelope: second moment must be k x k");
    if (!(t0 > 0.0) || t < 0.0)
        throw std::invalid_argument("singular_value_envelope: need t0 > 0 and t >= 0");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
        0.5 * (second_moment + second_moment.transpose()));
    const double spectral_norm = eig.eigenvalues().maxCoeff();
    const double center = std::sqrt(spectral_norm) * std::sqrt(static_cast<double>(rows.rows()));
    const double slack = t * std::sqrt(t0);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(rows);
    SingularValueEnvelope env;
    env.s_min_pred = center - slack;
    env.s_max_pred = center + slack;
    env.s_min_obs = svd.singularValues().minCoeff();
    env.s_max_obs = svd.singularValues().maxCoeff();
    env.holds = env.s_min_obs >= env.s_min_pred && env.s_max_obs <= env.s_max_pred;
    return env;
}

}  // namespace fadecs::bounds
