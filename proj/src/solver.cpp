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
//
// The two l1 programs follow the classic interior-point treatment: the
// equality-constrained program is solved as an LP in split form (x, u) with
// primal-dual log-barrier iterations; the noise-tolerant program is solved
// as a second-order cone program with an outer log-barrier loop and damped
// Newton centering steps.

#include "fadecs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace fadecs::solver {

void SolverSettings::validate() const {
    if (!(gap_tolerance > 0.0))
        throw std::invalid_argument("SolverSettings: gap_tolerance must be positive");
    if (max_iterations < 1 || max_line_search < 1)
        throw std::invalid_argument("SolverSettings: iteration caps must be >= 1");
    if (!(backtrack_alpha > 0.0 && backtrack_alpha < 0.5) ||
        !(backtrack_beta > 0.0 && backtrack_beta < 1.0))
        throw std::invalid_argument("SolverSettings: line-search parameters out of range");
    if (!(exact_threshold > 0.0))
        throw std::invalid_argument("SolverSettings: exact_threshold must be positive");
    if (regularization_floor < 0.0)
        throw std::invalid_argument("SolverSettings: regularization_floor must be >= 0");
}

double relative_error(const Eigen::VectorXd& x_true, const Eigen::VectorXd& x_hat) {
    const double denom = x_true.norm();
    if (denom == 0.0) return x_hat.norm() == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return (x_true - x_hat).norm() / denom;
}

void RecoveryResult::score_against(const Eigen::VectorXd& x_true, double theta_rec) {
    relative_error = solver::relative_error(x_true, x_hat);
    exact = relative_error < theta_rec;
}

double noise_ball_radius(double sigma_v, int m) {
    if (sigma_v < 0.0 || m < 1)
        throw std::invalid_argument("noise_ball_radius: need sigma_v >= 0 and m >= 1");
    const double sm = std::sqrt(static_cast<double>(m));
    return sigma_v * sm * std::sqrt(1.0 + 2.0 * std::numbers::sqrt2 / sm);
}

namespace {

// Cholesky solve with escalating diagonal regularization from the
// configured floor, plus one iterative-refinement pass (the Newton systems
// get badly conditioned near the central-path end).
Eigen::VectorXd solve_spd(const Eigen::MatrixXd& h, const Eigen::VectorXd& rhs,
                          double reg_floor, bool& ok) {
    ok = true;
    Eigen::LLT<Eigen::MatrixXd> llt(h);
    const Eigen::MatrixXd* sys = &h;
    Eigen::MatrixXd hr;
    if (llt.info() != Eigen::Success) {
        double reg = std::max(reg_floor, 1e-300);
        bool factored = false;
        for (int attempt = 0; attempt < 8 && !factored; ++attempt) {
            hr = h;
            hr.diagonal().array() += reg;
            llt.compute(hr);
            factored = llt.info() == Eigen::Success;
            reg *= 1e3;
        }
        if (!factored) {
            ok = false;
            return Eigen::VectorXd::Zero(rhs.size());
        }
        sys = &hr;
    }
    Eigen::VectorXd sol = llt.solve(rhs);
    sol += llt.solve(rhs - (*sys) * sol);
    return sol;
}

void check_problem(const Eigen::MatrixXd& b, const Eigen::VectorXd& y) {
    if (b.rows() < 1 || b.cols() < 1)
        throw std::invalid_argument("solver: empty system");
    if (b.rows() > b.cols())
        throw std::invalid_argument("solver: requires M <= N");
    if (y.size() != b.rows())
        throw std::invalid_argument("solver: y length differs from row count");
}

// Vertex polish for the equality program: refit on the apparent support of
// the interior-point iterate. Accepted only when feasibility is preserved
// and the l1 norm does not grow.
bool polish_vertex(const Eigen::MatrixXd& b_matrix, const Eigen::VectorXd& y,
                   Eigen::VectorXd& x, std::vector<int>& support) {
    const double scale = x.lpNorm<Eigen::Infinity>();
    if (scale == 0.0) return false;

    std::vector<int> apparent;
    for (Eigen::Index j = 0; j < x.size(); ++j)
        if (std::abs(x[j]) > 1e-6 * scale) apparent.push_back(static_cast<int>(j));
    const int k = static_cast<int>(apparent.size());
    if (k == 0 || k > b_matrix.rows()) return false;

    Eigen::MatrixXd cols(b_matrix.rows(), k);
    for (int j = 0; j < k; ++j) cols.col(j) = b_matrix.col(apparent[static_cast<std::size_t>(j)]);
    const Eigen::VectorXd coef = cols.completeOrthogonalDecomposition().solve(y);

    Eigen::VectorXd x_pol = Eigen::VectorXd::Zero(x.size());
    for (int j = 0; j < k; ++j) x_pol[apparent[static_cast<std::size_t>(j)]] = coef[j];
    if ((b_matrix * x_pol - y).norm() > 1e-9 * std::max(1.0, y.norm())) return false;
    if (x_pol.cwiseAbs().sum() > x.cwiseAbs().sum() * (1.0 + 1e-9)) return false;

    support.clear();
    for (int idx : apparent)
        if (x_pol[idx] != 0.0) support.push_back(idx);
    x = x_pol;
    return !support.empty();
}

// Rigorous duality gap of the equality program. The dual of min ||x||_1
// s.t. Bx = y reached through this primal-dual formulation maximizes -y'v
// over ||B'v||_inf <= 1, so any rescaled v gives a valid lower bound. When
// a support is known, v is first projected onto the complementary
// slackness equations B_S'v = -sgn(x_S).
double certified_gap(const Eigen::MatrixXd& b_matrix, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& x, Eigen::VectorXd v,
                     const std::vector<int>& support) {
    if (!support.empty()) {
        const int k = static_cast<int>(support.size());
        Eigen::MatrixXd cols(b_matrix.rows(), k);
        Eigen::VectorXd sgn(k);
        for (int j = 0; j < k; ++j) {
            cols.col(j) = b_matrix.col(support[static_cast<std::size_t>(j)]);
            sgn[j] = x[support[static_cast<std::size_t>(j)]] > 0.0 ? 1.0 : -1.0;
        }
        const Eigen::VectorXd mismatch = cols.transpose() * v + sgn;
        const Eigen::LDLT<Eigen::MatrixXd> gram((cols.transpose() * cols).eval());
        if (gram.info() == Eigen::Success) v -= cols * gram.solve(mismatch);
    }
    const double sc = std::max(1.0, (b_matrix.transpose() * v).lpNorm<Eigen::Infinity>());
    return std::max(0.0, x.cwiseAbs().sum() + y.dot(v) / sc);
}

// Full KKT residual norm of the split-form LP; the line search requires it
// to shrink.
double lp_residual_norm(const Eigen::VectorXd& f1, const Eigen::VectorXd& f2,
                        const Eigen::VectorXd& lam1, const Eigen::VectorXd& lam2,
                        const Eigen::VectorXd& btv, const Eigen::VectorXd& r_pri,
                        double t) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < f1.size(); ++j) {
        const double dual_x = lam1[j] - lam2[j] + btv[j];
        const double dual_u = 1.0 - lam1[j] - lam2[j];
        const double cent1 = -lam1[j] * f1[j] - 1.0 / t;
        const double cent2 = -lam2[j] * f2[j] - 1.0 / t;
        acc += dual_x * dual_x + dual_u * dual_u + cent1 * cent1 + cent2 * cent2;
    }
    acc += r_pri.squaredNorm();
    return std::sqrt(acc);
}

}  // namespace

RecoveryResult basis_pursuit(const Eigen::MatrixXd& b_matrix, const Eigen::VectorXd& y,
                             const SolverSettings& settings) {
    settings.validate();
    check_problem(b_matrix, y);
    const Eigen::Index m = b_matrix.rows();
    const Eigen::Index n = b_matrix.cols();

    RecoveryResult res;
    if (y.norm() == 0.0) {
        res.x_hat = Eigen::VectorXd::Zero(n);
        res.duality_gap = 0.0;
        return res;
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(b_matrix);
    Eigen::VectorXd x = cod.solve(y);
    const double feas = (b_matrix * x - y).norm();
    if (feas > 1e-8 * std::max(1.0, y.norm())) {
        std::ostringstream msg;
        msg << "basis_pursuit: y is outside the range of B (residual " << feas << ")";
        throw InfeasibleError(msg.str());
    }
    if (m == n && cod.rank() == n) {
        // the feasible set is a single point
        res.x_hat = x;
        res.duality_gap = 0.0;
        return res;
    }

    const double mu = 10.0;
    Eigen::VectorXd u = 0.95 * x.cwiseAbs() +
                        Eigen::VectorXd::Constant(n, 0.10 * x.lpNorm<Eigen::Infinity>());
    Eigen::VectorXd f1 = x - u;
    Eigen::VectorXd f2 = -x - u;
    Eigen::VectorXd lam1 = -f1.cwiseInverse();
    Eigen::VectorXd lam2 = -f2.cwiseInverse();
    Eigen::VectorXd v = -b_matrix * (lam1 - lam2);
    Eigen::VectorXd btv = b_matrix.transpose() * v;
    Eigen::VectorXd r_pri = b_matrix * x - y;

    double sdg = -(f1.dot(lam1) + f2.dot(lam2));
    double t = mu * 2.0 * static_cast<double>(n) / sdg;
    double res_norm = lp_residual_norm(f1, f2, lam1, lam2, btv, r_pri, t);

    int iter = 0;
    while (sdg > settings.gap_tolerance * std::max(1.0, u.sum()) &&
           iter < settings.max_iterations) {
        ++iter;

        const Eigen::VectorXd inv_f1 = f1.cwiseInverse();
        const Eigen::VectorXd inv_f2 = f2.cwiseInverse();
        const Eigen::VectorXd w1 = (inv_f1 - inv_f2) / t - btv;
        const Eigen::VectorXd w2 =
            Eigen::VectorXd::Constant(n, -1.0) - (inv_f1 + inv_f2) / t;
        // sig3 = sig1 - sig2^2/sig1 in the product form 4ab/(a+b): the
        // difference form cancels catastrophically once one constraint of a
        // pair goes inactive near the optimum
        const Eigen::VectorXd bar1 = -lam1.cwiseProduct(inv_f1);
        const Eigen::VectorXd bar2 = -lam2.cwiseProduct(inv_f2);
        const Eigen::VectorXd sig1 = bar1 + bar2;
        const Eigen::VectorXd sig2 = bar2 - bar1;
        const Eigen::VectorXd sig3 =
            4.0 * bar1.cwiseProduct(bar2).cwiseQuotient(sig1);

        const Eigen::VectorXd tmp =
            w1.cwiseQuotient(sig3) -
            w2.cwiseProduct(sig2).cwiseQuotient(sig3.cwiseProduct(sig1));
        const Eigen::VectorXd rhs = b_matrix * tmp + r_pri;

        Eigen::MatrixXd h(m, m);
        h.noalias() =
            b_matrix * sig3.cwiseInverse().asDiagonal() * b_matrix.transpose();
        bool ok = true;
        const Eigen::VectorXd dv = solve_spd(h, rhs, settings.regularization_floor, ok);
        if (!ok) break;  // keep the best iterate

        const Eigen::VectorXd btdv = b_matrix.transpose() * dv;
        const Eigen::VectorXd dx =
            (w1 - w2.cwiseProduct(sig2).cwiseQuotient(sig1) - btdv).cwiseQuotient(sig3);
        const Eigen::VectorXd du =
            (w2 - sig2.cwiseProduct(dx)).cwiseQuotient(sig1);
        const Eigen::VectorXd dlam1 =
            lam1.cwiseProduct(inv_f1).cwiseProduct(du - dx) - lam1 - inv_f1 / t;
        const Eigen::VectorXd dlam2 =
            lam2.cwiseProduct(inv_f2).cwiseProduct(dx + du) - lam2 - inv_f2 / t;

        double step = 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (dlam1[j] < 0.0) step = std::min(step, -lam1[j] / dlam1[j]);
            if (dlam2[j] < 0.0) step = std::min(step, -lam2[j] / dlam2[j]);
            const double df1 = dx[j] - du[j];
            const double df2 = -dx[j] - du[j];
            if (df1 > 0.0) step = std::min(step, -f1[j] / df1);
            if (df2 > 0.0) step = std::min(step, -f2[j] / df2);
        }
        step *= 0.99;

        const Eigen::VectorXd bdx = b_matrix * dx;
        bool accepted = false;
        for (int ls = 0; ls < settings.max_line_search; ++ls) {
            const Eigen::VectorXd x_new = x + step * dx;
            const Eigen::VectorXd u_new = u + step * du;
            const Eigen::VectorXd lam1_new = lam1 + step * dlam1;
            const Eigen::VectorXd lam2_new = lam2 + step * dlam2;
            const Eigen::VectorXd btv_new = btv + step * btdv;
            const Eigen::VectorXd r_new = r_pri + step * bdx;
            const Eigen::VectorXd f1_new = x_new - u_new;
            const Eigen::VectorXd f2_new = -x_new - u_new;
            const double cand =
                lp_residual_norm(f1_new, f2_new, lam1_new, lam2_new, btv_new, r_new, t);
            if (cand <= (1.0 - settings.backtrack_alpha * step) * res_norm) {
                x = x_new;
                u = u_new;
                lam1 = lam1_new;
                lam2 = lam2_new;
                v += step * dv;
                btv = btv_new;
                r_pri = r_new;
                f1 = f1_new;
                f2 = f2_new;
                accepted = true;
                break;
            }
            step *= settings.backtrack_beta;
        }
        if (!accepted) break;

        sdg = -(f1.dot(lam1) + f2.dot(lam2));
        t = mu * 2.0 * static_cast<double>(n) / sdg;
        res_norm = lp_residual_norm(f1, f2, lam1, lam2, btv, r_pri, t);
    }

    double gap = sdg;
    if (gap > settings.gap_tolerance * std::max(1.0, x.cwiseAbs().sum())) {
        std::vector<int> support;
        polish_vertex(b_matrix, y, x, support);
        gap = std::min(gap, certified_gap(b_matrix, y, x, v, support));
    }

    res.x_hat = x;
    res.iterations = iter;
    res.duality_gap = gap;
    res.status = gap <= settings.gap_tolerance * std::max(1.0, x.cwiseAbs().sum())
                     ? SolveStatus::converged
                     : SolveStatus::iteration_limit;
    return res;
}

RecoveryResult bpdn(const Eigen::MatrixXd& b_matrix, const Eigen::VectorXd& y,
                    double eps_v, const SolverSettings& settings) {
    settings.validate();
    if (eps_v < 0.0) throw std::invalid_argument("bpdn: eps_v must be nonnegative");
    if (eps_v == 0.0) return basis_pursuit(b_matrix, y, settings);
    check_problem(b_matrix, y);
    const Eigen::Index n = b_matrix.cols();

    RecoveryResult res;
    if (y.norm() <= eps_v) {
        // zero is feasible and has minimal l1 norm
        res.x_hat = Eigen::VectorXd::Zero(n);
        res.duality_gap = 0.0;
        return res;
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(b_matrix);
    Eigen::VectorXd x = cod.solve(y);
    Eigen::VectorXd r = b_matrix * x - y;
    if (r.norm() >= eps_v) {
        std::ostringstream msg;
        msg << "bpdn: eps_v = " << eps_v << " is below the minimum achievable residual "
            << r.norm();
        throw InfeasibleError(msg.str());
    }

    const double mu = 10.0;
    const double lbtol = settings.gap_tolerance;
    Eigen::VectorXd u = 0.95 * x.cwiseAbs() +
                        Eigen::VectorXd::Constant(n, 0.10 * x.lpNorm<Eigen::Infinity>());
    double tau = std::max((2.0 * n + 1.0) / x.cwiseAbs().sum(), 1.0);
    const int outer_stages = std::max(
        1, static_cast<int>(std::ceil(
               (std::log(2.0 * n + 1.0) - std::log(lbtol) - std::log(tau)) / std::log(mu))));

    const Eigen::MatrixXd btb = b_matrix.transpose() * b_matrix;
    int total_newton = 0;
    bool aborted = false;

    for (int stage = 0; stage < outer_stages && !aborted; ++stage) {
        Eigen::VectorXd f1 = x - u;
        Eigen::VectorXd f2 = -x - u;
        double f3 = 0.5 * (r.squaredNorm() - eps_v * eps_v);
        double objective = u.sum() -
                           ((-f1.array()).log().sum() + (-f2.array()).log().sum() +
                            std::log(-f3)) /
                               tau;

        for (int it = 0; it < settings.max_iterations; ++it) {
            ++total_newton;
            const Eigen::VectorXd atr = b_matrix.transpose() * r;
            const Eigen::VectorXd inv_f1 = f1.cwiseInverse();
            const Eigen::VectorXd inv_f2 = f2.cwiseInverse();
            const Eigen::VectorXd z1 = inv_f1 - inv_f2 + atr / f3;
            const Eigen::VectorXd z2 =
                Eigen::VectorXd::Constant(n, -tau) - inv_f1 - inv_f2;
            const Eigen::VectorXd d1 = inv_f1.cwiseAbs2() + inv_f2.cwiseAbs2();
            const Eigen::VectorXd d2 = inv_f2.cwiseAbs2() - inv_f1.cwiseAbs2();
            // d1 - d2^2/d1 without the cancellation of the difference form
            const Eigen::VectorXd d3 =
                4.0 * inv_f1.cwiseAbs2().cwiseProduct(inv_f2.cwiseAbs2()).cwiseQuotient(d1);

            Eigen::MatrixXd h = (1.0 / (f3 * f3)) * (atr * atr.transpose());
            h.noalias() -= btb / f3;
            h.diagonal() += d3;
            const Eigen::VectorXd rhs = z1 - z2.cwiseProduct(d2).cwiseQuotient(d1);

            bool ok = true;
            const Eigen::VectorXd dx = solve_spd(std::move(h), rhs,
                                                 settings.regularization_floor, ok);
            if (!ok) {
                aborted = true;
                break;
            }
            const Eigen::VectorXd du =
                z2.cwiseQuotient(d1) - dx.cwiseProduct(d2).cwiseQuotient(d1);

            const double decrement = (z1.dot(dx) + z2.dot(du)) / tau;
            if (decrement / 2.0 < lbtol) break;

            // largest interior step for the box and the residual ball
            double step = 1.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                const double df1 = dx[j] - du[j];
                const double df2 = -dx[j] - du[j];
                if (df1 > 0.0) step = std::min(step, -f1[j] / df1);
                if (df2 > 0.0) step = std::min(step, -f2[j] / df2);
            }
            const Eigen::VectorXd bdx = b_matrix * dx;
            const double aq = bdx.squaredNorm();
            const double bq = 2.0 * r.dot(bdx);
            const double cq = r.squaredNorm() - eps_v * eps_v;
            if (aq > 0.0) {
                const double disc = bq * bq - 4.0 * aq * cq;
                if (disc > 0.0)
                    step = std::min(step, (-bq + std::sqrt(disc)) / (2.0 * aq));
            }
            step *= 0.99;

            bool accepted = false;
            for (int ls = 0; ls < settings.max_line_search; ++ls) {
                const Eigen::VectorXd x_new = x + step * dx;
                const Eigen::VectorXd u_new = u + step * du;
                const Eigen::VectorXd r_new = r + step * bdx;
                const Eigen::VectorXd f1_new = x_new - u_new;
                const Eigen::VectorXd f2_new = -x_new - u_new;
                const double f3_new = 0.5 * (r_new.squaredNorm() - eps_v * eps_v);
                if ((f1_new.array() < 0.0).all() && (f2_new.array() < 0.0).all() &&
                    f3_new < 0.0) {
                    const double obj_new =
                        u_new.sum() - ((-f1_new.array()).log().sum() +
                                       (-f2_new.array()).log().sum() + std::log(-f3_new)) /
                                          tau;
                    if (obj_new <= objective - settings.backtrack_alpha * step * decrement) {
                        x = x_new;
                        u = u_new;
                        r = r_new;
                        f1 = f1_new;
                        f2 = f2_new;
                        f3 = f3_new;
                        objective = obj_new;
                        accepted = true;
                        break;
                    }
                }
                step *= settings.backtrack_beta;
            }
            if (!accepted) {
                aborted = true;
                break;
            }
        }
        if (!aborted) tau *= mu;
    }

    res.x_hat = x;
    res.iterations = total_newton;
    res.duality_gap = (2.0 * n + 1.0) / tau;
    res.status = res.duality_gap <= lbtol * (1.0 + 1e-9)
                     ? SolveStatus::converged
                     : SolveStatus::iteration_limit;
    return res;
}

Eigen::VectorXd certificate_vector(const Eigen::MatrixXd& b_matrix,
                                   const model::SparseSignal& x) {
    const int k = x.sparsity();
    if (k == 0)
        throw std::invalid_argument("certificate_vector: empty support");
    if (x.size() != b_matrix.cols())
        throw std::invalid_argument("certificate_vector: dimension mismatch");
    if (k > b_matrix.rows())
        throw std::runtime_error(
            "certificate_vector: B_S cannot have full column rank (k > M)");

    Eigen::MatrixXd b_s_cols(b_matrix.rows(), k);
    for (int j = 0; j < k; ++j) b_s_cols.col(j) = b_matrix.col(x.support[j]);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b_s_cols,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv[k - 1] <= 1e-10 * sv[0])
        throw std::runtime_error(
            "certificate_vector: B_S rank deficient at tolerance 1e-10*||B_S||");

    // b_S = (B_S^+)^T s = U Sigma^-1 V^T s
    const Eigen::VectorXd s = x.sign_pattern();
    return svd.matrixU() * sv.cwiseInverse().cwiseProduct(svd.matrixV().transpose() * s);
}

Certificate recovery_certificate(const Eigen::MatrixXd& b_matrix,
                                 const model::SparseSignal& x) {
    const Eigen::VectorXd b_s = certificate_vector(b_matrix, x);
    std::vector<bool> on_support(b_matrix.cols(), false);
    for (int idx : x.support) on_support[static_cast<std::size_t>(idx)] = true;

    double max_corr = 0.0;
    for (Eigen::Index l = 0; l < b_matrix.cols(); ++l) {
        if (on_support[static_cast<std::size_t>(l)]) continue;
        max_corr = std::max(max_corr, std::abs(b_matrix.col(l).dot(b_s)));
    }
    return {max_corr < 1.0, max_corr};
}

RecoveryResult brute_force_oracle(const Eigen::MatrixXd& b_matrix,
                                  const Eigen::VectorXd& y, int k_max,
                                  BruteForceInfo* info) {
    const Eigen::Index n = b_matrix.cols();
    if (y.size() != b_matrix.rows())
        throw std::invalid_argument("brute_force_oracle: y length differs from row count");
    if (k_max < 0) throw std::invalid_argument("brute_force_oracle: k_max must be >= 0");
    if (n > 20 || k_max > 3)
        throw std::invalid_argument(
            "brute_force_oracle: enumeration budget exceeded (guard: N <= 20, k_max <= 3)");

    constexpr double residual_tol = 1e-8;
    BruteForceInfo local;
    RecoveryResult res;

    for (int size = 0; size <= k_max; ++size) {
        // candidates at this sparsity level
        std::vector<Eigen::VectorXd> fits;
        Eigen::VectorXd best_x;
        double best_l1 = std::numeric_limits<double>::infinity();

        std::vector<int> comb(size);
        std::iota(comb.begin(), comb.end(), 0);
        bool more = true;
        while (more) {
            ++local.supports_checked;
            Eigen::VectorXd x_full = Eigen::VectorXd::Zero(n);
            double residual;
            if (size == 0) {
                residual = y.norm();
            } else {
                Eigen::MatrixXd cols(b_matrix.rows(), size);
                for (int j = 0; j < size; ++j) cols.col(j) = b_matrix.col(comb[j]);
                const Eigen::VectorXd coef =
                    cols.completeOrthogonalDecomposition().solve(y);
                for (int j = 0; j < size; ++j) x_full[comb[j]] = coef[j];
                residual = (cols * coef - y).norm();
            }
            if (residual <= residual_tol) {
                fits.push_back(x_full);
                const double l1 = x_full.cwiseAbs().sum();
                // lexicographic enumeration order settles exact l1 ties
                if (l1 < best_l1 * (1.0 - 1e-12)) {
                    best_l1 = l1;
                    best_x = x_full;
                }
            }
            // advance to the next lexicographic combination
            more = false;
            for (int pos = size - 1; pos >= 0; --pos) {
                if (comb[pos] < static_cast<int>(n) - (size - pos)) {
                    ++comb[pos];
                    for (int q = pos + 1; q < size; ++q) comb[q] = comb[q - 1] + 1;
                    more = true;
                    break;
                }
            }
        }

        if (!fits.empty()) {
            local.winning_size = size;
            local.unique = true;
            for (const auto& f : fits) {
                if ((f - best_x).lpNorm<Eigen::Infinity>() > 1e-6) {
                    local.unique = false;
                    break;
                }
            }
            res.x_hat = best_x;
            res.duality_gap = 0.0;
            res.status = SolveStatus::converged;
            if (info) *info = local;
            return res;
        }
    }

    // nothing met the residual tolerance: report the all-zero fallback
    res.x_hat = Eigen::VectorXd::Zero(n);
    res.status = SolveStatus::iteration_limit;
    if (info) *info = local;
    return res;
}

}  // namespace fadecs::solver
