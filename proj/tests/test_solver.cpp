#include <doctest.h>

#include <cmath>

#include "fadecs/model.hpp"
#include "fadecs/rng.hpp"
#include "fadecs/solver.hpp"
#include "oracles.hpp"

using namespace fadecs;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd gaussian_matrix(int m, int n, Rng& rng) {
    MatrixXd a(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.normal(1.0);
    return a;
}

model::SparseSignal make_signal(const VectorXd& values) {
    model::SparseSignal s;
    s.values = values;
    for (int i = 0; i < values.size(); ++i)
        if (values[i] != 0.0) s.support.push_back(i);
    return s;
}

}  // namespace

TEST_CASE("basis pursuit on the identity operator") {
    VectorXd x(6);
    x << 3.0, 0.0, -2.0, 0.0, 0.0, 7.0;
    const auto res = solver::basis_pursuit(MatrixXd::Identity(6, 6), x);
    CHECK((res.x_hat - x).norm() < 1e-10);
    CHECK(res.status == solver::SolveStatus::converged);
}

TEST_CASE("single spike matches the column regression oracle") {
    Rng rng(41);
    const MatrixXd b = gaussian_matrix(5, 8, rng);
    VectorXd x = VectorXd::Zero(8);
    x[3] = -12.5;
    const VectorXd y = b * x;
    const auto res = solver::basis_pursuit(b, y);
    // oracle: regress y on the single column
    const double coef = b.col(3).dot(y) / b.col(3).squaredNorm();
    CHECK(std::abs(coef + 12.5) < 1e-10);
    CHECK(solver::relative_error(x, res.x_hat) < 1e-6);
}

TEST_CASE("zero measurements give the zero estimate") {
    Rng rng(42);
    const MatrixXd b = gaussian_matrix(4, 9, rng);
    const auto res = solver::basis_pursuit(b, VectorXd::Zero(4));
    CHECK(res.x_hat.norm() == 0.0);
    CHECK(res.status == solver::SolveStatus::converged);
}

TEST_CASE("square full-rank systems are solved exactly") {
    Rng rng(43);
    const MatrixXd b = gaussian_matrix(7, 7, rng);
    VectorXd x = VectorXd::Zero(7);
    x[2] = 11.0;
    x[5] = -14.0;
    const auto res = solver::basis_pursuit(b, b * x);
    CHECK(solver::relative_error(x, res.x_hat) < 1e-10);
}

TEST_CASE("infeasible right-hand sides are rejected") {
    Rng rng(44);
    MatrixXd b = gaussian_matrix(4, 9, rng);
    b.row(2).setZero();
    CHECK_THROWS_AS(solver::basis_pursuit(b, VectorXd::Ones(4)),
                    solver::InfeasibleError);
    CHECK_THROWS_AS(solver::basis_pursuit(gaussian_matrix(9, 4, rng), VectorXd::Ones(9)),
                    std::invalid_argument);  // M > N
}

TEST_CASE("scale equivariance of basis pursuit") {
    Rng rng(45);
    const MatrixXd b = gaussian_matrix(8, 14, rng);
    VectorXd x = VectorXd::Zero(14);
    x[1] = 13.0;
    x[9] = -17.5;
    const VectorXd y = b * x;
    const auto res1 = solver::basis_pursuit(b, y);
    const auto res2 = solver::basis_pursuit(b, 7.5 * y);
    CHECK((res2.x_hat - 7.5 * res1.x_hat).norm() < 1e-6 * res2.x_hat.norm());
}

TEST_CASE("feasibility of the returned iterate") {
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(derive_seed(46, {static_cast<std::uint64_t>(trial)}));
        const auto x = model::generate_signal(40, 4, 10.0, 20.0, rng);
        const auto cfg = model::NetworkConfig::iid(40, 24, 1.0, 1.0, 1.0);
        const auto ens = model::generate_ensemble(x, cfg, rng);
        const auto res = solver::basis_pursuit(ens.B, ens.y);
        CHECK((ens.B * res.x_hat - ens.y).norm() < 1e-6 * ens.y.norm());
    }
}

TEST_CASE("agreement with the exhaustive oracle on tiny instances") {
    int compared = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Rng rng(derive_seed(47, {static_cast<std::uint64_t>(trial)}));
        const auto x = model::generate_signal(12, 2, 10.0, 20.0, rng);
        const auto cfg = model::NetworkConfig::iid(12, 8, 1.0, 1.0, 1.0);
        const auto ens = model::generate_ensemble(x, cfg, rng);

        solver::BruteForceInfo info;
        const auto oracle_res = solver::brute_force_oracle(ens.B, ens.y, 2, &info);
        const auto cert = solver::recovery_certificate(ens.B, x);
        if (!info.unique || !cert.holds) continue;
        ++compared;
        const auto bp = solver::basis_pursuit(ens.B, ens.y);
        CHECK(solver::relative_error(oracle_res.x_hat, bp.x_hat) < 1e-4);
        // l1 optimality: the solver never beats the oracle's l1 value
        CHECK(bp.x_hat.cwiseAbs().sum() >=
              oracle_res.x_hat.cwiseAbs().sum() * (1.0 - 1e-9));
    }
    CHECK(compared > 20);
}

TEST_CASE("brute force oracle behavior") {
    Rng rng(48);
    const MatrixXd b = gaussian_matrix(8, 12, rng);

    // zero target
    solver::BruteForceInfo info;
    const auto zero = solver::brute_force_oracle(b, VectorXd::Zero(8), 2, &info);
    CHECK(zero.x_hat.norm() == 0.0);
    CHECK(info.winning_size == 0);
    CHECK(info.unique);

    // exact planted support
    VectorXd x = VectorXd::Zero(12);
    x[2] = 15.0;
    x[9] = -11.0;
    const auto rec = solver::brute_force_oracle(b, b * x, 2, &info);
    CHECK(solver::relative_error(x, rec.x_hat) < 1e-10);
    CHECK(info.winning_size == 2);

    // guards
    CHECK_THROWS_AS(solver::brute_force_oracle(gaussian_matrix(8, 21, rng),
                                               VectorXd::Zero(8), 2, nullptr),
                    std::invalid_argument);
    CHECK_THROWS_AS(solver::brute_force_oracle(b, VectorXd::Zero(8), 4, nullptr),
                    std::invalid_argument);
}

TEST_CASE("duplicated columns break oracle uniqueness") {
    Rng rng(49);
    MatrixXd b = gaussian_matrix(6, 10, rng);
    b.col(7) = b.col(1);
    VectorXd x = VectorXd::Zero(10);
    x[1] = 9.0;
    solver::BruteForceInfo info;
    const auto rec = solver::brute_force_oracle(b, b * x, 1, &info);
    CHECK_FALSE(info.unique);
    CHECK(info.winning_size == 1);
    // lexicographic tie-break picks the earlier support
    CHECK(rec.x_hat[1] == doctest::Approx(9.0));
}

TEST_CASE("certificate on orthonormal and degenerate matrices") {
    // orthonormal columns: off-support correlations vanish
    const MatrixXd b = MatrixXd::Identity(6, 6);
    VectorXd x = VectorXd::Zero(6);
    x[2] = 5.0;
    const auto cert = solver::recovery_certificate(b, make_signal(x));
    CHECK(cert.holds);
    CHECK(cert.max_correlation == doctest::Approx(0.0));

    // duplicated column: correlation exactly 1, certificate fails
    MatrixXd dup(2, 2);
    dup << 1.0, 1.0, 0.0, 0.0;
    VectorXd xs = VectorXd::Zero(2);
    xs[0] = 5.0;
    const auto bad = solver::recovery_certificate(dup, make_signal(xs));
    CHECK_FALSE(bad.holds);
    CHECK(bad.max_correlation == doctest::Approx(1.0));

    // rank-deficient B_S
    VectorXd x2 = VectorXd::Zero(3);
    x2[0] = 1.0;
    x2[1] = 1.0;
    x2[2] = 0.0;
    MatrixXd degenerate(2, 3);
    degenerate << 1.0, 1.0, 0.5, 0.0, 0.0, 0.0;
    CHECK_THROWS_AS(solver::recovery_certificate(degenerate, make_signal(x2)),
                    std::runtime_error);
}

TEST_CASE("certificate soundness: holds implies exact l1 recovery") {
    int held = 0;
    for (int trial = 0; trial < 120; ++trial) {
        Rng rng(derive_seed(50, {static_cast<std::uint64_t>(trial)}));
        const auto x = model::generate_signal(50, 5, 10.0, 20.0, rng);
        const auto cfg = model::NetworkConfig::iid(50, 40, 1.0, 1.0, 1.0);
        const auto ens = model::generate_ensemble(x, cfg, rng);
        const auto cert = solver::recovery_certificate(ens.B, x);
        if (!cert.holds) continue;
        ++held;
        auto res = solver::basis_pursuit(ens.B, ens.y);
        res.score_against(x.values, 1e-4);
        CHECK(res.exact);
    }
    CHECK(held > 30);
}

TEST_CASE("bpdn degenerate and noisy cases") {
    Rng rng(51);
    const MatrixXd b = gaussian_matrix(6, 10, rng);
    VectorXd x = VectorXd::Zero(10);
    x[4] = 16.0;
    const VectorXd y = b * x;

    // eps >= ||y||: zero is feasible and optimal
    const auto zero = solver::bpdn(b, y, y.norm() * 1.01);
    CHECK(zero.x_hat.norm() == 0.0);

    // eps = 0 falls back to the equality program
    const auto eq = solver::bpdn(b, y, 0.0);
    CHECK(solver::relative_error(x, eq.x_hat) < 1e-8);

    // small eps keeps the estimate near the truth
    const auto res = solver::bpdn(b, y, 0.5);
    CHECK((b * res.x_hat - y).norm() <= 0.5 * (1.0 + 1e-6));
    CHECK(solver::relative_error(x, res.x_hat) < 0.05);
    CHECK(res.x_hat.cwiseAbs().sum() <= x.cwiseAbs().sum() * (1.0 + 1e-9));

    CHECK_THROWS_AS(solver::bpdn(b, y, -0.1), std::invalid_argument);

    // eps below the minimum achievable residual
    MatrixXd rows_dead = b;
    rows_dead.row(1).setZero();
    VectorXd y2 = y;
    y2[1] = 5.0;  // unreachable component of size 5
    CHECK_THROWS_AS(solver::bpdn(rows_dead, y2, 1.0), solver::InfeasibleError);
}

TEST_CASE("bpdn error grows with the noise level") {
    std::vector<double> low, high;
    for (int trial = 0; trial < 25; ++trial) {
        for (double sv2 : {0.1, 1.0}) {
            Rng rng(derive_seed(52, {static_cast<std::uint64_t>(trial), seed_word(sv2)}));
            const auto x = model::generate_signal(100, 10, 10.0, 20.0, rng);
            const auto cfg = model::NetworkConfig::iid(100, 80, 1.0, 1.0, 1.0, sv2);
            const auto ens = model::generate_ensemble(x, cfg, rng);
            auto res = solver::bpdn(ens.B, ens.y,
                                    solver::noise_ball_radius(std::sqrt(sv2), 80));
            (sv2 < 0.5 ? low : high).push_back(
                solver::relative_error(x.values, res.x_hat));
        }
    }
    CHECK(oracle::mean_se(low).mean < oracle::mean_se(high).mean);
}

TEST_CASE("noise ball radius rule") {
    CHECK(solver::noise_ball_radius(0.0, 10) == 0.0);
    const double m = 80.0;
    CHECK(solver::noise_ball_radius(2.0, 80) ==
          doctest::Approx(2.0 * std::sqrt(m) *
                          std::sqrt(1.0 + 2.0 * std::sqrt(2.0) / std::sqrt(m))));
    CHECK_THROWS_AS(solver::noise_ball_radius(-1.0, 10), std::invalid_argument);
}

TEST_CASE("relative error and scoring") {
    VectorXd x(3), xh(3);
    x << 3.0, 4.0, 0.0;
    xh << 3.0, 4.0, 0.05;
    CHECK(solver::relative_error(x, xh) == doctest::Approx(0.01));
    solver::RecoveryResult res;
    res.x_hat = xh;
    res.score_against(x, 1e-4);
    CHECK_FALSE(res.exact);
    res.score_against(x, 0.02);
    CHECK(res.exact);
    CHECK(solver::relative_error(VectorXd::Zero(3), VectorXd::Zero(3)) == 0.0);
}

TEST_CASE("solver settings validation") {
    solver::SolverSettings s;
    CHECK_NOTHROW(s.validate());
    s.gap_tolerance = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.backtrack_beta = 1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.max_iterations = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
