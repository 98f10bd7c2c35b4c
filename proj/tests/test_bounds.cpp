#include <doctest.h>

#include <cmath>

#include "fadecs/bounds.hpp"
#include "fadecs/model.hpp"
#include "fadecs/rng.hpp"
#include "oracles.hpp"

using namespace fadecs;
using Eigen::VectorXd;

namespace {

bounds::BoundInputs iid_inputs() {
    bounds::BoundInputs in;
    in.k = 10;
    in.n = 100;
    in.epsilon = 0.01;
    in.epsilon_prime = 0.01;
    in.c_prime = 1.0;
    in.extremes = stats::EnsembleExtremes(1.0, 1.0, 1.0, 1.0);
    return in;
}

}  // namespace

TEST_CASE("theorem1 iid example with the analytic two-pass R") {
    const auto rep = bounds::theorem1_bounds(iid_inputs());

    // independent recomputation of the M1 formula
    const double lg = std::log(2.0 * 100 / 0.01);
    const double lk = std::log(10 / 0.01);
    const double m1 = 2.0 * 10 * std::pow(std::sqrt(lg) + std::sqrt(lk / 2.0), 2.0);
    CHECK(std::abs(rep.m1 - m1) / m1 < 1e-12);
    CHECK(rep.m1 == doctest::Approx(501.08895198617074).epsilon(1e-9));

    // the two-pass procedure: M2 at R=1, then R = sqrt(k/2 ceil(M)), re-evaluate
    const double cond = std::sqrt(lk / 2.0);
    const double m2_pass1 = 20.0 * std::pow(lg + cond, 2.0);
    const double r =
        std::sqrt(10.0 / (2.0 * std::ceil(std::max(m1, m2_pass1))));
    CHECK(rep.r_used == doctest::Approx(r).epsilon(1e-12));
    const double m2 = 20.0 * std::pow(r * lg + cond, 2.0);
    CHECK(rep.m2 == doctest::Approx(m2).epsilon(1e-12));
    CHECK(rep.m_required == doctest::Approx(std::max(m1, m2)));

    // iid at gamma=1: the M1 side is binding
    CHECK(rep.m1_dominates);
    CHECK(rep.c1 == doctest::Approx(1.0));
    CHECK(rep.c2 == doctest::Approx(1.0));
    CHECK(rep.psi == doctest::Approx(1.0));
}

TEST_CASE("theorem1 with a caller-fixed R and degenerate k") {
    auto in = iid_inputs();
    in.r_ratio = 0.5;
    const auto rep = bounds::theorem1_bounds(in);
    const double lg = std::log(2.0 * 100 / 0.01);
    const double cond = std::sqrt(std::log(1000.0) / 2.0);
    CHECK(rep.m2 == doctest::Approx(20.0 * std::pow(0.5 * lg + cond, 2.0)));

    in.k = 0;
    CHECK_THROWS_AS(bounds::theorem1_bounds(in), std::domain_error);
    in.k = 10;
    in.r_ratio = 1.5;
    CHECK_THROWS_AS(bounds::theorem1_bounds(in), std::invalid_argument);
}

TEST_CASE("dominance flag tracks the gamma regime in the iid family") {
    // eta = gamma, eta_tilde = 1: the M1-dominates condition reads
    // gamma <= gamma^{3/2}, i.e. gamma >= 1
    for (double gamma : {0.05, 0.2, 0.5, 0.9}) {
        auto in = iid_inputs();
        in.extremes = stats::EnsembleExtremes(gamma, gamma, 1.0, 1.0);
        const auto rep = bounds::theorem1_bounds(in);
        CHECK_FALSE(rep.m1_dominates);
        // the dominant-term ratio behaves as 1/sqrt(gamma)
        CHECK(rep.psi == doctest::Approx(1.0 / std::sqrt(gamma)));
        CHECK(rep.psi >= 1.0);
    }
    auto in = iid_inputs();
    const auto rep = bounds::theorem1_bounds(in);
    CHECK(rep.m1_dominates);
}

TEST_CASE("M1 and M2 strictly increase in k and in log(2N/eps)") {
    Rng rng(21);
    for (int trial = 0; trial < 1000; ++trial) {
        const double eta_min = rng.uniform(0.1, 2.0);
        const double eta_max = eta_min * rng.uniform(1.0, 4.0);
        const double et_min = rng.uniform(0.3, 1.5);
        const double et_max = et_min * rng.uniform(1.0, 3.0);
        bounds::BoundInputs in;
        in.k = 1 + static_cast<int>(rng.below(30));
        in.n = 50 + static_cast<int>(rng.below(1000));
        in.epsilon = rng.uniform(0.001, 0.5);
        in.epsilon_prime = rng.uniform(0.001, 0.5);
        in.c_prime = rng.uniform(0.25, 4.0);
        in.extremes = stats::EnsembleExtremes(eta_max, eta_min, et_max, et_min);
        in.r_ratio = rng.uniform(0.05, 1.0);

        const auto rep = bounds::theorem1_bounds(in);
        CHECK(rep.c2 == doctest::Approx(rep.c1 * rep.c1));
        CHECK(rep.c1 >= 1.0);
        CHECK(rep.m_required == doctest::Approx(std::max(rep.m1, rep.m2)));

        auto bigger_k = in;
        bigger_k.k += 1;
        const auto rep_k = bounds::theorem1_bounds(bigger_k);
        CHECK(rep_k.m1 > rep.m1);
        CHECK(rep_k.m2 > rep.m2);

        auto smaller_eps = in;
        smaller_eps.epsilon = in.epsilon / 2.0;  // larger log(2N/eps)
        const auto rep_e = bounds::theorem1_bounds(smaller_eps);
        CHECK(rep_e.m1 > rep.m1);
        CHECK(rep_e.m2 > rep.m2);
    }
}

TEST_CASE("C2 >= C1 >= 1 with equality only for identical channels") {
    Rng rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(8));
        VectorXd nu(n), gamma(n);
        for (int j = 0; j < n; ++j) {
            nu[j] = rng.uniform(0.5, 5.0);
            gamma[j] = rng.uniform(0.1, 1.0);
        }
        bounds::BoundInputs in = iid_inputs();
        in.extremes = stats::EnsembleExtremes::from_vectors(gamma, nu);
        const auto rep = bounds::theorem1_bounds(in);
        CHECK(rep.c1 >= 1.0);
        CHECK(rep.c2 >= rep.c1 * (1.0 - 1e-12));
    }
    // identical channels: equality
    bounds::BoundInputs in = iid_inputs();
    in.extremes = stats::EnsembleExtremes(0.7, 0.7, 1.3, 1.3);
    const auto rep = bounds::theorem1_bounds(in);
    CHECK(rep.c1 == doctest::Approx(1.0));
    CHECK(rep.c2 == doctest::Approx(1.0));
}

TEST_CASE("estimate_R analytic values") {
    CHECK(bounds::estimate_r_analytic(1, 50) == doctest::Approx(std::sqrt(1.0 / 100.0)));
    CHECK(bounds::estimate_r_analytic(10, 20) == doctest::Approx(0.5));
    CHECK(bounds::estimate_r_analytic(10, 2) == 1.0);  // clamped
    CHECK_THROWS_AS(bounds::estimate_r_analytic(0, 10), std::invalid_argument);
}

TEST_CASE("estimate_R empirical mean is near the analytic scale") {
    std::vector<double> rs;
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(derive_seed(23, {static_cast<std::uint64_t>(trial)}));
        const auto x = model::generate_signal(100, 10, 10.0, 20.0, rng);
        const auto cfg = model::NetworkConfig::iid(100, 80, 1.0, 1.0, 1.0);
        const auto ens = model::generate_ensemble(x, cfg, rng);
        rs.push_back(bounds::estimate_r_empirical(ens.B, x));
        CHECK(rs.back() > 0.0);
        CHECK(rs.back() <= 1.0);
    }
    const double mean = oracle::mean_se(rs).mean;
    const double analytic = bounds::estimate_r_analytic(10, 80);
    CHECK(mean < 2.0 * analytic);
    CHECK(mean > 0.5 * analytic);
}

TEST_CASE("corollary_iid_bound") {
    CHECK(bounds::corollary_iid_bound(10, 100, 1.0, 0.01, 1.0) ==
          doctest::Approx(99.03487552536127).epsilon(1e-9));
    // 1/sqrt(gamma) scaling
    CHECK(bounds::corollary_iid_bound(10, 100, 0.25, 0.01, 1.0) ==
          doctest::Approx(2.0 * bounds::corollary_iid_bound(10, 100, 1.0, 0.01, 1.0)));
    CHECK_THROWS_AS(bounds::corollary_iid_bound(10, 100, 0.0, 0.01, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(bounds::corollary_iid_bound(10, 100, 1.2, 0.01, 1.0),
                    std::domain_error);
}

TEST_CASE("table1 regimes") {
    using bounds::Coupling;
    using bounds::KMode;
    const double logn = std::log(100.0);

    const auto r1 = bounds::table1_regime(KMode::sublinear, Coupling::gamma_k_const);
    CHECK(r1.formula == "k^{3/2} log N");
    CHECK(r1.evaluate(10, 100) == doctest::Approx(145.62826800423602).epsilon(1e-12));

    const auto r2 = bounds::table1_regime(KMode::linear, Coupling::gamma_k_const);
    CHECK(r2.formula == "N^{3/2} log N");
    CHECK(r2.evaluate(10, 100) == doctest::Approx(std::pow(100.0, 1.5) * logn));

    const auto r3 = bounds::table1_regime(KMode::sublinear, Coupling::gamma_k_linear);
    CHECK(r3.evaluate(10, 100, 0.05) ==
          doctest::Approx(std::pow(10.0, 1.5) / std::sqrt(0.05 * 100.0) * logn));

    const auto r4 = bounds::table1_regime(KMode::linear, Coupling::gamma_k_linear);
    CHECK(r4.evaluate(50, 100, 0.3) ==
          doctest::Approx(100.0 / std::sqrt(0.3) * logn));

    // eps outside (0, k/N)
    CHECK_THROWS_AS(r3.evaluate(10, 100, 0.2), std::domain_error);
    CHECK_THROWS_AS(r3.evaluate(10, 100, 0.0), std::domain_error);
}

TEST_CASE("general_subexp_bound value and branches") {
    CHECK(bounds::general_subexp_bound(10, 100, 1.0, 1.0, 10.0, 0.1, 0.01, 0.01, 1.0,
                                       1.0) ==
          doctest::Approx(333.5341541209126).epsilon(1e-9));

    // R1 -> 0: the sqrt branch of beta1 wins; its value only depends on rho
    const double small_r = bounds::general_subexp_bound(10, 100, 1.0, 1.0, 10.0, 1e-9,
                                                        0.01, 0.01, 1.0, 1.0);
    const double zero_r =
        bounds::general_subexp_bound(10, 100, 1.0, 1.0, 10.0, 0.0, 0.01, 0.01, 1.0, 1.0);
    CHECK(small_r == doctest::Approx(zero_r));

    // doubling rho_max doubles sqrt(k)/beta1, so the bound strictly grows
    const double base = bounds::general_subexp_bound(10, 100, 1.0, 1.0, 10.0, 0.1, 0.01,
                                                     0.01, 1.0, 1.0);
    const double doubled = bounds::general_subexp_bound(10, 100, 1.0, 2.0, 10.0, 0.1,
                                                        0.01, 0.01, 1.0, 1.0);
    CHECK(doubled > base);
    const double term_base = std::sqrt(10.0) / 0.3177648972136919;
    const double tail = std::sqrt(10.0 * std::log(1000.0));
    CHECK(doubled ==
          doctest::Approx(std::pow(2.0 * term_base + tail, 2.0)).epsilon(1e-9));

    CHECK_THROWS_AS(
        bounds::general_subexp_bound(10, 100, 0.0, 1.0, 10.0, 0.1, 0.01, 0.01, 1.0, 1.0),
        std::domain_error);
}

TEST_CASE("general bound shares the theorem-1 shape in the overlapping regime") {
    // with lambda_min = 1, rho ~ sigma_bar and matched budgets, both grow
    // linearly in k and logarithmically in N
    for (int k : {5, 10, 20}) {
        const double g = bounds::general_subexp_bound(k, 100, 1.0, 1.0, k, 0.1, 0.01,
                                                      0.01, 1.0, 1.0);
        bounds::BoundInputs in = iid_inputs();
        in.k = k;
        const double t1 = bounds::theorem1_bounds(in).m_required;
        const double ratio = g / t1;
        CHECK(ratio > 0.2);
        CHECK(ratio < 5.0);
    }
}

TEST_CASE("singular value envelope") {
    // isotropic Gaussian rows: the t=3 envelope holds nearly always
    const int m = 400, k = 5;
    int holds = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Rng rng(derive_seed(24, {static_cast<std::uint64_t>(trial)}));
        Eigen::MatrixXd a(m, k);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < k; ++j) a(i, j) = rng.normal(1.0);
        const auto env = bounds::singular_value_envelope(
            a, Eigen::MatrixXd::Identity(k, k), static_cast<double>(k), 3.0);
        holds += env.holds ? 1 : 0;
        CHECK(env.s_min_pred == doctest::Approx(std::sqrt(m) - 3.0 * std::sqrt(k)));
        CHECK(env.s_max_pred == doctest::Approx(std::sqrt(m) + 3.0 * std::sqrt(k)));
    }
    CHECK(holds >= 297);  // >= 99%

    // t = 0 collapses the envelope to a point: generic matrices must fail
    Rng rng(25);
    Eigen::MatrixXd a(60, 4);
    for (int i = 0; i < 60; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = rng.normal(1.0);
    CHECK_FALSE(bounds::singular_value_envelope(a, Eigen::MatrixXd::Identity(4, 4), 4.0,
                                                0.0)
                    .holds);

    // scaling: Sigma -> 4 Sigma with rows doubled doubles both edges
    const auto base = bounds::singular_value_envelope(
        a, Eigen::MatrixXd::Identity(4, 4), 4.0, 2.0);
    const Eigen::MatrixXd a2 = 2.0 * a;
    const auto scaled = bounds::singular_value_envelope(
        a2, 4.0 * Eigen::MatrixXd::Identity(4, 4), 16.0, 2.0);
    CHECK(scaled.s_min_pred == doctest::Approx(2.0 * base.s_min_pred));
    CHECK(scaled.s_max_pred == doctest::Approx(2.0 * base.s_max_pred));
    CHECK(scaled.s_min_obs == doctest::Approx(2.0 * base.s_min_obs));
    CHECK(scaled.s_max_obs == doctest::Approx(2.0 * base.s_max_obs));
}
