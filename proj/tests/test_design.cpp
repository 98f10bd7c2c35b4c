#include <doctest.h>

#include <cmath>

#include "fadecs/design.hpp"
#include "fadecs/rng.hpp"

using namespace fadecs;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> xs) {
    VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

}  // namespace

TEST_CASE("psi closed-form cases") {
    // identical channels at a common gamma: psi = 1/sqrt(gamma)
    for (double g : {0.25, 0.5, 1.0}) {
        const VectorXd gamma = VectorXd::Constant(4, g);
        const VectorXd nu = VectorXd::Constant(4, 1.7);
        CHECK(design::psi(gamma, nu) == doctest::Approx(1.0 / std::sqrt(g)));
    }

    // two-node example with the matched design at gamma_bar = 1
    design::DesignProblem prob;
    prob.nu = vec({1.0, 10.0});
    const VectorXd gopt = design::optimal_gamma(prob);
    CHECK(design::psi(gopt, prob.nu) == doctest::Approx(10.0));

    CHECK_THROWS_AS(design::psi(vec({0.5}), vec({1.0, 2.0})), std::invalid_argument);
    CHECK_THROWS_AS(design::psi(vec({0.0, 0.5}), vec({1.0, 2.0})),
                    std::invalid_argument);
}

TEST_CASE("optimal_gamma worked examples") {
    design::DesignProblem prob;
    prob.nu = vec({1.0, 2.0, 4.0});
    prob.e_per_node = 0.5;  // gamma_bar = 0.5
    const VectorXd g = design::optimal_gamma(prob);
    CHECK(g[0] == doctest::Approx(0.5));
    CHECK(g[1] == doctest::Approx(0.125));
    CHECK(g[2] == doctest::Approx(0.03125));

    design::DesignProblem same;
    same.nu = VectorXd::Constant(5, 2.5);
    same.e_per_node = 0.8;
    const VectorXd gs = design::optimal_gamma(same);
    for (int j = 0; j < 5; ++j) CHECK(gs[j] == doctest::Approx(0.8));
}

TEST_CASE("optimal_gamma preserves caller node order") {
    design::DesignProblem prob;
    prob.nu = vec({4.0, 1.0, 2.0});  // unsorted
    const VectorXd g = design::optimal_gamma(prob);
    CHECK(g[0] == doctest::Approx(1.0 / 16.0));
    CHECK(g[1] == doctest::Approx(1.0));
    CHECK(g[2] == doctest::Approx(0.25));
}

TEST_CASE("optimal_gamma equalizes gamma_j nu_j^2 and is scale free") {
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(9));
        design::DesignProblem prob;
        prob.nu.resize(n);
        for (int j = 0; j < n; ++j) prob.nu[j] = rng.uniform(0.5, 8.0);
        prob.e_per_node = rng.uniform(0.2, 2.0);
        const VectorXd g = design::optimal_gamma(prob);
        const VectorXd products = g.cwiseProduct(prob.nu.cwiseAbs2());
        CHECK(products.maxCoeff() ==
              doctest::Approx(products.minCoeff()).epsilon(1e-12));
        for (int j = 0; j < n; ++j) {
            CHECK(g[j] > 0.0);
            CHECK(g[j] <= prob.gamma_bar() * (1.0 + 1e-12));
        }

        design::DesignProblem scaled = prob;
        scaled.nu *= 3.7;
        CHECK((design::optimal_gamma(scaled) - g).lpNorm<Eigen::Infinity>() < 1e-12);
    }
}

TEST_CASE("psi is minimized by the matched design") {
    Rng rng(32);
    for (int draw = 0; draw < 50; ++draw) {
        const int n = 6;
        design::DesignProblem prob;
        prob.nu.resize(n);
        for (int j = 0; j < n; ++j) prob.nu[j] = rng.uniform(0.5, 6.0);
        const VectorXd gopt = design::optimal_gamma(prob);
        const double best = design::psi(gopt, prob.nu);
        CHECK(best >= 1.0);
        for (int probe = 0; probe < 200; ++probe) {
            VectorXd g(n);
            for (int j = 0; j < n; ++j) g[j] = rng.uniform(0.01, 1.0);
            CHECK(design::psi(g, prob.nu) >= best * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("dense grid search at N=2 agrees with the closed form") {
    const VectorXd nu = vec({1.0, 2.0});
    design::DesignProblem prob;
    prob.nu = nu;
    const double best = design::psi(design::optimal_gamma(prob), nu);

    double grid_best = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 100; ++i) {
        for (int j = 1; j <= 100; ++j) {
            const double p = design::psi(vec({i * 0.01, j * 0.01}), nu);
            grid_best = std::min(grid_best, p);
        }
    }
    // gamma_opt = (1, 0.25) lies on the grid, so the minima coincide
    CHECK(grid_best == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("required_energy") {
    CHECK(design::required_energy(100.0, 0.2, 100, 1.0) == doctest::Approx(2000.0));
    CHECK(design::required_energy(100.0, 0.0, 100, 1.0) == 0.0);
    CHECK(design::required_energy(200.0, 0.2, 100, 1.0) ==
          doctest::Approx(2.0 * design::required_energy(100.0, 0.2, 100, 1.0)));
    CHECK_THROWS_AS(design::required_energy(-1.0, 0.2, 100, 1.0),
                    std::invalid_argument);
}

TEST_CASE("max_gamma_under_budget") {
    CHECK(design::max_gamma_under_budget(1e12, 1.0, 1.0, 10, 100, 0.01) ==
          doctest::Approx(1.0));
    const double denom = 1.0 * 1.0 * 10 * 100 * std::log(2.0 * 100 / 0.01);
    CHECK(design::max_gamma_under_budget(denom / 2.0, 1.0, 1.0, 10, 100, 0.01) ==
          doctest::Approx(0.25));

    // closed loop: running at the implied bound stays within the budget
    Rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const double e_bar = rng.uniform(10.0, 5000.0);
        const int k = 1 + static_cast<int>(rng.below(20));
        const int n = 20 + static_cast<int>(rng.below(200));
        const double eps = rng.uniform(0.001, 0.2);
        const double gstar = design::max_gamma_under_budget(e_bar, 1.0, 1.0, k, n, eps);
        CHECK(gstar <= 1.0);
        const double m = k / std::sqrt(gstar) * std::log(2.0 * n / eps);
        CHECK(design::required_energy(m, gstar, n, 1.0) <= e_bar * (1.0 + 1e-9));
    }
}

TEST_CASE("DesignProblem validation") {
    design::DesignProblem prob;
    prob.nu = vec({1.0, -2.0});
    CHECK_THROWS_AS(prob.validate(), std::invalid_argument);
    prob.nu = vec({1.0, 2.0});
    prob.sigma_a2 = 0.0;
    CHECK_THROWS_AS(prob.validate(), std::invalid_argument);
    prob.sigma_a2 = 2.0;
    prob.e_per_node = 1.0;
    CHECK(prob.gamma_bar() == doctest::Approx(0.5));
    prob.e_per_node = 10.0;
    CHECK(prob.gamma_bar() == 1.0);
}
