// Command line front end: generation, recovery, sweeps, bound evaluation,
// transmission-probability design and statistical validation.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "fadecs/bounds.hpp"
#include "fadecs/config.hpp"
#include "fadecs/design.hpp"
#include "fadecs/harness.hpp"
#include "fadecs/model.hpp"
#include "fadecs/solver.hpp"
#include "fadecs/stats.hpp"

namespace {

using fadecs::config::format_double;

// exit codes of the recover subcommand
constexpr int kExitConverged = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIterationCap = 3;

fadecs::config::KeyValueFile load_config(const std::string& path) {
    if (path.empty()) return {};
    return fadecs::config::KeyValueFile::parse_file(path);
}

Eigen::VectorXd parse_inline_vector(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) vals.push_back(std::stod(tok));
    }
    if (vals.empty()) throw std::invalid_argument("empty vector literal");
    return Eigen::Map<const Eigen::VectorXd>(vals.data(),
                                             static_cast<Eigen::Index>(vals.size()));
}

int cmd_gen(const std::string& config_path, std::uint64_t seed, int k,
            const std::string& out, bool awgn) {
    auto kv = load_config(config_path);
    const auto cfg = fadecs::config::network_from(kv);
    fadecs::Rng rng(seed);
    const auto x = fadecs::model::generate_signal(
        cfg.n, k, kv.get_double("signal_lo", 10.0), kv.get_double("signal_hi", 20.0), rng);
    const auto ens = awgn ? fadecs::model::awgn_ensemble(x, cfg, rng)
                          : fadecs::model::generate_ensemble(x, cfg, rng);

    fadecs::config::write_vector_csv(out + ".x.csv", x.values);
    fadecs::config::write_matrix_csv(out + ".A.csv", ens.A);
    fadecs::config::write_matrix_csv(out + ".H.csv", ens.H);
    fadecs::config::write_matrix_csv(out + ".B.csv", ens.B);
    fadecs::config::write_vector_csv(out + ".y.csv", ens.y);
    fadecs::config::write_vector_csv(out + ".v.csv", ens.v);
    std::ofstream meta(out + ".meta.txt");
    meta << "seed=" << seed << "\nn=" << cfg.n << "\nm=" << cfg.m << "\nk=" << k
         << "\nchannel=" << (awgn ? "awgn" : "fading")
         << "\nsigma_v2=" << format_double(cfg.sigma_v2) << "\n"
         << "files=x (signal), A (projection), H (fading), B=H.*A, y=B*x+v, v (noise)\n";
    std::cout << "wrote " << out << ".{x,A,H,B,y,v}.csv\n";
    return 0;
}

int cmd_recover(const std::string& b_path, const std::string& y_path,
                const std::string& config_path, std::uint64_t seed, int k,
                double eps_v, bool use_noise_rule, const std::string& out,
                const std::string& xhat_path) {
    Eigen::MatrixXd b;
    Eigen::VectorXd y;
    std::optional<Eigen::VectorXd> truth;
    double sigma_v2 = 0.0;

    if (!b_path.empty() && !y_path.empty()) {
        b = fadecs::config::read_matrix_csv(b_path);
        y = fadecs::config::read_vector_csv(y_path);
    } else if (!config_path.empty()) {
        auto kv = load_config(config_path);
        const auto cfg = fadecs::config::network_from(kv);
        sigma_v2 = cfg.sigma_v2;
        fadecs::Rng rng(seed);
        const auto x = fadecs::model::generate_signal(
            cfg.n, k, kv.get_double("signal_lo", 10.0), kv.get_double("signal_hi", 20.0),
            rng);
        const auto ens = fadecs::model::generate_ensemble(x, cfg, rng);
        b = ens.B;
        y = ens.y;
        truth = x.values;
    } else {
        std::cerr << "recover: need --B/--y or --config\n";
        return kExitUsage;
    }

    fadecs::solver::SolverSettings settings;
    double radius = eps_v;
    if (use_noise_rule)
        radius = fadecs::solver::noise_ball_radius(std::sqrt(sigma_v2),
                                                   static_cast<int>(b.rows()));

    fadecs::solver::RecoveryResult res;
    try {
        res = radius > 0.0 ? fadecs::solver::bpdn(b, y, radius, settings)
                           : fadecs::solver::basis_pursuit(b, y, settings);
    } catch (const fadecs::solver::InfeasibleError& e) {
        std::cerr << e.what() << "\n";
        return kExitInfeasible;
    }
    if (truth) res.score_against(*truth, settings.exact_threshold);

    std::ostringstream row;
    row << "status,iterations,duality_gap,residual_norm,l1_norm,relative_error,exact\n"
        << (res.status == fadecs::solver::SolveStatus::converged ? "converged"
                                                                 : "iteration_limit")
        << ',' << res.iterations << ',' << format_double(res.duality_gap) << ','
        << format_double((b * res.x_hat - y).norm()) << ','
        << format_double(res.x_hat.cwiseAbs().sum()) << ','
        << format_double(res.relative_error) << ',' << (res.exact ? 1 : 0) << '\n';
    if (out.empty()) {
        std::cout << row.str();
    } else {
        std::ofstream f(out);
        f << row.str();
    }
    if (!xhat_path.empty()) fadecs::config::write_vector_csv(xhat_path, res.x_hat);
    return res.status == fadecs::solver::SolveStatus::converged ? kExitConverged
                                                                : kExitIterationCap;
}

int cmd_sweep(const std::string& config_path, const std::string& experiment,
              std::uint64_t seed, int trials, const std::string& out, int threads) {
    fadecs::harness::ExperimentSpec spec;
    if (!config_path.empty()) {
        auto kv = load_config(config_path);
        if (!experiment.empty()) kv.set("experiment", experiment);
        spec = fadecs::harness::ExperimentSpec::from_config(kv);
    } else {
        spec = fadecs::harness::ExperimentSpec::defaults_for(
            fadecs::harness::experiment_from_string(experiment));
    }
    if (seed) spec.master_seed = seed;
    if (trials) spec.trials = trials;
    if (threads) spec.threads = threads;
    if (!out.empty()) spec.out_path = out;
    if (spec.out_path.empty()) {
        std::cerr << "sweep: --out is required\n";
        return kExitUsage;
    }
    fadecs::harness::run_experiment(spec);
    std::cout << "wrote " << spec.out_path << "\n";
    return 0;
}

int cmd_bounds(int k, int n, double epsilon, double epsilon_prime, double c_prime,
               const std::string& gamma_str, const std::string& sigma_str,
               const std::string& nu_str, double r_value, const std::string& out) {
    const Eigen::VectorXd gamma = parse_inline_vector(gamma_str);
    Eigen::VectorXd sigma = parse_inline_vector(sigma_str);
    Eigen::VectorXd nu = parse_inline_vector(nu_str);
    const auto broadcast = [](Eigen::VectorXd v, Eigen::Index len) {
        if (v.size() == len) return v;
        if (v.size() == 1) return Eigen::VectorXd::Constant(len, v[0]).eval();
        throw std::invalid_argument("bounds: vectors must have 1 or matching length");
    };
    const Eigen::Index len = std::max({gamma.size(), sigma.size(), nu.size()});
    const Eigen::VectorXd g = broadcast(gamma, len);
    sigma = broadcast(sigma, len);
    nu = broadcast(nu, len);

    fadecs::bounds::BoundInputs in;
    in.k = k;
    in.n = n;
    in.epsilon = epsilon;
    in.epsilon_prime = epsilon_prime;
    in.c_prime = c_prime;
    in.extremes = fadecs::stats::EnsembleExtremes::from_vectors(g, sigma.cwiseProduct(nu));
    if (r_value > 0.0) in.r_ratio = r_value;
    const auto rep = fadecs::bounds::theorem1_bounds(in);

    std::ostringstream csv;
    csv << "M1,M2,M_required,m1_dominates,C1,C2,psi,R_used\n"
        << format_double(rep.m1) << ',' << format_double(rep.m2) << ','
        << format_double(rep.m_required) << ',' << (rep.m1_dominates ? 1 : 0) << ','
        << format_double(rep.c1) << ',' << format_double(rep.c2) << ','
        << format_double(rep.psi) << ',' << format_double(rep.r_used) << '\n';
    if (out.empty()) {
        std::cout << csv.str() << "notes: " << rep.scaling_notes << "\n";
    } else {
        std::ofstream f(out);
        f << csv.str();
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int cmd_design(const std::string& nu_str, const std::string& nu_csv, double sigma_a2,
               double e_per_node, const std::string& out) {
    Eigen::VectorXd nu;
    if (!nu_csv.empty()) {
        nu = fadecs::config::read_vector_csv(nu_csv);
    } else if (!nu_str.empty()) {
        nu = parse_inline_vector(nu_str);
    } else {
        std::cerr << "design: need --nu or --nu-csv\n";
        return kExitUsage;
    }
    fadecs::design::DesignProblem prob;
    prob.nu = nu;
    prob.sigma_a2 = sigma_a2;
    if (e_per_node > 0.0) prob.e_per_node = e_per_node;
    const Eigen::VectorXd gamma = fadecs::design::optimal_gamma(prob);

    std::ostringstream csv;
    csv << "node,nu,gamma_opt\n";
    for (Eigen::Index j = 0; j < nu.size(); ++j)
        csv << j << ',' << format_double(nu[j]) << ',' << format_double(gamma[j]) << '\n';
    if (out.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(out);
        f << csv.str();
    }
    std::cout << "gamma_bar=" << format_double(prob.gamma_bar())
              << " psi_opt=" << format_double(fadecs::design::psi(gamma, nu))
              << " psi_dense=" << format_double(fadecs::design::psi(
                     Eigen::VectorXd::Ones(nu.size()), nu))
              << "\n";
    return 0;
}

int cmd_validate(const std::string& config_path, const std::string& experiment,
                 std::uint64_t seed, const std::string& out, int threads) {
    fadecs::harness::ExperimentSpec spec;
    if (!config_path.empty()) {
        auto kv = load_config(config_path);
        if (!experiment.empty()) kv.set("experiment", experiment);
        if (!kv.has("experiment")) kv.set("experiment", "pdf_validate");
        spec = fadecs::harness::ExperimentSpec::from_config(kv);
    } else {
        spec = fadecs::harness::ExperimentSpec::defaults_for(
            experiment.empty() ? fadecs::harness::ExperimentId::pdf_validate
                               : fadecs::harness::experiment_from_string(experiment));
    }
    if (seed) spec.master_seed = seed;
    if (threads) spec.threads = threads;
    spec.out_path = out;
    const auto rows = fadecs::harness::validate_statistics(spec);
    int failures = 0;
    for (const auto& r : rows) {
        if (!r.pass) ++failures;
        std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.check << " (" << r.param
                  << "): observed " << format_double(r.observed) << " vs limit "
                  << format_double(r.limit) << "\n";
    }
    std::cout << rows.size() - failures << "/" << rows.size() << " checks passed\n";
    return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse signal recovery over fading multiple-access channels"};
    app.require_subcommand(1);

    std::string config_path, out, experiment, b_path, y_path, xhat_path;
    std::string gamma_str = "1", sigma_str = "1", nu_str = "1", nu_csv;
    std::uint64_t seed = 0;
    int k = 10, trials = 0, threads = 0, n = 100;
    double eps_v = 0.0, epsilon = 0.01, epsilon_prime = 0.01, c_prime = 1.0;
    double r_value = 0.0, sigma_a2 = 1.0, e_per_node = 0.0;
    bool awgn = false, use_noise_rule = false;

    auto* gen = app.add_subcommand("gen", "generate a signal and measurement ensemble");
    gen->add_option("--config", config_path, "network config (key=value)")->required();
    gen->add_option("--seed", seed, "generator seed")->default_val(1);
    gen->add_option("--k", k, "signal sparsity");
    gen->add_option("--out", out, "output path prefix")->required();
    gen->add_flag("--awgn", awgn, "disable fading (H = all ones)");

    auto* rec = app.add_subcommand("recover", "solve the l1 program for one instance");
    rec->add_option("--B", b_path, "effective matrix CSV");
    rec->add_option("--y", y_path, "measurement vector CSV");
    rec->add_option("--config", config_path, "generate the instance from this config");
    rec->add_option("--seed", seed, "generator seed")->default_val(1);
    rec->add_option("--k", k, "signal sparsity (generated instances)");
    rec->add_option("--eps-v", eps_v, "noise ball radius; 0 solves the equality program");
    rec->add_flag("--noise-rule", use_noise_rule,
                  "derive eps_v from the config's sigma_v2");
    rec->add_option("--out", out, "result CSV (stdout when omitted)");
    rec->add_option("--save-xhat", xhat_path, "write the estimate as CSV");

    auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo experiment");
    sweep->add_option("--config", config_path, "experiment config (key=value)");
    sweep->add_option("--experiment", experiment, "experiment id");
    sweep->add_option("--seed", seed, "master seed (overrides config)");
    sweep->add_option("--trials", trials, "trials per grid point (overrides config)");
    sweep->add_option("--out", out, "output CSV path");
    sweep->add_option("--threads", threads, "worker threads");

    auto* bnd = app.add_subcommand("bounds", "evaluate the measurement-count bounds");
    bnd->add_option("--k", k, "sparsity")->default_val(10);
    bnd->add_option("--n", n, "dimension")->default_val(100);
    bnd->add_option("--epsilon", epsilon, "support failure budget");
    bnd->add_option("--epsilon-prime", epsilon_prime, "conditioning failure budget");
    bnd->add_option("--c-prime", c_prime, "absolute constant");
    bnd->add_option("--gamma", gamma_str, "gamma vector (scalar or comma list)");
    bnd->add_option("--sigma", sigma_str, "amplitude std vector");
    bnd->add_option("--nu", nu_str, "Rayleigh scale vector");
    bnd->add_option("--R", r_value, "fix R instead of the analytic estimate");
    bnd->add_option("--out", out, "report CSV (stdout when omitted)");

    auto* des = app.add_subcommand("design", "fading-matched transmission probabilities");
    des->add_option("--nu", nu_str, "Rayleigh scales, comma separated");
    des->add_option("--nu-csv", nu_csv, "Rayleigh scales from a CSV file");
    des->add_option("--sigma-a2", sigma_a2, "common amplitude variance");
    des->add_option("--E", e_per_node, "per-node power cap (sets gamma_bar)");
    des->add_option("--out", out, "gamma CSV (stdout when omitted)");

    auto* val = app.add_subcommand("validate", "statistical validation report");
    val->add_option("--config", config_path, "validation config");
    val->add_option("--experiment", experiment, "pdf_validate or bernstein_validate");
    val->add_option("--seed", seed, "master seed");
    val->add_option("--out", out, "report CSV path");
    val->add_option("--threads", threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(config_path, seed, k, out, awgn);
        if (rec->parsed())
            return cmd_recover(b_path, y_path, config_path, seed, k, eps_v,
                               use_noise_rule, out, xhat_path);
        if (sweep->parsed())
            return cmd_sweep(config_path, experiment, seed, trials, out, threads);
        if (bnd->parsed())
            return cmd_bounds(k, n, epsilon, epsilon_prime, c_prime, gamma_str,
                              sigma_str, nu_str, r_value, out);
        if (des->parsed()) return cmd_design(nu_str, nu_csv, sigma_a2, e_per_node, out);
        if (val->parsed())
            return cmd_validate(config_path, experiment, seed, out, threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
