// Python bindings for the core operations: generation, statistics, bounds,
// transmission design and l1 recovery.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fadecs/bounds.hpp"
#include "fadecs/design.hpp"
#include "fadecs/harness.hpp"
#include "fadecs/model.hpp"
#include "fadecs/solver.hpp"
#include "fadecs/stats.hpp"

namespace py = pybind11;
using namespace fadecs;

namespace {

model::SparseSignal signal_from_values(const Eigen::VectorXd& values) {
    model::SparseSignal sig;
    sig.values = values;
    for (int i = 0; i < values.size(); ++i)
        if (values[i] != 0.0) sig.support.push_back(i);
    return sig;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "sparse signal recovery over fading multiple-access channels";

    py::register_exception<solver::InfeasibleError>(m, "InfeasibleError");

    py::class_<model::SparseSignal>(m, "SparseSignal")
        .def_readonly("values", &model::SparseSignal::values)
        .def_readonly("support", &model::SparseSignal::support)
        .def_property_readonly("sparsity", &model::SparseSignal::sparsity)
        .def("sign_pattern", &model::SparseSignal::sign_pattern);

    py::class_<model::NetworkConfig>(m, "NetworkConfig")
        .def(py::init([](int n, int m_, Eigen::VectorXd gamma, Eigen::VectorXd sigma,
                         Eigen::VectorXd nu, double sigma_v2) {
                 model::NetworkConfig cfg;
                 cfg.n = n;
                 cfg.m = m_;
                 cfg.gamma = std::move(gamma);
                 cfg.sigma = std::move(sigma);
                 cfg.nu = std::move(nu);
                 cfg.sigma_v2 = sigma_v2;
                 cfg.validate();
                 return cfg;
             }),
             py::arg("n"), py::arg("m"), py::arg("gamma"), py::arg("sigma"),
             py::arg("nu"), py::arg("sigma_v2") = 0.0)
        .def_static("iid", &model::NetworkConfig::iid, py::arg("n"), py::arg("m"),
                    py::arg("gamma"), py::arg("sigma_a2"), py::arg("nu_h2"),
                    py::arg("sigma_v2") = 0.0)
        .def_readonly("n", &model::NetworkConfig::n)
        .def_readonly("m", &model::NetworkConfig::m)
        .def_readonly("gamma", &model::NetworkConfig::gamma)
        .def_readonly("sigma", &model::NetworkConfig::sigma)
        .def_readonly("nu", &model::NetworkConfig::nu)
        .def_readonly("sigma_v2", &model::NetworkConfig::sigma_v2)
        .def("sigma_bar", &model::NetworkConfig::sigma_bar);

    py::class_<model::MeasurementEnsemble>(m, "MeasurementEnsemble")
        .def_readonly("A", &model::MeasurementEnsemble::A)
        .def_readonly("H", &model::MeasurementEnsemble::H)
        .def_readonly("B", &model::MeasurementEnsemble::B)
        .def_readonly("y", &model::MeasurementEnsemble::y)
        .def_readonly("v", &model::MeasurementEnsemble::v)
        .def_readonly("seed", &model::MeasurementEnsemble::seed);

    m.def(
        "generate_signal",
        [](int n, int k, double lo, double hi, std::uint64_t seed) {
            Rng rng(seed);
            return model::generate_signal(n, k, lo, hi, rng);
        },
        py::arg("n"), py::arg("k"), py::arg("lo") = 10.0, py::arg("hi") = 20.0,
        py::arg("seed") = 1);
    m.def(
        "generate_ensemble",
        [](const model::SparseSignal& x, const model::NetworkConfig& cfg,
           std::uint64_t seed) {
            Rng rng(seed);
            return model::generate_ensemble(x, cfg, rng);
        },
        py::arg("x"), py::arg("cfg"), py::arg("seed") = 1);
    m.def(
        "awgn_ensemble",
        [](const model::SparseSignal& x, const model::NetworkConfig& cfg,
           std::uint64_t seed) {
            Rng rng(seed);
            return model::awgn_ensemble(x, cfg, seed);
        },
        py::arg("x"), py::arg("cfg"), py::arg("seed") = 1);

    // statistics
    py::class_<stats::MixtureLaw>(m, "MixtureLaw")
        .def(py::init<double, double>(), py::arg("gamma"), py::arg("sigma_bar"))
        .def_readonly("gamma", &stats::MixtureLaw::gamma)
        .def_readonly("sigma_bar", &stats::MixtureLaw::sigma_bar);
    py::class_<stats::EnsembleExtremes>(m, "EnsembleExtremes")
        .def(py::init<double, double, double, double>(), py::arg("eta_max"),
             py::arg("eta_min"), py::arg("eta_tilde_max"), py::arg("eta_tilde_min"))
        .def_static("from_vectors", &stats::EnsembleExtremes::from_vectors)
        .def_readonly("eta_max", &stats::EnsembleExtremes::eta_max)
        .def_readonly("eta_min", &stats::EnsembleExtremes::eta_min)
        .def_readonly("eta_tilde_max", &stats::EnsembleExtremes::eta_tilde_max)
        .def_readonly("eta_tilde_min", &stats::EnsembleExtremes::eta_tilde_min);

    m.def("laplace_product_pdf", &stats::laplace_product_pdf, py::arg("w"),
          py::arg("sigma_a"), py::arg("nu_h"));
    m.def("mixture_tail", &stats::mixture_tail, py::arg("t"), py::arg("law"));
    m.def("mgf_exact", &stats::mgf_exact, py::arg("t"), py::arg("law"));
    m.def("mgf_bound", &stats::mgf_bound, py::arg("t"), py::arg("extremes"));
    m.def(
        "bernstein_bound",
        [](double t, const Eigen::VectorXd& alpha, const stats::EnsembleExtremes& ex) {
            const auto b = stats::bernstein_bound(
                t, std::span<const double>(alpha.data(), static_cast<std::size_t>(alpha.size())),
                ex);
            return py::make_tuple(b.raw, b.clamped);
        },
        py::arg("t"), py::arg("alpha"), py::arg("extremes"));
    m.def(
        "subexp_norm_estimate",
        [](const Eigen::VectorXd& samples, int p_max) {
            return stats::subexp_norm_estimate(
                std::span<const double>(samples.data(),
                                        static_cast<std::size_t>(samples.size())),
                p_max);
        },
        py::arg("samples"), py::arg("p_max") = 10);

    // bounds
    py::class_<bounds::BoundReport>(m, "BoundReport")
        .def_readonly("m1", &bounds::BoundReport::m1)
        .def_readonly("m2", &bounds::BoundReport::m2)
        .def_readonly("m_required", &bounds::BoundReport::m_required)
        .def_readonly("m1_dominates", &bounds::BoundReport::m1_dominates)
        .def_readonly("c1", &bounds::BoundReport::c1)
        .def_readonly("c2", &bounds::BoundReport::c2)
        .def_readonly("psi", &bounds::BoundReport::psi)
        .def_readonly("r_used", &bounds::BoundReport::r_used)
        .def_readonly("scaling_notes", &bounds::BoundReport::scaling_notes);

    m.def(
        "theorem1_bounds",
        [](int k, int n, double epsilon, double epsilon_prime, double c_prime,
           const stats::EnsembleExtremes& extremes, std::optional<double> r) {
            bounds::BoundInputs in;
            in.k = k;
            in.n = n;
            in.epsilon = epsilon;
            in.epsilon_prime = epsilon_prime;
            in.c_prime = c_prime;
            in.extremes = extremes;
            in.r_ratio = r;
            return bounds::theorem1_bounds(in);
        },
        py::arg("k"), py::arg("n"), py::arg("epsilon"), py::arg("epsilon_prime"),
        py::arg("c_prime"), py::arg("extremes"), py::arg("r") = std::nullopt);
    m.def("estimate_r_analytic", &bounds::estimate_r_analytic, py::arg("k"), py::arg("m"));
    m.def("estimate_r_empirical", &bounds::estimate_r_empirical, py::arg("B"), py::arg("x"));
    m.def("corollary_iid_bound", &bounds::corollary_iid_bound, py::arg("k"), py::arg("n"),
          py::arg("gamma"), py::arg("epsilon"), py::arg("c0") = 1.0);
    m.def("general_subexp_bound", &bounds::general_subexp_bound, py::arg("k"), py::arg("n"),
          py::arg("lambda_min"), py::arg("rho_max"), py::arg("t0"), py::arg("r1"),
          py::arg("eps1"), py::arg("eps1_prime"), py::arg("c1") = 1.0,
          py::arg("c1_prime") = 1.0);
    m.def(
        "table1_regime",
        [](const std::string& k_mode, const std::string& coupling) {
            const auto km = k_mode == "sublinear" ? bounds::KMode::sublinear
                            : k_mode == "linear"  ? bounds::KMode::linear
                                                  : throw std::invalid_argument(
                                                        "k_mode: sublinear|linear");
            const auto cp = coupling == "gamma_k_const" ? bounds::Coupling::gamma_k_const
                            : coupling == "gamma_k_linear"
                                ? bounds::Coupling::gamma_k_linear
                                : throw std::invalid_argument(
                                      "coupling: gamma_k_const|gamma_k_linear");
            return bounds::table1_regime(km, cp);
        },
        py::arg("k_mode"), py::arg("coupling"));
    py::class_<bounds::RegimeScaling>(m, "RegimeScaling")
        .def_readonly("formula", &bounds::RegimeScaling::formula)
        .def("evaluate", &bounds::RegimeScaling::evaluate, py::arg("k"), py::arg("n"),
             py::arg("coupling_param") = 0.0);

    // design
    m.def("psi", &design::psi, py::arg("gamma"), py::arg("nu"));
    m.def(
        "optimal_gamma",
        [](const Eigen::VectorXd& nu, double sigma_a2, std::optional<double> e_per_node) {
            design::DesignProblem prob;
            prob.nu = nu;
            prob.sigma_a2 = sigma_a2;
            prob.e_per_node = e_per_node;
            return design::optimal_gamma(prob);
        },
        py::arg("nu"), py::arg("sigma_a2") = 1.0, py::arg("e_per_node") = std::nullopt);
    m.def("required_energy", &design::required_energy, py::arg("m"), py::arg("gamma"),
          py::arg("n"), py::arg("sigma_a2"));
    m.def("max_gamma_under_budget", &design::max_gamma_under_budget, py::arg("e_bar"),
          py::arg("c0"), py::arg("sigma_a2"), py::arg("k"), py::arg("n"),
          py::arg("epsilon"));

    // recovery
    py::class_<solver::Certificate>(m, "Certificate")
        .def_readonly("holds", &solver::Certificate::holds)
        .def_readonly("max_correlation", &solver::Certificate::max_correlation);
    py::class_<solver::RecoveryResult>(m, "RecoveryResult")
        .def_readonly("x_hat", &solver::RecoveryResult::x_hat)
        .def_readonly("relative_error", &solver::RecoveryResult::relative_error)
        .def_readonly("exact", &solver::RecoveryResult::exact)
        .def_readonly("iterations", &solver::RecoveryResult::iterations)
        .def_readonly("duality_gap", &solver::RecoveryResult::duality_gap)
        .def_property_readonly("converged", [](const solver::RecoveryResult& r) {
            return r.status == solver::SolveStatus::converged;
        });

    m.def(
        "basis_pursuit",
        [](const Eigen::MatrixXd& b, const Eigen::VectorXd& y) {
            return solver::basis_pursuit(b, y);
        },
        py::arg("B"), py::arg("y"));
    m.def(
        "bpdn",
        [](const Eigen::MatrixXd& b, const Eigen::VectorXd& y, double eps_v) {
            return solver::bpdn(b, y, eps_v);
        },
        py::arg("B"), py::arg("y"), py::arg("eps_v"));
    m.def(
        "recovery_certificate",
        [](const Eigen::MatrixXd& b, const Eigen::VectorXd& x_values) {
            return solver::recovery_certificate(b, signal_from_values(x_values));
        },
        py::arg("B"), py::arg("x"));
    m.def(
        "brute_force_oracle",
        [](const Eigen::MatrixXd& b, const Eigen::VectorXd& y, int k_max) {
            solver::BruteForceInfo info;
            auto res = solver::brute_force_oracle(b, y, k_max, &info);
            return py::make_tuple(res, info.unique, info.winning_size);
        },
        py::arg("B"), py::arg("y"), py::arg("k_max"));
    m.def("relative_error", &solver::relative_error, py::arg("x_true"), py::arg("x_hat"));
    m.def("noise_ball_radius", &solver::noise_ball_radius, py::arg("sigma_v"), py::arg("m"));

    // harness
    m.def(
        "run_experiment_config",
        [](const std::string& config_text) {
            auto kv = config::KeyValueFile::parse_string(config_text);
            harness::run_experiment(harness::ExperimentSpec::from_config(kv));
        },
        py::arg("config_text"),
        "Run an experiment described by key=value text; writes the files named by "
        "its out= key.");
}
