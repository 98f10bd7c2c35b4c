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

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fadecs/config.hpp"
#include "fadecs/model.hpp"
#include "fadecs/solver.hpp"

namespace fadecs::harness {

enum class ExperimentId {
    fig1_mse_vs_M,
    fig2_mse_vs_gamma,
    fig3_noniid,
    fig4_opt_gamma,
    fig5_noise,
    bernstein_validate,
    pdf_validate,
    certificate_phase,
};

std::string to_string(ExperimentId id);
ExperimentId experiment_from_string(const std::string& name);

enum class Channel { fading, awgn };
enum class GammaPolicy { uniform, optimal, random };

std::string to_string(Channel c);
std::string to_string(GammaPolicy p);

/// One cell of a sweep grid. Seeds are derived from these coordinates, so a
/// point's trials do not depend on where it sits in the grid.
struct PointSpec {
    Channel channel = Channel::fading;
    GammaPolicy policy = GammaPolicy::uniform;
    double gamma = 1.0;        // uniform-policy transmission probability
    double nu_min = 1.0;
    double nu_max = 1.0;       // == nu_min for identical channels
    int m = 0;
    double sigma_v2 = 0.0;
};

struct CurvePoint {
    PointSpec coords;
    double mean_rel_error = 0.0;
    double se_rel_error = 0.0;   // standard error of the mean
    double exact_rate = 0.0;
    int trials = 0;
    int nonconverged = 0;
};

struct ExperimentSpec {
    ExperimentId id = ExperimentId::fig1_mse_vs_M;

    int n = 100;
    int k = 10;
    double sigma_a2 = 1.0;
    double signal_lo = 10.0;
    double signal_hi = 20.0;

    std::vector<int> m_grid;
    std::vector<double> gamma_grid;
    std::vector<double> sigma_v2_grid;
    std::vector<std::pair<double, double>> nu_ranges;

    int trials = 200;
    std::uint64_t master_seed = 1;
    std::string out_path;     // empty: no files written
    int threads = 1;
    solver::SolverSettings solver;

    // statistical-validation budgets
    long stat_samples = 1'000'000;
    int bernstein_alpha_count = 10;
    int bernstein_t_count = 10;
    int bernstein_dim = 50;
    long bernstein_trials = 1'000'000;
    long isotropy_rows = 100'000;
    int isotropy_dim = 20;

    // certificate phase diagram
    std::vector<int> k_grid;
    Channel phase_channel = Channel::fading;

    void validate() const;

    /// The desk-scale defaults for each experiment.
    static ExperimentSpec defaults_for(ExperimentId id);

    /// Applies any recognized keys from a key=value config on top of the
    /// defaults for the experiment named by the `experiment` key.
    static ExperimentSpec from_config(const config::KeyValueFile& kv);
};

/// The sweep grid an experiment id expands to, in emission order.
std::vector<PointSpec> build_points(const ExperimentSpec& spec);

/// Runs trials for every grid point (optionally across threads; output is
/// byte-identical regardless) and returns one CurvePoint per PointSpec.
/// Writes <out>.csv and <out>.meta.txt when out_path is set.
std::vector<CurvePoint> run_curves(const ExperimentSpec& spec);

struct StatCheckRow {
    std::string check;
    std::string param;
    double observed = 0.0;
    double limit = 0.0;    // pass means observed <= limit
    bool pass = false;
};

/// Kolmogorov-Smirnov, moment, tail-vs-bound and isotropy checks with
/// documented thresholds. Covers the pdf_validate and bernstein_validate
/// experiments.
std::vector<StatCheckRow> validate_statistics(const ExperimentSpec& spec);

struct PhaseCell {
    int k = 0;
    int m = 0;
    int trials = 0;
    double certificate_rate = 0.0;
    double recovery_rate = 0.0;
    int rank_deficient = 0;
};

/// Fraction of trials where the sufficient condition holds and where l1
/// recovery is exact, per (k, M) cell.
std::vector<PhaseCell> certificate_phase_diagram(const ExperimentSpec& spec);

/// Dispatches on spec.id, writes the experiment's output files.
void run_experiment(const ExperimentSpec& spec);

/// Runs fn(0..count-1) on `threads` workers; results must be written to
/// disjoint slots. Rethrows the first task exception.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace fadecs::harness
