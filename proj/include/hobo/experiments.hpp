// experiments.hpp
// Experiment configuration and the headline experiment runners: the
// eps -> 0 sweep against the BO baseline, the lambda-scaling check,
// conservation drift monitoring, flow-map continuity ratios, and the gauge
// residual diagnostics.

#pragma once

#include <string>
#include <vector>

#include "hobo/integrator.hpp"
#include "hobo/models.hpp"

namespace hobo {

enum class ExperimentKind {
    simulate,
    sweep_epsilon,
    scaling_check,
    conservation,
    flowmap_continuity,
    gauge_diagnose,
    coeffs,
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::simulate;

    // grid
    int grid_n = 1024;
    double grid_length = 32.0 * pi;

    // model; either the physical route (rho, rho1, h1, g) or direct
    // coefficients (coeff_a .. coeff_d), never both
    ModelKind model = ModelKind::hbo;
    bool use_physical = true;
    double rho = 1.7320508075688772;  // sqrt(3): the BO-compatible ratio
    double rho1 = 1.0;
    double h1 = 1.0;
    double g = 1.0;
    double coeff_a = 1.0;
    double coeff_b = 1.0;
    double coeff_c = 1.0;
    double coeff_d = 1.0;
    double epsilon = 0.05;
    double ilw_a1 = 1.0;
    double ilw_a2 = 1.0;
    double ilw_depth = 1.0;

    // initial condition: named family, mean-subtracted
    std::string ic = "gaussian";  // gaussian | sech2
    double ic_amplitude = 1.0;
    double ic_center = -1.0;  // negative: center of the domain
    double ic_width = 2.0;
    double ic_h1_norm = 0.0;  // > 0: rescale so that ||v0||_{H^1} equals this

    // integrator
    double dt = 1e-3;
    double t_end = 1.0;
    int snapshot_stride = 100;
    bool dealias = true;
    double max_abs_guard = 1e6;

    long seed = 0;  // reserved for randomized initial data

    // sweep-epsilon
    std::vector<double> sweep_epsilons = {0.1, 0.05, 0.025, 0.0125};

    // scaling-check
    double lambda = 2.0;

    // flowmap-continuity
    std::vector<double> flowmap_deltas = {1e-2, 1e-3, 1e-4};
    bool flowmap_low = false;  // perturb low frequencies instead of P_HI

    // harness
    std::string out_dir = "out";
    int threads = 1;
    bool override_compat = false;

    Grid make_grid() const { return Grid(grid_length, grid_n); }
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// flat key = value config file; unknown keys are errors.  A path ending in
// .json is read as a run manifest (the embedded config is extracted).
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

ModelCoefficients coefficients_from_config(const ExperimentConfig& cfg);
RealField initial_condition(const ExperimentConfig& cfg, const Grid& grid);

// ---------------------------------------------------------------------------
// results
// ---------------------------------------------------------------------------

struct SweepRow {
    double epsilon = 0.0;
    double dist_h1 = 0.0;
    double dist_l2 = 0.0;
    double wall_seconds = 0.0;
    RunStatus status = RunStatus::completed;
    std::string abort_reason;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by epsilon, strictly decreasing
    double slope = 0.0;
    double slope_half_width = 0.0;  // 95% confidence half-width of the fit
    bool monotone = true;           // distances nonincreasing as epsilon decreases
    std::vector<std::string> warnings;
};

struct ScalingReport {
    double lambda = 0.0;
    double t = 0.0;
    double rel_l2_mismatch = 0.0;
};

struct FlowmapRow {
    double delta = 0.0;
    double diff_h1 = 0.0;
    double ratio = 0.0;  // diff_h1 / (delta * ||phi||_H1)
};

struct FlowmapReport {
    std::vector<FlowmapRow> rows;
    double ratio_spread = 0.0;  // max ratio / min ratio
};

struct ConservationReport {
    TrajectoryRecord trajectory;
    double max_rel_drift_mass = 0.0;
    double max_rel_drift_energy = 0.0;  // normalized by max(|H(0)|, 1e-3)
};

struct GaugeRow {
    double t = 0.0;
    double residual_35 = 0.0;
    double residual_36 = 0.0;
    bool compat = false;
};

struct GaugeReport {
    std::vector<GaugeRow> rows;
    bool mean_subtracted = false;  // a nonzero-mean snapshot was re-centered
};

// ---------------------------------------------------------------------------
// runners
// ---------------------------------------------------------------------------

TrajectoryRecord run_simulate(const ExperimentConfig& cfg);
SweepResult run_epsilon_sweep(const ExperimentConfig& cfg);
ScalingReport run_scaling_check(const ExperimentConfig& cfg);
ConservationReport run_conservation(const ExperimentConfig& cfg);
FlowmapReport run_flowmap_continuity(const ExperimentConfig& cfg);
GaugeReport run_gauge_diagnose(const ExperimentConfig& cfg);

// deterministic P_HI- (or P_LO-) supported perturbation profile, H1 norm 1
RealField flowmap_perturbation(const Grid& grid, bool low_frequency);

}  // namespace hobo
