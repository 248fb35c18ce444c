// hobo command-line harness.
//
// Subcommands: simulate, sweep-epsilon, scaling-check, conservation,
// flowmap-continuity, gauge-diagnose, coeffs.  Each run writes a JSON
// manifest plus the experiment's CSV tables into --out; a run is
// reproducible from its manifest alone (pass it back via --config).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hobo/experiments.hpp"
#include "hobo/io.hpp"
#include "hobo/version.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    int threads = 1;
    bool override_compat = false;
    bool threads_set = false;
    bool out_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "config file (flat key=value, or a run manifest .json)");
    cmd->add_option("--out", opts.out_dir, "output directory")->each([&](const std::string&) {
        opts.out_set = true;
    });
    cmd->add_option("--threads", opts.threads, "sweep worker threads (default 1; 1 = bit-reproducible outputs)")
        ->each([&](const std::string&) { opts.threads_set = true; });
    cmd->add_flag("--override-compat", opts.override_compat,
                  "allow non-BO-compatible coefficients in sweep-epsilon");
}

hobo::ExperimentConfig make_config(const CommonOpts& opts, hobo::ExperimentKind kind) {
    hobo::ExperimentConfig cfg;
    if (!opts.config_path.empty()) cfg = hobo::load_config(opts.config_path);
    cfg.experiment = kind;
    if (opts.out_set) cfg.out_dir = opts.out_dir;
    if (opts.threads_set) cfg.threads = opts.threads;
    if (opts.override_compat) cfg.override_compat = true;
    cfg.validate();
    return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_command(const CommonOpts& opts, hobo::ExperimentKind kind) {
    const auto t0 = std::chrono::steady_clock::now();
    hobo::ExperimentConfig cfg = make_config(opts, kind);
    const std::filesystem::path out(cfg.out_dir);
    hobo::prepare_output_dir(out);  // fail before any computation starts
    const bool deterministic = cfg.threads <= 1;

    switch (kind) {
        case hobo::ExperimentKind::simulate: {
            hobo::TrajectoryRecord traj = hobo::run_simulate(cfg);
            hobo::emit_conservation_csv(out / "observables.csv", traj);
            hobo::emit_snapshots(out, traj);
            std::cout << "simulate: " << to_string(traj.status) << ", " << traj.snapshots.size()
                      << " snapshots";
            if (!traj.abort_reason.empty()) std::cout << " (" << traj.abort_reason << ")";
            std::cout << "\n";
            break;
        }
        case hobo::ExperimentKind::sweep_epsilon: {
            hobo::SweepResult res = hobo::run_epsilon_sweep(cfg);
            hobo::emit_sweep_csv(out / "sweep.csv", res, deterministic);
            std::cout << "sweep-epsilon: slope " << hobo::format_double(res.slope) << " +- "
                      << hobo::format_double(res.slope_half_width)
                      << (res.monotone ? "" : " [NOT MONOTONE]") << "\n";
            for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
            break;
        }
        case hobo::ExperimentKind::scaling_check: {
            hobo::ScalingReport rep = hobo::run_scaling_check(cfg);
            hobo::emit_scaling_csv(out / "scaling.csv", rep);
            std::cout << "scaling-check: lambda " << rep.lambda << ", rel L2 mismatch "
                      << hobo::format_double(rep.rel_l2_mismatch) << "\n";
            break;
        }
        case hobo::ExperimentKind::conservation: {
            hobo::ConservationReport rep = hobo::run_conservation(cfg);
            hobo::emit_conservation_csv(out / "conservation.csv", rep.trajectory);
            std::cout << "conservation: max rel drift M "
                      << hobo::format_double(rep.max_rel_drift_mass) << ", H "
                      << hobo::format_double(rep.max_rel_drift_energy) << " ("
                      << to_string(rep.trajectory.status) << ")\n";
            break;
        }
        case hobo::ExperimentKind::flowmap_continuity: {
            hobo::FlowmapReport rep = hobo::run_flowmap_continuity(cfg);
            hobo::emit_flowmap_csv(out / "flowmap.csv", rep);
            std::cout << "flowmap-continuity: ratio spread "
                      << hobo::format_double(rep.ratio_spread) << "\n";
            break;
        }
        case hobo::ExperimentKind::gauge_diagnose: {
            hobo::GaugeReport rep = hobo::run_gauge_diagnose(cfg);
            hobo::emit_gauge_csv(out / "gauge.csv", rep);
            if (rep.mean_subtracted)
                std::cerr << "warning: nonzero-mean snapshot re-centered before gauge evaluation\n";
            std::cout << "gauge-diagnose: " << rep.rows.size() << " snapshots\n";
            break;
        }
        case hobo::ExperimentKind::coeffs:
            break;  // handled separately
    }

    hobo::write_manifest(out / "manifest.json", cfg, seconds_since(t0));
    return 0;
}

int run_coeffs(const CommonOpts& opts, double rho, double rho1, double h1, double g) {
    hobo::ExperimentConfig cfg = make_config(opts, hobo::ExperimentKind::coeffs);
    if (rho > 0.0) { cfg.use_physical = true; cfg.rho = rho; }
    if (rho1 > 0.0) cfg.rho1 = rho1;
    if (h1 > 0.0) cfg.h1 = h1;
    if (g > 0.0) cfg.g = g;
    hobo::ModelCoefficients m = hobo::coefficients_from_config(cfg);
    const double lhs = 3.0 * m.a * m.c / (4.0 * m.d);
    std::printf("a = %.17g\n", m.a);
    std::printf("b = %.17g\n", m.b);
    std::printf("c = %.17g\n", m.c);
    std::printf("d = %.17g\n", m.d);
    std::printf("3ac/(4d) = %.17g vs b = %.17g, relative gap %.3e -> %s\n", lhs, m.b,
                std::abs(lhs - m.b) / std::abs(m.b),
                hobo::is_bo_compatible(m, 1e-9) ? "BO-compatible" : "not compatible");
    if (!cfg.out_dir.empty() && opts.out_set) {
        const std::filesystem::path out(cfg.out_dir);
        hobo::prepare_output_dir(out);
        hobo::write_manifest(out / "manifest.json", cfg, 0.0);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral laboratory for the higher-order Benjamin-Ono equation"};
    app.set_version_flag("--version", hobo::kCodeVersion);
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* desc;
        hobo::ExperimentKind kind;
    };
    const Sub subs[] = {
        {"simulate", "integrate one trajectory and store snapshots", hobo::ExperimentKind::simulate},
        {"sweep-epsilon", "HBO vs BO distance over an epsilon ladder", hobo::ExperimentKind::sweep_epsilon},
        {"scaling-check", "lambda-scaling consistency of the flow", hobo::ExperimentKind::scaling_check},
        {"conservation", "M and H drift monitoring", hobo::ExperimentKind::conservation},
        {"flowmap-continuity", "difference-quotient ratios for perturbed data", hobo::ExperimentKind::flowmap_continuity},
        {"gauge-diagnose", "gauge recovery residuals along a trajectory", hobo::ExperimentKind::gauge_diagnose},
    };

    std::vector<std::unique_ptr<CommonOpts>> opt_store;
    for (const Sub& s : subs) {
        auto opts = std::make_unique<CommonOpts>();
        CLI::App* cmd = app.add_subcommand(s.name, s.desc);
        add_common(cmd, *opts);
        hobo::ExperimentKind kind = s.kind;
        CommonOpts* optr = opts.get();
        cmd->callback([optr, kind]() {
            if (run_command(*optr, kind) != 0) throw CLI::RuntimeError(1);
        });
        opt_store.push_back(std::move(opts));
    }

    auto coeff_opts = std::make_unique<CommonOpts>();
    double rho = -1.0, rho1 = -1.0, h1 = -1.0, g = -1.0;
    CLI::App* coeffs_cmd =
        app.add_subcommand("coeffs", "print a, b, c, d and the 3ac/(4d) vs b comparison");
    add_common(coeffs_cmd, *coeff_opts);
    coeffs_cmd->add_option("--rho", rho, "lower-fluid density");
    coeffs_cmd->add_option("--rho1", rho1, "upper-fluid density");
    coeffs_cmd->add_option("--h1", h1, "upper-layer depth");
    coeffs_cmd->add_option("--g", g, "gravitational acceleration");
    CommonOpts* coptr = coeff_opts.get();
    double* rp = &rho; double* r1p = &rho1; double* h1p = &h1; double* gp = &g;
    coeffs_cmd->callback([coptr, rp, r1p, h1p, gp]() {
        if (run_coeffs(*coptr, *rp, *r1p, *h1p, *gp) != 0) throw CLI::RuntimeError(1);
    });
    opt_store.push_back(std::move(coeff_opts));

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
