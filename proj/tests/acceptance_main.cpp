// Acceptance suite.  Runs the eight desk-scale checks end to end and prints
// one pass/fail line per criterion; exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "hobo/experiments.hpp"
#include "hobo/gauge.hpp"
#include "hobo/integrator.hpp"
#include "hobo/spectral.hpp"
#include "test_helpers.hpp"

using namespace hobo;

namespace {

int failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", index, name, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

ExperimentConfig base_config() {
    ExperimentConfig cfg;  // physical route at rho/rho1 = sqrt(3), h1 = g = 1
    cfg.grid_n = 1024;
    cfg.grid_length = 32.0 * pi;
    cfg.epsilon = 0.05;
    cfg.ic = "gaussian";
    cfg.ic_amplitude = 1.0;
    cfg.ic_width = 2.0;
    cfg.ic_h1_norm = 0.5;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.snapshot_stride = 100;
    return cfg;
}

// 1. coefficient equivalence across the density-ratio sweep
void criterion_coefficients() {
    bool pass = true;
    double gap_at_root = -1.0, min_gap_elsewhere = 1e9;
    std::vector<double> ratios;
    int nearest = 0;
    for (int i = 0; i < 20; ++i) ratios.push_back(1.1 + (2.5 - 1.1) * i / 19.0);
    for (int i = 1; i < 20; ++i)
        if (std::abs(ratios[i] - std::sqrt(3.0)) < std::abs(ratios[nearest] - std::sqrt(3.0)))
            nearest = i;
    ratios[nearest] = std::sqrt(3.0);
    for (double r : ratios) {
        ModelCoefficients m = coefficients_from_physical(PhysicalParams{r, 1.0, 1.0, 1.0}, 0.0);
        const double gap = std::abs(3.0 * m.a * m.c / (4.0 * m.d) - m.b) / m.b;
        if (r == std::sqrt(3.0)) {
            gap_at_root = gap;
            if (!(gap < 1e-12)) pass = false;
        } else {
            min_gap_elsewhere = std::min(min_gap_elsewhere, gap);
            if (!(gap > 1e-3)) pass = false;
        }
    }
    report(1, "coefficient equivalence 3ac/4d = b at rho = sqrt(3) rho1", pass,
           fmt("gap %.2e at sqrt(3) (< 1e-12), min %.2e elsewhere (> 1e-3)", gap_at_root,
               min_gap_elsewhere));
}

// 2. conservation of M and H on the standard HBO run
void criterion_conservation() {
    ExperimentConfig cfg = base_config();
    ConservationReport rep = run_conservation(cfg);
    const bool pass = rep.trajectory.status == RunStatus::completed &&
                      rep.max_rel_drift_mass < 1e-8 && rep.max_rel_drift_energy < 1e-6;
    report(2, "conservation of M and H (HBO, eps = 0.05, T = 1)", pass,
           fmt("drift M %.2e (< 1e-8), drift H %.2e (< 1e-6)", rep.max_rel_drift_mass,
               rep.max_rel_drift_energy));
}

// 3. eps -> 0 convergence against the BO baseline
void criterion_epsilon_sweep() {
    ExperimentConfig cfg = base_config();
    cfg.grid_n = 4096;  // resolves the smallest member of the ladder
    cfg.sweep_epsilons = {0.1, 0.05, 0.025, 0.0125};
    SweepResult res = run_epsilon_sweep(cfg);
    bool decreasing = true;
    for (size_t i = 0; i + 1 < res.rows.size(); ++i)
        if (!(res.rows[i + 1].dist_h1 < res.rows[i].dist_h1)) decreasing = false;
    bool completed = true;
    for (const auto& r : res.rows) completed = completed && r.status == RunStatus::completed;
    const bool slope_ok = res.slope >= 0.7 && res.slope <= 1.3;
    report(3, "HBO -> BO convergence (strictly decreasing, slope in [0.7, 1.3])",
           completed && decreasing && slope_ok,
           fmt("distances %.3e %.3e %.3e %.3e, slope %.3f +- %.3f", res.rows[0].dist_h1,
               res.rows[1].dist_h1, res.rows[2].dist_h1, res.rows[3].dist_h1, res.slope,
               res.slope_half_width));
}

// 4. lambda = 2 scaling relation
void criterion_scaling() {
    ExperimentConfig cfg = base_config();
    cfg.ic_h1_norm = 0.5;
    cfg.dt = 5e-4;
    cfg.t_end = 0.5;
    cfg.snapshot_stride = 1000;
    cfg.lambda = 2.0;
    ScalingReport rep = run_scaling_check(cfg);
    const bool pass = rep.rel_l2_mismatch < 1e-6;
    report(4, "lambda = 2 scaling relation at t = 0.5", pass,
           fmt("relative L2 mismatch %.2e (< 1e-6)", rep.rel_l2_mismatch));
}

// 5. spectral-core identity suite
void criterion_spectral_identities() {
    Grid grid(32.0 * pi, 1024);
    bool pass = true;
    double worst_parseval = 0.0;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        RealField v = hobo::testing::random_band_limited(grid, seed, grid.size() / 3);
        double quad = 0.0;
        for (double x : v.samples()) quad += x * x;
        quad *= grid.spacing();
        SpectralField V = forward_transform(v);
        double spec = 0.0;
        for (const cplx& c : V.coefficients()) spec += std::norm(c);
        spec *= grid.length();
        worst_parseval = std::max(worst_parseval, std::abs(quad - spec) / quad);
    }
    if (worst_parseval >= 1e-12) pass = false;

    double worst_hh = 0.0, worst_identity = 0.0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        RealField v = hobo::testing::random_band_limited(grid, seed + 100, grid.size() / 3);
        RealField hh = hilbert_transform(hilbert_transform(v));
        const double mean = v.mean();
        for (int j = 0; j < grid.size(); ++j)
            worst_hh = std::max(worst_hh, std::abs(hh[j] + (v[j] - mean)) / v.max_abs());
        SpectralField V = forward_transform(v);
        SpectralField H = hilbert_transform(V);
        SpectralField P = project(V, Projection::plus);
        SpectralField M = project(V, Projection::minus);
        for (int k = 0; k < grid.size(); ++k) {
            const cplx other = cplx(0.0, -1.0) * P[k] + cplx(0.0, 1.0) * M[k];
            worst_identity =
                std::max(worst_identity, std::abs(H[k] - other) / std::max(1.0, std::abs(V[k])));
        }
    }
    if (worst_hh >= 1e-12 || worst_identity >= 1e-13) pass = false;

    double worst_ladder = 0.0;
    auto ladder = lp_ladder(grid);
    for (int k = 0; k < grid.size(); ++k) {
        const double xi = grid.wavenumber(k);
        if (std::abs(xi) > ladder.back()) continue;
        double sum = 0.0;
        for (double n : ladder) sum += lp_block_symbol(n, xi);
        worst_ladder = std::max(worst_ladder, std::abs(sum - 1.0));
    }
    if (worst_ladder >= 1e-12) pass = false;

    ModelCoefficients q = ModelCoefficients::hbo(1, 1, 1, 1, 0.25);
    double worst_group = 0.0, worst_norm = 0.0;
    RealField v = hobo::testing::random_band_limited(grid, 777, grid.size() / 3);
    SpectralField V = forward_transform(v);
    SpectralField ab = linear_propagator(linear_propagator(V, 0.35, q), 0.4, q);
    SpectralField once = linear_propagator(V, 0.75, q);
    for (int k = 0; k < grid.size(); ++k) {
        worst_group =
            std::max(worst_group, std::abs(ab[k] - once[k]) / std::max(1.0, std::abs(V[k])));
        worst_norm = std::max(worst_norm, std::abs(std::abs(once[k]) - std::abs(V[k])) /
                                              std::max(1.0, std::abs(V[k])));
    }
    if (worst_group >= 1e-13 || worst_norm >= 1e-13) pass = false;

    report(5, "spectral-core identity suite", pass,
           fmt("parseval %.1e, HH %.1e, -iP+ + iP- %.1e, ladder %.1e, group %.1e, norm %.1e",
               worst_parseval, worst_hh, worst_identity, worst_ladder, worst_group, worst_norm));
}

// 6. gauge identity suite on a resolved snapshot set
void criterion_gauge() {
    ExperimentConfig cfg = base_config();
    cfg.ic_h1_norm = 0.0;
    cfg.ic_amplitude = 0.4;
    cfg.ic_width = 0.5;  // narrow enough to carry P_HI mass
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    cfg.snapshot_stride = 100;
    GaugeReport rep = run_gauge_diagnose(cfg);
    double worst35 = 0.0, worst36 = 0.0;
    for (const GaugeRow& r : rep.rows) {
        worst35 = std::max(worst35, r.residual_35);
        worst36 = std::max(worst36, r.residual_36);
    }
    bool pass = worst35 < 1e-9 && worst36 < 1e-6;

    // phase-shift invariance of residual 35
    Grid grid = cfg.make_grid();
    RealField v = initial_condition(cfg, grid);
    ModelCoefficients coeffs = coefficients_from_config(cfg);
    const double r0 = recovery_residual_35(v, gauge_forward(v, coeffs));
    const double r1 = recovery_residual_35(v, gauge_forward(v, coeffs, 1.0));
    const double shift_gap = std::abs(r0 - r1);
    if (shift_gap >= 1e-13) pass = false;

    // resonance identity vs the direct sigma difference at 1000 random points
    uint64_t s = 2024;
    double worst_res = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double a = 0.5 + std::abs(hobo::testing::uniform(s));
        const double b = 0.5 + std::abs(hobo::testing::uniform(s));
        const double eps = 0.05 + std::abs(hobo::testing::uniform(s));
        ModelCoefficients m = ModelCoefficients::hbo(a, b, 1.0, 1.0, eps);
        const double xi1 = 5.0 * std::abs(hobo::testing::uniform(s));
        const double xi2 = -xi1 * std::abs(hobo::testing::uniform(s));
        const double xi = xi1 + xi2;
        const double tau1 = 3.0 * hobo::testing::uniform(s);
        const double tau2 = 3.0 * hobo::testing::uniform(s);
        auto sigma = [&](double t, double z) {
            return t - b * std::abs(z) * z + a * eps * z * z * z;
        };
        const double direct =
            sigma(tau1 + tau2, xi) - sigma(tau1, xi1) - sigma(tau2, xi2);
        const double got = resonance_function(xi1, xi2, m);
        worst_res = std::max(worst_res,
                             std::abs(got - direct) / std::max(1.0, std::abs(direct)));
    }
    if (worst_res >= 1e-12) pass = false;

    report(6, "gauge identity suite", pass,
           fmt("residual_35 %.2e (< 1e-9), residual_36 %.2e (< 1e-6), shift gap %.1e, "
               "resonance %.1e",
               worst35, worst36, shift_gap, worst_res));
}

// 7. observed integrator order on the three model kinds
void criterion_order() {
    Grid grid(32.0 * pi, 1024);
    const double x0 = 16.0 * pi;
    RealField v0 = RealField::from_function(
        grid, [&](double x) { return 2.0 * std::exp(-(x - x0) * (x - x0)); });
    const double mean = v0.mean();
    for (int j = 0; j < grid.size(); ++j) v0[j] -= mean;

    ModelCoefficients hbo =
        coefficients_from_physical(PhysicalParams{std::sqrt(3.0), 1.0, 1.0, 1.0}, 0.05);
    ModelCoefficients bo = ModelCoefficients::bo(hbo.b, hbo.c, hbo.a, hbo.d);
    ModelCoefficients ilw = ModelCoefficients::ilw(hbo.b, hbo.c, hbo.d, 0.05, 1.0, 1.0, 1.0);
    bool pass = true;
    double orders[3] = {0, 0, 0};
    const char* names[3] = {"hbo", "bo", "ilw"};
    int idx = 0;
    for (const ModelCoefficients& coeffs : {hbo, bo, ilw}) {
        auto run = [&](double dt, int steps) {
            Stepper st(grid, coeffs, dt, true);
            SpectralField V = dealias(forward_transform(v0));
            for (int i = 0; i < steps; ++i) st.step(V.data());
            return inverse_transform(V);
        };
        RealField a = run(0.01, 10);
        RealField b2 = run(0.005, 20);
        RealField c = run(0.0025, 40);
        const double e1 = (a - b2).l2_norm();
        const double e2 = (b2 - c).l2_norm();
        orders[idx] = std::log2(e1 / e2);
        if (!(orders[idx] >= 3.8)) pass = false;
        ++idx;
    }
    report(7, "self-convergence order >= 3.8 on HBO/BO/ILW", pass,
           fmt("%s %.3f, %s %.3f, %s %.3f", names[0], orders[0], names[1], orders[1], names[2],
               orders[2]));
}

// 8. flow-map continuity ratios across the delta ladder
void criterion_flowmap() {
    ExperimentConfig cfg = base_config();
    cfg.t_end = 0.5;
    cfg.snapshot_stride = 100;
    cfg.flowmap_deltas = {1e-2, 1e-3, 1e-4};
    FlowmapReport rep = run_flowmap_continuity(cfg);
    const bool pass = rep.ratio_spread > 0.0 && rep.ratio_spread <= 3.0;
    report(8, "flow-map continuity ratios within a factor 3", pass,
           fmt("ratios %.6f %.6f %.6f, spread %.6f", rep.rows[0].ratio, rep.rows[1].ratio,
               rep.rows[2].ratio, rep.ratio_spread));
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    const auto t0 = std::chrono::steady_clock::now();
    struct {
        int index;
        void (*fn)();
    } criteria[] = {
        {1, criterion_coefficients}, {2, criterion_conservation}, {3, criterion_epsilon_sweep},
        {4, criterion_scaling},      {5, criterion_spectral_identities},
        {6, criterion_gauge},        {7, criterion_order},        {8, criterion_flowmap},
    };
    for (const auto& c : criteria) {
        if (only != 0 && c.index != only) continue;
        try {
            c.fn();
        } catch (const std::exception& e) {
            report(c.index, "criterion", false, std::string("exception: ") + e.what());
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("ACCEPTANCE: %d criterion(s) failed (%.1f s)\n", failures, secs);
    return failures == 0 ? 0 : 1;
}
