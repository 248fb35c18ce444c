#include "hobo/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hobo/gauge.hpp"
#include "hobo/io.hpp"
#include "hobo/spectral.hpp"

namespace hobo {

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::simulate: return "simulate";
        case ExperimentKind::sweep_epsilon: return "sweep-epsilon";
        case ExperimentKind::scaling_check: return "scaling-check";
        case ExperimentKind::conservation: return "conservation";
        case ExperimentKind::flowmap_continuity: return "flowmap-continuity";
        case ExperimentKind::gauge_diagnose: return "gauge-diagnose";
        case ExperimentKind::coeffs: return "coeffs";
    }
    return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    static const std::map<std::string, ExperimentKind> table = {
        {"simulate", ExperimentKind::simulate},
        {"sweep-epsilon", ExperimentKind::sweep_epsilon},
        {"scaling-check", ExperimentKind::scaling_check},
        {"conservation", ExperimentKind::conservation},
        {"flowmap-continuity", ExperimentKind::flowmap_continuity},
        {"gauge-diagnose", ExperimentKind::gauge_diagnose},
        {"coeffs", ExperimentKind::coeffs},
    };
    auto it = table.find(s);
    if (it == table.end()) throw std::invalid_argument("unknown experiment kind '" + s + "'");
    return it->second;
}

void ExperimentConfig::validate() const {
    make_grid();  // grid invariants
    if (ic != "gaussian" && ic != "sech2")
        throw std::invalid_argument("config: ic must be gaussian or sech2, got '" + ic + "'");
    if (!(ic_width > 0.0)) throw std::invalid_argument("config: ic_width must be positive");
    if (ic_h1_norm < 0.0) throw std::invalid_argument("config: ic_h1_norm must be >= 0");
    IntegratorConfig icfg{dt, t_end, snapshot_stride, dealias, max_abs_guard};
    icfg.validate();
    if (!(epsilon >= 0.0)) throw std::invalid_argument("config: epsilon must be >= 0");
    if (sweep_epsilons.empty())
        throw std::invalid_argument("config: sweep_epsilons must be nonempty");
    for (double e : sweep_epsilons)
        if (!(e >= 0.0)) throw std::invalid_argument("config: sweep epsilons must be >= 0");
    if (flowmap_deltas.empty())
        throw std::invalid_argument("config: flowmap_deltas must be nonempty");
    for (double d : flowmap_deltas)
        if (!(d >= 0.0)) throw std::invalid_argument("config: flowmap deltas must be >= 0");
    if (!(lambda >= 1.0)) throw std::invalid_argument("config: lambda must be >= 1");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
}

// ---------------------------------------------------------------------------
// flat key = value parsing
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: cannot parse '" + v + "' for key " + key);
    }
    if (pos != v.size())
        throw std::invalid_argument("config: trailing characters in '" + v + "' for key " + key);
    return x;
}

int parse_int(const std::string& key, const std::string& v) {
    double x = parse_double(key, v);
    if (x != std::floor(x))
        throw std::invalid_argument("config: key " + key + " expects an integer, got " + v);
    return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("config: key " + key + " expects true/false, got " + v);
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw std::invalid_argument("config: key " + key + " expects a list");
    return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    bool saw_physical = false, saw_direct = false, saw_explicit_route = false;

    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"experiment", [&](const std::string&, const std::string& v) { cfg.experiment = experiment_kind_from_string(v); }},
        {"grid_n", [&](const std::string& k, const std::string& v) { cfg.grid_n = parse_int(k, v); }},
        {"grid_length", [&](const std::string& k, const std::string& v) { cfg.grid_length = parse_double(k, v); }},
        {"model", [&](const std::string&, const std::string& v) { cfg.model = model_kind_from_string(v); }},
        {"use_physical", [&](const std::string& k, const std::string& v) { cfg.use_physical = parse_bool(k, v); saw_explicit_route = true; }},
        {"rho", [&](const std::string& k, const std::string& v) { cfg.rho = parse_double(k, v); saw_physical = true; }},
        {"rho1", [&](const std::string& k, const std::string& v) { cfg.rho1 = parse_double(k, v); saw_physical = true; }},
        {"h1", [&](const std::string& k, const std::string& v) { cfg.h1 = parse_double(k, v); saw_physical = true; }},
        {"g", [&](const std::string& k, const std::string& v) { cfg.g = parse_double(k, v); saw_physical = true; }},
        {"coeff_a", [&](const std::string& k, const std::string& v) { cfg.coeff_a = parse_double(k, v); saw_direct = true; }},
        {"coeff_b", [&](const std::string& k, const std::string& v) { cfg.coeff_b = parse_double(k, v); saw_direct = true; }},
        {"coeff_c", [&](const std::string& k, const std::string& v) { cfg.coeff_c = parse_double(k, v); saw_direct = true; }},
        {"coeff_d", [&](const std::string& k, const std::string& v) { cfg.coeff_d = parse_double(k, v); saw_direct = true; }},
        {"epsilon", [&](const std::string& k, const std::string& v) { cfg.epsilon = parse_double(k, v); }},
        {"ilw_a1", [&](const std::string& k, const std::string& v) { cfg.ilw_a1 = parse_double(k, v); }},
        {"ilw_a2", [&](const std::string& k, const std::string& v) { cfg.ilw_a2 = parse_double(k, v); }},
        {"ilw_depth", [&](const std::string& k, const std::string& v) { cfg.ilw_depth = parse_double(k, v); }},
        {"ic", [&](const std::string&, const std::string& v) { cfg.ic = v; }},
        {"ic_amplitude", [&](const std::string& k, const std::string& v) { cfg.ic_amplitude = parse_double(k, v); }},
        {"ic_center", [&](const std::string& k, const std::string& v) { cfg.ic_center = parse_double(k, v); }},
        {"ic_width", [&](const std::string& k, const std::string& v) { cfg.ic_width = parse_double(k, v); }},
        {"ic_h1_norm", [&](const std::string& k, const std::string& v) { cfg.ic_h1_norm = parse_double(k, v); }},
        {"dt", [&](const std::string& k, const std::string& v) { cfg.dt = parse_double(k, v); }},
        {"t_end", [&](const std::string& k, const std::string& v) { cfg.t_end = parse_double(k, v); }},
        {"snapshot_stride", [&](const std::string& k, const std::string& v) { cfg.snapshot_stride = parse_int(k, v); }},
        {"dealias", [&](const std::string& k, const std::string& v) { cfg.dealias = parse_bool(k, v); }},
        {"max_abs_guard", [&](const std::string& k, const std::string& v) { cfg.max_abs_guard = parse_double(k, v); }},
        {"seed", [&](const std::string& k, const std::string& v) { cfg.seed = parse_int(k, v); }},
        {"sweep_epsilons", [&](const std::string& k, const std::string& v) { cfg.sweep_epsilons = parse_list(k, v); }},
        {"lambda", [&](const std::string& k, const std::string& v) { cfg.lambda = parse_double(k, v); }},
        {"flowmap_deltas", [&](const std::string& k, const std::string& v) { cfg.flowmap_deltas = parse_list(k, v); }},
        {"flowmap_low", [&](const std::string& k, const std::string& v) { cfg.flowmap_low = parse_bool(k, v); }},
        {"out_dir", [&](const std::string&, const std::string& v) { cfg.out_dir = v; }},
        {"threads", [&](const std::string& k, const std::string& v) { cfg.threads = parse_int(k, v); }},
        {"override_compat", [&](const std::string& k, const std::string& v) { cfg.override_compat = parse_bool(k, v); }},
    };

    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        auto it = setters.find(key);
        if (it == setters.end())
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        it->second(key, value);
    }

    if (saw_physical && saw_direct)
        throw std::invalid_argument(
            "config: give either physical parameters (rho, rho1, h1, g) or direct "
            "coefficients (coeff_a..coeff_d), not both");
    if (!saw_explicit_route) {
        if (saw_direct) cfg.use_physical = false;
        if (saw_physical) cfg.use_physical = true;
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return config_from_manifest_text(text);
    return parse_config_text(text);
}

// ---------------------------------------------------------------------------
// model and data construction
// ---------------------------------------------------------------------------

ModelCoefficients coefficients_from_config(const ExperimentConfig& cfg) {
    ModelCoefficients m;
    if (cfg.use_physical) {
        m = coefficients_from_physical(PhysicalParams{cfg.rho, cfg.rho1, cfg.h1, cfg.g},
                                       cfg.epsilon, cfg.model);
    } else {
        m = ModelCoefficients{cfg.coeff_a, cfg.coeff_b, cfg.coeff_c, cfg.coeff_d,
                              cfg.model == ModelKind::bo ? 0.0 : cfg.epsilon, cfg.model};
    }
    if (cfg.model == ModelKind::ilw) {
        m.a1 = cfg.ilw_a1;
        m.a2 = cfg.ilw_a2;
        m.depth = cfg.ilw_depth;
    }
    m.validate();
    return m;
}

RealField initial_condition(const ExperimentConfig& cfg, const Grid& grid) {
    const double x0 = cfg.ic_center >= 0.0 ? cfg.ic_center : 0.5 * grid.length();
    const double amp = cfg.ic_amplitude;
    const double width = cfg.ic_width;
    RealField v(grid);
    if (cfg.ic == "gaussian") {
        v = RealField::from_function(grid, [&](double x) {
            const double u = (x - x0) / width;
            return amp * std::exp(-u * u);
        });
    } else if (cfg.ic == "sech2") {
        v = RealField::from_function(grid, [&](double x) {
            const double u = (x - x0) / width;
            const double s = 1.0 / std::cosh(u);
            return amp * s * s;
        });
    } else {
        throw std::invalid_argument("initial_condition: unknown family '" + cfg.ic + "'");
    }
    const double mean = v.mean();
    for (int j = 0; j < v.size(); ++j) v[j] -= mean;
    if (cfg.ic_h1_norm > 0.0) {
        const double h1 = sobolev_norm(v, 1.0);
        if (h1 <= 0.0) throw std::invalid_argument("initial_condition: cannot normalize a zero field");
        const double s = cfg.ic_h1_norm / h1;
        for (int j = 0; j < v.size(); ++j) v[j] *= s;
    }
    return v;
}

RealField flowmap_perturbation(const Grid& grid, bool low_frequency) {
    const double x0 = 0.5 * grid.length();
    RealField bump = RealField::from_function(grid, [&](double x) {
        const double u = x - x0;
        return std::exp(-u * u) * (low_frequency ? 1.0 : std::cos(12.0 * u));
    });
    SpectralField B = dealias(forward_transform(bump));
    RealField p =
        inverse_transform(project(B, low_frequency ? Projection::LO : Projection::HI));
    const double mean = p.mean();
    for (int j = 0; j < p.size(); ++j) p[j] -= mean;
    const double h1 = sobolev_norm(p, 1.0);
    if (!(h1 > 1e-12))
        throw std::invalid_argument(
            "flowmap_perturbation: grid cannot resolve the perturbation band");
    for (int j = 0; j < p.size(); ++j) p[j] /= h1;
    return p;
}

// ---------------------------------------------------------------------------
// runners
// ---------------------------------------------------------------------------

namespace {

IntegratorConfig integrator_config(const ExperimentConfig& cfg) {
    return IntegratorConfig{cfg.dt, cfg.t_end, cfg.snapshot_stride, cfg.dealias,
                            cfg.max_abs_guard};
}

double wall_seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 97.5% Student-t quantiles for small dof, used for the slope half-width
double t_quantile_975(int dof) {
    static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571,
                                   2.447,  2.365, 2.306, 2.262, 2.228};
    if (dof < 1) return 0.0;
    if (dof <= 10) return table[dof - 1];
    return 1.96;
}

}  // namespace

TrajectoryRecord run_simulate(const ExperimentConfig& cfg) {
    cfg.validate();
    const Grid grid = cfg.make_grid();
    return integrate(initial_condition(cfg, grid), coefficients_from_config(cfg),
                     integrator_config(cfg));
}

SweepResult run_epsilon_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.model != ModelKind::hbo)
        throw std::invalid_argument("sweep-epsilon: model must be hbo");
    const Grid grid = cfg.make_grid();
    const RealField v0 = initial_condition(cfg, grid);
    ModelCoefficients hbo = coefficients_from_config(cfg);
    if (!cfg.override_compat && !is_bo_compatible(hbo, 1e-9))
        throw std::invalid_argument(
            "sweep-epsilon: coefficients are not BO-compatible (3ac/4d != b); pass "
            "--override-compat for exploratory runs");
    const ModelCoefficients bo = ModelCoefficients::bo(hbo.b, hbo.c, hbo.a, hbo.d);
    const IntegratorConfig icfg = integrator_config(cfg);

    TrajectoryRecord baseline = integrate(v0, bo, icfg);
    if (baseline.status != RunStatus::completed)
        throw std::runtime_error("sweep-epsilon: BO baseline aborted: " + baseline.abort_reason);

    std::vector<double> ladder = cfg.sweep_epsilons;
    std::sort(ladder.begin(), ladder.end(), std::greater<double>());
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());

    std::vector<SweepRow> rows(ladder.size());
    auto run_member = [&](size_t i) {
        SweepRow& row = rows[i];
        row.epsilon = ladder[i];
        const auto t0 = std::chrono::steady_clock::now();
        ModelCoefficients member = hbo;
        member.epsilon = ladder[i];
        TrajectoryRecord traj = integrate(v0, member, icfg);
        row.status = traj.status;
        row.abort_reason = traj.abort_reason;
        if (traj.status != RunStatus::completed) {
            row.dist_h1 = std::numeric_limits<double>::quiet_NaN();
            row.dist_l2 = std::numeric_limits<double>::quiet_NaN();
        } else {
            double dh1 = 0.0, dl2 = 0.0;
            const size_t ns = std::min(traj.snapshots.size(), baseline.snapshots.size());
            for (size_t k = 0; k < ns; ++k) {
                SpectralField diff =
                    forward_transform(traj.snapshots[k] - baseline.snapshots[k]);
                dh1 = std::max(dh1, sobolev_norm(diff, 1.0));
                dl2 = std::max(dl2, sobolev_norm(diff, 0.0));
            }
            row.dist_h1 = dh1;
            row.dist_l2 = dl2;
        }
        row.wall_seconds = wall_seconds_since(t0);
    };

    if (cfg.threads <= 1) {
        for (size_t i = 0; i < rows.size(); ++i) run_member(i);
    } else {
        for (size_t base = 0; base < rows.size(); base += static_cast<size_t>(cfg.threads)) {
            std::vector<std::thread> pool;
            for (size_t i = base; i < std::min(rows.size(), base + static_cast<size_t>(cfg.threads)); ++i)
                pool.emplace_back(run_member, i);
            for (auto& th : pool) th.join();
        }
    }

    SweepResult result;
    result.rows = std::move(rows);
    for (const SweepRow& r : result.rows)
        if (r.status != RunStatus::completed)
            result.warnings.push_back("member eps=" + format_double(r.epsilon) +
                                      " aborted: " + r.abort_reason);

    // log-log slope over completed members with positive eps and distance
    std::vector<double> lx, ly;
    for (const SweepRow& r : result.rows)
        if (r.status == RunStatus::completed && r.epsilon > 0.0 && r.dist_h1 > 0.0) {
            lx.push_back(std::log(r.epsilon));
            ly.push_back(std::log(r.dist_h1));
        }
    if (lx.size() >= 2) {
        const size_t n = lx.size();
        double mx = 0.0, my = 0.0;
        for (size_t i = 0; i < n; ++i) { mx += lx[i]; my += ly[i]; }
        mx /= n; my /= n;
        double sxx = 0.0, sxy = 0.0;
        for (size_t i = 0; i < n; ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        result.slope = sxy / sxx;
        if (n > 2) {
            double ss = 0.0;
            for (size_t i = 0; i < n; ++i) {
                const double resid = ly[i] - my - result.slope * (lx[i] - mx);
                ss += resid * resid;
            }
            const double se = std::sqrt(ss / (n - 2) / sxx);
            result.slope_half_width = t_quantile_975(static_cast<int>(n) - 2) * se;
        }
    }

    for (size_t i = 0; i + 1 < result.rows.size(); ++i) {
        // ladder is sorted by decreasing eps: distances must not increase downward
        if (result.rows[i].status == RunStatus::completed &&
            result.rows[i + 1].status == RunStatus::completed &&
            result.rows[i + 1].dist_h1 > result.rows[i].dist_h1) {
            result.monotone = false;
            result.warnings.push_back("distance is not monotone between eps=" +
                                      format_double(result.rows[i].epsilon) + " and eps=" +
                                      format_double(result.rows[i + 1].epsilon));
        }
    }
    return result;
}

ScalingReport run_scaling_check(const ExperimentConfig& cfg) {
    cfg.validate();
    const double lam = cfg.lambda;
    const double lam_int = std::round(lam);
    if (!(std::abs(lam - lam_int) < 1e-12) || lam_int < 1.0)
        throw std::invalid_argument(
            "scaling-check: lambda must be a positive integer so the scaled field is exactly "
            "representable");
    if (cfg.model != ModelKind::hbo)
        throw std::invalid_argument("scaling-check: model must be hbo");

    ModelCoefficients base = coefficients_from_config(cfg);
    base.epsilon = 1.0;  // the scaling identity absorbs eps; both runs use eps = 1
    const Grid grid_a = cfg.make_grid();
    const RealField v0 = initial_condition(cfg, grid_a);
    IntegratorConfig icfg_a = integrator_config(cfg);

    TrajectoryRecord run_a = integrate(v0, base, icfg_a);
    if (run_a.status != RunStatus::completed)
        throw std::runtime_error("scaling-check: reference run aborted: " + run_a.abort_reason);

    const double lam3 = lam * lam * lam;
    ModelCoefficients scaled = base;
    scaled.b = base.b * lam;
    scaled.c = base.c * lam;

    const Grid grid_b(grid_a.length() / lam, grid_a.size());
    std::vector<double> vb(static_cast<size_t>(grid_b.size()));
    for (int j = 0; j < grid_b.size(); ++j) vb[static_cast<size_t>(j)] = lam * v0[j];
    IntegratorConfig icfg_b = icfg_a;
    icfg_b.t_end = cfg.t_end / lam3;
    TrajectoryRecord run_b = integrate(RealField(grid_b, std::move(vb)), scaled, icfg_b);
    if (run_b.status != RunStatus::completed)
        throw std::runtime_error("scaling-check: scaled run aborted: " + run_b.abort_reason);

    const RealField& va = run_a.snapshots.back();
    const RealField& vb_end = run_b.snapshots.back();
    double num = 0.0, den = 0.0;
    for (int j = 0; j < grid_b.size(); ++j) {
        const double target = lam * va[j];  // lam * v(lam x, t) sampled on grid_b
        num += (vb_end[j] - target) * (vb_end[j] - target);
        den += target * target;
    }
    ScalingReport rep;
    rep.lambda = lam;
    rep.t = cfg.t_end;
    rep.rel_l2_mismatch = den > 0.0 ? std::sqrt(num / den) : 0.0;
    return rep;
}

ConservationReport run_conservation(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.model == ModelKind::ilw)
        throw std::invalid_argument(
            "conservation: the energy functional is defined for HBO/BO only");
    ConservationReport rep;
    rep.trajectory = run_simulate(cfg);
    const auto& tr = rep.trajectory;
    if (tr.step_mass.empty()) return rep;
    const double m0 = tr.step_mass.front();
    const double h0 = tr.step_energy.front();
    for (size_t i = 0; i < tr.step_mass.size(); ++i) {
        rep.max_rel_drift_mass =
            std::max(rep.max_rel_drift_mass,
                     std::abs(tr.step_mass[i] - m0) / std::max(std::abs(m0), 1e-300));
        rep.max_rel_drift_energy =
            std::max(rep.max_rel_drift_energy,
                     std::abs(tr.step_energy[i] - h0) / std::max(std::abs(h0), 1e-3));
    }
    return rep;
}

FlowmapReport run_flowmap_continuity(const ExperimentConfig& cfg) {
    cfg.validate();
    const Grid grid = cfg.make_grid();
    const RealField v0 = initial_condition(cfg, grid);
    const RealField phi = flowmap_perturbation(grid, cfg.flowmap_low);
    const ModelCoefficients coeffs = coefficients_from_config(cfg);
    const IntegratorConfig icfg = integrator_config(cfg);

    TrajectoryRecord base = integrate(v0, coeffs, icfg);
    if (base.status != RunStatus::completed)
        throw std::runtime_error("flowmap-continuity: base run aborted: " + base.abort_reason);

    FlowmapReport rep;
    for (double delta : cfg.flowmap_deltas) {
        std::vector<double> vp(static_cast<size_t>(grid.size()));
        for (int j = 0; j < grid.size(); ++j) vp[static_cast<size_t>(j)] = v0[j] + delta * phi[j];
        TrajectoryRecord run = integrate(RealField(grid, std::move(vp)), coeffs, icfg);
        if (run.status != RunStatus::completed)
            throw std::runtime_error("flowmap-continuity: perturbed run aborted: " +
                                     run.abort_reason);
        FlowmapRow row;
        row.delta = delta;
        row.diff_h1 =
            sobolev_norm(run.snapshots.back() - base.snapshots.back(), 1.0);
        row.ratio = delta > 0.0 ? row.diff_h1 / delta : 0.0;  // ||phi||_H1 == 1
        rep.rows.push_back(row);
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const FlowmapRow& r : rep.rows)
        if (r.delta > 0.0) { lo = std::min(lo, r.ratio); hi = std::max(hi, r.ratio); }
    rep.ratio_spread = (hi > 0.0 && std::isfinite(lo) && lo > 0.0) ? hi / lo : 0.0;
    return rep;
}

GaugeReport run_gauge_diagnose(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.model == ModelKind::ilw)
        throw std::invalid_argument("gauge-diagnose: gauge diagnostics apply to HBO/BO");
    const ModelCoefficients coeffs = coefficients_from_config(cfg);
    TrajectoryRecord traj = run_simulate(cfg);
    GaugeReport rep;
    const bool compat = is_bo_compatible(coeffs, 1e-9);
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        RealField v = traj.snapshots[i];
        const double mean = v.mean();
        const double scale = std::max(v.max_abs(), 1e-300);
        if (std::abs(mean) >= 1e-12 * scale) {
            // the flow preserves the mean; only v0 can be off-center
            for (int j = 0; j < v.size(); ++j) v[j] -= mean;
            rep.mean_subtracted = true;
        }
        GaugeState state = gauge_forward(v, coeffs);
        GaugeRow row;
        row.t = traj.times[i];
        row.residual_35 = recovery_residual_35(v, state);
        row.residual_36 = recovery_residual_36(v, state);
        row.compat = compat;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace hobo
