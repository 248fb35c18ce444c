#include "hobo/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "hobo/version.hpp"

namespace hobo {

using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << header << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            out << row[i];
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// binary snapshots
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'H', 'O', 'B', 'O'};
constexpr uint32_t kFormatVersion = 1;

void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f64(std::string& out, double x) { put_u64(out, std::bit_cast<uint64_t>(x)); }

uint32_t get_u32(const char* p) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}
uint64_t get_u64(const char* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}
double get_f64(const char* p) { return std::bit_cast<double>(get_u64(p)); }

}  // namespace

void write_snapshot(const std::filesystem::path& path, const RealField& field) {
    std::string bytes;
    bytes.reserve(16 + 8 * static_cast<size_t>(field.size()));
    bytes.append(kMagic, 4);
    put_u32(bytes, kFormatVersion);
    put_u64(bytes, static_cast<uint64_t>(field.size()));
    put_f64(bytes, field.grid().length());
    for (double v : field.samples()) put_f64(bytes, v);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

RealField read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot '" + path.string() + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < 24 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw std::runtime_error("'" + path.string() + "' is not a HOBO snapshot");
    const uint32_t version = get_u32(bytes.data() + 4);
    if (version != kFormatVersion)
        throw std::runtime_error("unsupported snapshot format version " + std::to_string(version));
    const uint64_t n = get_u64(bytes.data() + 8);
    const double length = get_f64(bytes.data() + 16);
    if (bytes.size() != 24 + 8 * n)
        throw std::runtime_error("snapshot '" + path.string() + "' is truncated");
    std::vector<double> samples(static_cast<size_t>(n));
    for (uint64_t j = 0; j < n; ++j) samples[static_cast<size_t>(j)] = get_f64(bytes.data() + 24 + 8 * j);
    return RealField(Grid(length, static_cast<int>(n)), std::move(samples));
}

// ---------------------------------------------------------------------------
// manifest
// ---------------------------------------------------------------------------

static json config_to_json(const ExperimentConfig& c) {
    json j;
    j["experiment"] = to_string(c.experiment);
    j["grid_n"] = c.grid_n;
    j["grid_length"] = c.grid_length;
    j["model"] = to_string(c.model);
    j["use_physical"] = c.use_physical;
    j["rho"] = c.rho;
    j["rho1"] = c.rho1;
    j["h1"] = c.h1;
    j["g"] = c.g;
    j["coeff_a"] = c.coeff_a;
    j["coeff_b"] = c.coeff_b;
    j["coeff_c"] = c.coeff_c;
    j["coeff_d"] = c.coeff_d;
    j["epsilon"] = c.epsilon;
    j["ilw_a1"] = c.ilw_a1;
    j["ilw_a2"] = c.ilw_a2;
    j["ilw_depth"] = c.ilw_depth;
    j["ic"] = c.ic;
    j["ic_amplitude"] = c.ic_amplitude;
    j["ic_center"] = c.ic_center;
    j["ic_width"] = c.ic_width;
    j["ic_h1_norm"] = c.ic_h1_norm;
    j["dt"] = c.dt;
    j["t_end"] = c.t_end;
    j["snapshot_stride"] = c.snapshot_stride;
    j["dealias"] = c.dealias;
    j["max_abs_guard"] = c.max_abs_guard;
    j["seed"] = c.seed;
    j["sweep_epsilons"] = c.sweep_epsilons;
    j["lambda"] = c.lambda;
    j["flowmap_deltas"] = c.flowmap_deltas;
    j["flowmap_low"] = c.flowmap_low;
    j["out_dir"] = c.out_dir;
    j["threads"] = c.threads;
    j["override_compat"] = c.override_compat;
    return j;
}

static ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    std::map<std::string, std::function<void(const json&)>> setters = {
        {"experiment", [&](const json& v) { c.experiment = experiment_kind_from_string(v.get<std::string>()); }},
        {"grid_n", [&](const json& v) { c.grid_n = v.get<int>(); }},
        {"grid_length", [&](const json& v) { c.grid_length = v.get<double>(); }},
        {"model", [&](const json& v) { c.model = model_kind_from_string(v.get<std::string>()); }},
        {"use_physical", [&](const json& v) { c.use_physical = v.get<bool>(); }},
        {"rho", [&](const json& v) { c.rho = v.get<double>(); }},
        {"rho1", [&](const json& v) { c.rho1 = v.get<double>(); }},
        {"h1", [&](const json& v) { c.h1 = v.get<double>(); }},
        {"g", [&](const json& v) { c.g = v.get<double>(); }},
        {"coeff_a", [&](const json& v) { c.coeff_a = v.get<double>(); }},
        {"coeff_b", [&](const json& v) { c.coeff_b = v.get<double>(); }},
        {"coeff_c", [&](const json& v) { c.coeff_c = v.get<double>(); }},
        {"coeff_d", [&](const json& v) { c.coeff_d = v.get<double>(); }},
        {"epsilon", [&](const json& v) { c.epsilon = v.get<double>(); }},
        {"ilw_a1", [&](const json& v) { c.ilw_a1 = v.get<double>(); }},
        {"ilw_a2", [&](const json& v) { c.ilw_a2 = v.get<double>(); }},
        {"ilw_depth", [&](const json& v) { c.ilw_depth = v.get<double>(); }},
        {"ic", [&](const json& v) { c.ic = v.get<std::string>(); }},
        {"ic_amplitude", [&](const json& v) { c.ic_amplitude = v.get<double>(); }},
        {"ic_center", [&](const json& v) { c.ic_center = v.get<double>(); }},
        {"ic_width", [&](const json& v) { c.ic_width = v.get<double>(); }},
        {"ic_h1_norm", [&](const json& v) { c.ic_h1_norm = v.get<double>(); }},
        {"dt", [&](const json& v) { c.dt = v.get<double>(); }},
        {"t_end", [&](const json& v) { c.t_end = v.get<double>(); }},
        {"snapshot_stride", [&](const json& v) { c.snapshot_stride = v.get<int>(); }},
        {"dealias", [&](const json& v) { c.dealias = v.get<bool>(); }},
        {"max_abs_guard", [&](const json& v) { c.max_abs_guard = v.get<double>(); }},
        {"seed", [&](const json& v) { c.seed = v.get<long>(); }},
        {"sweep_epsilons", [&](const json& v) { c.sweep_epsilons = v.get<std::vector<double>>(); }},
        {"lambda", [&](const json& v) { c.lambda = v.get<double>(); }},
        {"flowmap_deltas", [&](const json& v) { c.flowmap_deltas = v.get<std::vector<double>>(); }},
        {"flowmap_low", [&](const json& v) { c.flowmap_low = v.get<bool>(); }},
        {"out_dir", [&](const json& v) { c.out_dir = v.get<std::string>(); }},
        {"threads", [&](const json& v) { c.threads = v.get<int>(); }},
        {"override_compat", [&](const json& v) { c.override_compat = v.get<bool>(); }},
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto s = setters.find(it.key());
        if (s == setters.end())
            throw std::invalid_argument("manifest config: unknown key '" + it.key() + "'");
        s->second(it.value());
    }
    c.validate();
    return c;
}

std::string manifest_json(const ExperimentConfig& cfg, double wall_seconds_total) {
    json j;
    j["tool"] = "hobo";
    j["code_version"] = kCodeVersion;
    j["units"] = "dimensionless model units";
    j["config"] = config_to_json(cfg);
    j["timing"] = {{"wall_seconds_total", wall_seconds_total}};
    return j.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& path, const ExperimentConfig& cfg,
                    double wall_seconds_total) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << manifest_json(cfg, wall_seconds_total);
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

ExperimentConfig config_from_manifest_text(const std::string& json_text) {
    json j = json::parse(json_text);
    if (j.contains("config")) return config_from_json(j["config"]);
    return config_from_json(j);  // also accept a bare config object
}

void prepare_output_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() +
                                     "': " + ec.message());
    const auto probe = dir / ".write_probe";
    {
        std::ofstream out(probe, std::ios::binary);
        if (!out) throw std::runtime_error("output directory '" + dir.string() + "' is not writable");
        out << "ok";
    }
    std::filesystem::remove(probe, ec);
}

// ---------------------------------------------------------------------------
// per-experiment emitters
// ---------------------------------------------------------------------------

void emit_conservation_csv(const std::filesystem::path& path, const TrajectoryRecord& traj) {
    std::vector<std::vector<std::string>> rows;
    if (!traj.step_times.empty()) {
        const double m0 = traj.step_mass.front();
        const double h0 = traj.step_energy.front();
        for (size_t i = 0; i < traj.step_times.size(); ++i) {
            const double dm = std::abs(traj.step_mass[i] - m0) / std::max(std::abs(m0), 1e-300);
            const double dh = std::abs(traj.step_energy[i] - h0) / std::max(std::abs(h0), 1e-3);
            rows.push_back({format_double(traj.step_times[i]), format_double(traj.step_mass[i]),
                            format_double(traj.step_energy[i]), format_double(dm),
                            format_double(dh)});
        }
    }
    write_csv(path, "t,M,H,rel_drift_M,rel_drift_H", rows);
}

void emit_sweep_csv(const std::filesystem::path& path, const SweepResult& result,
                    bool deterministic_timing) {
    std::vector<std::vector<std::string>> rows;
    for (const SweepRow& r : result.rows) {
        rows.push_back({format_double(r.epsilon), format_double(r.dist_h1),
                        format_double(r.dist_l2),
                        format_double(deterministic_timing ? 0.0 : r.wall_seconds)});
    }
    write_csv(path, "epsilon,dist_H1,dist_L2,wall_seconds", rows);
}

void emit_gauge_csv(const std::filesystem::path& path, const GaugeReport& report) {
    std::vector<std::vector<std::string>> rows;
    for (const GaugeRow& r : report.rows) {
        rows.push_back({format_double(r.t), format_double(r.residual_35),
                        format_double(r.residual_36), r.compat ? "1" : "0"});
    }
    write_csv(path, "t,residual_35,residual_36,compat", rows);
}

void emit_flowmap_csv(const std::filesystem::path& path, const FlowmapReport& report) {
    std::vector<std::vector<std::string>> rows;
    for (const FlowmapRow& r : report.rows)
        rows.push_back({format_double(r.delta), format_double(r.diff_h1), format_double(r.ratio)});
    write_csv(path, "delta,diff_H1,ratio", rows);
}

void emit_scaling_csv(const std::filesystem::path& path, const ScalingReport& report) {
    write_csv(path, "lambda,t,rel_L2_mismatch",
              {{format_double(report.lambda), format_double(report.t),
                format_double(report.rel_l2_mismatch)}});
}

void emit_snapshots(const std::filesystem::path& dir, const TrajectoryRecord& traj) {
    if (!traj.meta) throw std::runtime_error("emit_snapshots: trajectory has no metadata");
    const double dt = traj.meta->config.dt;
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        const long step = std::lround(traj.times[i] / dt);
        char name[32];
        std::snprintf(name, sizeof(name), "snapshot_%06ld.bin", step);
        write_snapshot(dir / name, traj.snapshots[i]);
    }
}

}  // namespace hobo
