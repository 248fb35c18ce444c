// io.hpp
// Output persistence: CSV tables, the JSON run manifest, and the binary
// snapshot format (magic "HOBO", version u32, N u64, L f64, N f64 samples,
// all little-endian).

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hobo/experiments.hpp"
#include "hobo/grid.hpp"

namespace hobo {

// deterministic shortest round-trip formatting ("%.17g")
std::string format_double(double x);

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows);

void write_snapshot(const std::filesystem::path& path, const RealField& field);
RealField read_snapshot(const std::filesystem::path& path);

std::string manifest_json(const ExperimentConfig& cfg, double wall_seconds_total);
void write_manifest(const std::filesystem::path& path, const ExperimentConfig& cfg,
                    double wall_seconds_total);
ExperimentConfig config_from_manifest_text(const std::string& json_text);

// creates the directory and verifies it is writable; throws otherwise
void prepare_output_dir(const std::filesystem::path& dir);

// per-experiment emitters (CSV schemas fixed by the external interface)
void emit_conservation_csv(const std::filesystem::path& path, const TrajectoryRecord& traj);
void emit_sweep_csv(const std::filesystem::path& path, const SweepResult& result,
                    bool deterministic_timing);
void emit_gauge_csv(const std::filesystem::path& path, const GaugeReport& report);
void emit_flowmap_csv(const std::filesystem::path& path, const FlowmapReport& report);
void emit_scaling_csv(const std::filesystem::path& path, const ScalingReport& report);
void emit_snapshots(const std::filesystem::path& dir, const TrajectoryRecord& traj);

}  // namespace hobo
