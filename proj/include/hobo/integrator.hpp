// integrator.hpp
// Time integration with the exact linear propagator as integrating factor and
// classical RK4 on the transformed variable.  The linear part is handled by
// modewise phase rotation and is exact for any step size; only the nonlinear
// terms see the Runge-Kutta truncation error.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hobo/grid.hpp"
#include "hobo/models.hpp"

namespace hobo {

struct IntegratorConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    int snapshot_stride = 1;     // record a snapshot every k-th step
    bool dealias = true;
    double max_abs_guard = 1e6;  // abort when the field infinity-norm exceeds this

    void validate() const;
};

enum class RunStatus { completed, aborted_nan, aborted_blowup, aborted_cfl };

std::string to_string(RunStatus s);

struct RunMetadata {
    Grid grid{2.0 * pi, 8};
    ModelCoefficients coefficients;
    IntegratorConfig config;
    std::string code_version;
};

struct TrajectoryRecord {
    // snapshot series (stride-spaced, always includes t = 0; the first
    // snapshot is the initial condition, bitwise)
    std::vector<double> times;
    std::vector<RealField> snapshots;
    std::vector<ObservableSet> observables;
    // per-step observable series (includes t = 0)
    std::vector<double> step_times;
    std::vector<double> step_mass;
    std::vector<double> step_energy;

    RunStatus status = RunStatus::completed;
    std::string abort_reason;
    std::optional<RunMetadata> meta;
};

// multiply each mode by exp(i t omega(xi)); exactly norm-preserving modewise
SpectralField linear_propagator(const SpectralField& V, double t,
                                const ModelCoefficients& coeffs);

// zero all modes with |m| > N/3
SpectralField dealias(const SpectralField& V);

// one integrating-factor RK4 step; zero mode unchanged bitwise
RealField step_ifrk4(const RealField& v, double dt, const ModelCoefficients& coeffs,
                     bool dealias = true);

TrajectoryRecord integrate(const RealField& v0, const ModelCoefficients& coeffs,
                           const IntegratorConfig& cfg);

// Reusable stepping engine (owned by one run; cheap per-step).
class Stepper {
  public:
    Stepper(const Grid& grid, const ModelCoefficients& coeffs, double dt, bool dealias);

    void step(std::vector<cplx>& V);  // in place, one step of size dt
    const TendencyOps& ops() const { return ops_; }
    double dt() const { return dt_; }

  private:
    TendencyOps ops_;
    double dt_;
    std::vector<cplx> half_phase_;  // exp(i omega dt/2)
    std::vector<cplx> full_phase_;  // exp(i omega dt)
    std::vector<cplx> k1_, k2_, k3_, k4_, work_;
};

}  // namespace hobo
