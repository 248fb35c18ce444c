#include "hobo/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include "hobo/fft.hpp"
#include "hobo/spectral.hpp"
#include "hobo/version.hpp"

namespace hobo {

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("IntegratorConfig: dt must be positive and finite");
    if (!(t_end > 0.0)) throw std::invalid_argument("IntegratorConfig: t_end must be positive");
    if (snapshot_stride < 1)
        throw std::invalid_argument("IntegratorConfig: snapshot_stride must be >= 1");
    if (!(max_abs_guard > 0.0))
        throw std::invalid_argument("IntegratorConfig: max_abs_guard must be positive");
}

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::completed: return "completed";
        case RunStatus::aborted_nan: return "aborted_nan";
        case RunStatus::aborted_blowup: return "aborted_blowup";
        case RunStatus::aborted_cfl: return "aborted_cfl";
    }
    return "?";
}

SpectralField linear_propagator(const SpectralField& V, double t,
                                const ModelCoefficients& coeffs) {
    std::vector<cplx> out(V.coefficients().begin(), V.coefficients().end());
    for (int k = 0; k < V.size(); ++k) {
        const double w = dispersion_relation(V.grid().wavenumber(k), coeffs);
        out[static_cast<size_t>(k)] *= std::polar(1.0, t * w);
    }
    return SpectralField(V.grid(), std::move(out));
}

SpectralField dealias(const SpectralField& V) {
    std::vector<cplx> out(V.coefficients().begin(), V.coefficients().end());
    const int n = V.size();
    for (int k = 0; k < n; ++k)
        if (3 * std::abs(V.grid().mode(k)) > n) out[static_cast<size_t>(k)] = cplx(0.0);
    return SpectralField(V.grid(), std::move(out));
}

Stepper::Stepper(const Grid& grid, const ModelCoefficients& coeffs, double dt, bool dealias)
    : ops_(grid, coeffs, dealias), dt_(dt) {
    const size_t n = static_cast<size_t>(grid.size());
    half_phase_.resize(n);
    full_phase_.resize(n);
    for (size_t k = 0; k < n; ++k) {
        const double w = ops_.omega()[k];
        half_phase_[k] = std::polar(1.0, 0.5 * dt * w);
        full_phase_[k] = std::polar(1.0, dt * w);
    }
}

void Stepper::step(std::vector<cplx>& V) {
    const size_t n = V.size();
    const cplx v0_mean = V[0];

    ops_.nonlinear(V, k1_);
    work_.resize(n);
    for (size_t k = 0; k < n; ++k) work_[k] = half_phase_[k] * (V[k] + 0.5 * dt_ * k1_[k]);
    ops_.nonlinear(work_, k2_);
    for (size_t k = 0; k < n; ++k) work_[k] = half_phase_[k] * V[k] + 0.5 * dt_ * k2_[k];
    ops_.nonlinear(work_, k3_);
    for (size_t k = 0; k < n; ++k)
        work_[k] = full_phase_[k] * V[k] + dt_ * half_phase_[k] * k3_[k];
    ops_.nonlinear(work_, k4_);

    const double sixth = dt_ / 6.0;
    for (size_t k = 0; k < n; ++k) {
        V[k] = full_phase_[k] * V[k] +
               sixth * (full_phase_[k] * k1_[k] + 2.0 * half_phase_[k] * (k2_[k] + k3_[k]) +
                        k4_[k]);
    }
    V[0] = v0_mean;  // the zero mode carries no tendency; keep it bit-exact
}

RealField step_ifrk4(const RealField& v, double dt, const ModelCoefficients& coeffs,
                     bool dealias) {
    const double max_v = v.max_abs();
    if (has_nonlinear_terms(coeffs) && max_v > 0.0 &&
        std::abs(dt) > 0.5 * v.grid().spacing() / max_v)
        throw std::invalid_argument("step_ifrk4: dt violates the nonlinear CFL guard (dt <= 0.5 dx / max|v|)");
    Stepper stepper(v.grid(), coeffs, dt, dealias);
    SpectralField V = forward_transform(v);
    if (dealias) V = hobo::dealias(V);
    stepper.step(V.data());
    return inverse_transform(V);
}

TrajectoryRecord integrate(const RealField& v0, const ModelCoefficients& coeffs,
                           const IntegratorConfig& cfg) {
    cfg.validate();
    const Grid& grid = v0.grid();
    const int n_steps = static_cast<int>(std::llround(cfg.t_end / std::abs(cfg.dt)));
    if (n_steps < 1 || std::abs(n_steps * std::abs(cfg.dt) - cfg.t_end) > 1e-9 * cfg.t_end)
        throw std::invalid_argument("integrate: t_end must be an integer number of steps");

    TrajectoryRecord rec;
    rec.meta = RunMetadata{grid, coeffs, cfg, kCodeVersion};
    rec.status = RunStatus::completed;

    auto record_snapshot = [&](double t, const RealField& v) {
        rec.times.push_back(t);
        rec.snapshots.push_back(v);
        rec.observables.push_back(ObservableSet::compute(v, coeffs));
    };
    auto record_step = [&](double t, const RealField& v) {
        rec.step_times.push_back(t);
        rec.step_mass.push_back(mass(v));
        rec.step_energy.push_back(coeffs.kind == ModelKind::ilw ? 0.0 : energy(v, coeffs));
    };

    record_snapshot(0.0, v0);
    record_step(0.0, v0);

    const double dx = grid.spacing();
    const bool nonlinear = has_nonlinear_terms(coeffs);
    auto cfl_ok = [&](const RealField& v) {
        if (!nonlinear) return true;
        const double m = v.max_abs();
        return m == 0.0 || std::abs(cfg.dt) <= 0.5 * dx / m;
    };
    if (!cfl_ok(v0))
        throw std::invalid_argument(
            "integrate: dt violates the nonlinear CFL guard for the initial data");

    Stepper stepper(grid, coeffs, cfg.dt, cfg.dealias);
    SpectralField V = forward_transform(v0);
    // with the 2/3 rule active the state itself is band-limited; an unpaired
    // Nyquist mode would otherwise rotate out of the real subspace
    if (cfg.dealias) V = dealias(V);

    for (int step = 1; step <= n_steps; ++step) {
        try {
            stepper.step(V.data());
        } catch (const std::runtime_error& e) {
            rec.status = RunStatus::aborted_nan;
            rec.abort_reason = e.what();
            return rec;
        }
        RealField v = inverse_transform(V);
        const double t = step * cfg.dt;

        bool finite = true;
        for (double x : v.samples())
            if (!std::isfinite(x)) { finite = false; break; }
        if (!finite) {
            rec.status = RunStatus::aborted_nan;
            rec.abort_reason = "non-finite field at t=" + std::to_string(t);
            return rec;
        }
        if (v.max_abs() > cfg.max_abs_guard) {
            rec.status = RunStatus::aborted_blowup;
            rec.abort_reason = "infinity-norm guard exceeded at t=" + std::to_string(t);
            return rec;
        }
        if (!cfl_ok(v)) {
            rec.status = RunStatus::aborted_cfl;
            rec.abort_reason = "nonlinear CFL guard violated at t=" + std::to_string(t);
            return rec;
        }

        record_step(t, v);
        if (step % cfg.snapshot_stride == 0 || step == n_steps) record_snapshot(t, v);
    }
    return rec;
}

}  // namespace hobo
