// models.hpp
// Evolution models and observables.
//
// HBO:  dv/dt = b H dx^2 v + a eps dx^3 v + c v dx v - d eps dx( v H dx v + H(v dx v) )
// BO :  dv/dt = b H dx^2 v + c v dx v
// ILW:  HBO with the Hilbert transform replaced by the multiplier -i coth(h xi)
//       and third-order dispersion (a1 Fh^2 + a2) eps dx^3.
//
// The quadratic term is always evaluated as (c/2) dx(v^2) so the zero mode of
// the tendency vanishes identically and the mean is invariant.

#pragma once

#include <string>

#include "hobo/grid.hpp"
#include "hobo/spectral.hpp"

namespace hobo {

enum class ModelKind { hbo, bo, ilw };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

struct PhysicalParams {
    double rho;   // density of the lower fluid
    double rho1;  // density of the upper fluid
    double h1;    // upper-layer depth
    double g;     // gravitational acceleration

    // stable configuration: rho > rho1 > 0, h1 > 0, g > 0
    void validate() const;
};

struct ModelCoefficients {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    double d = 1.0;
    double epsilon = 0.0;
    ModelKind kind = ModelKind::hbo;
    // ILW extension fields (free positive inputs, no physical formula given)
    double a1 = 1.0;
    double a2 = 1.0;
    double depth = 1.0;

    static ModelCoefficients hbo(double a, double b, double c, double d, double epsilon);
    static ModelCoefficients bo(double b, double c, double a = 1.0, double d = 1.0);
    static ModelCoefficients ilw(double b, double c, double d, double epsilon, double a1,
                                 double a2, double depth);

    double gauge_constant() const { return 2.0 * d / (3.0 * a); }
    void validate() const;
};

// Eqs. printed coefficient map; rejects rho <= rho1 (unstable configuration).
ModelCoefficients coefficients_from_physical(const PhysicalParams& p, double epsilon,
                                             ModelKind kind = ModelKind::hbo);

// true iff |3ac/(4d) - b| <= tol * |b|
bool is_bo_compatible(const ModelCoefficients& coeffs, double tol);

// whether the model carries any nonlinear term (the nonlinear CFL guard is
// vacuous otherwise)
bool has_nonlinear_terms(const ModelCoefficients& coeffs);

// dispersion relation of the linearized model; odd in xi
double dispersion_relation(double xi, const ModelCoefficients& coeffs);
// inflection point b/(3 a eps) of the HBO branch; +infinity when eps == 0
double dispersion_inflection(const ModelCoefficients& coeffs);

// resonance function Omega = -b(|xi| xi - |xi1| xi1 - |xi2| xi2) + 3 a eps xi xi1 xi2
// on the region xi = xi1 + xi2 >= 0, xi1 >= 0, xi2 <= 0 (rejected outside)
double resonance_function(double xi1, double xi2, const ModelCoefficients& coeffs);

// Precomputed per-(grid, coefficients) symbols for tendency evaluation.
// nonlinear() is const and allocation-local, safe for concurrent calls.
class TendencyOps {
  public:
    TendencyOps(const Grid& grid, const ModelCoefficients& coeffs, bool dealias);

    // nonlinear part of the tendency, spectral in and out (FFT slot order)
    void nonlinear(const std::vector<cplx>& V, std::vector<cplx>& out) const;
    const std::vector<double>& omega() const { return omega_; }
    const Grid& grid() const { return grid_; }
    const ModelCoefficients& coefficients() const { return coeffs_; }
    bool dealias() const { return dealias_; }

  private:
    static void check_spectrum(const std::vector<cplx>& s, const char* stage);
    Grid grid_;
    ModelCoefficients coeffs_;
    bool dealias_;
    const class Fft& fft_;
    std::vector<double> omega_;
    std::vector<double> xi_;
    std::vector<cplx> hsym_;
    std::vector<char> keep_;
    double c_half_ = 0.0;
    double d_eps_ = 0.0;
};

// full tendency dv/dt in physical space; quadratic products dealiased when requested
RealField rhs(const RealField& v, const ModelCoefficients& coeffs, bool dealias = true);

// conserved functionals and norms
double mass(const RealField& v);                                    // integral of v^2
double energy(const RealField& v, const ModelCoefficients& coeffs);  // HBO/BO only
double sobolev_norm(const RealField& v, double s);                  // s in [-2, 4]
double sobolev_norm(const SpectralField& V, double s);

struct ObservableSet {
    double mass = 0.0;
    double energy = 0.0;  // 0 for ILW (functional not defined for that model)
    double l2_norm = 0.0;
    double h_half_norm = 0.0;
    double h1_norm = 0.0;

    static ObservableSet compute(const RealField& v, const ModelCoefficients& coeffs);
};

}  // namespace hobo
