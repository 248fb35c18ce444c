// spectral.hpp
// Fourier-multiplier operator calculus on the periodic grid: transforms,
// generic multipliers, the Hilbert transform, sharp sign projections and
// the smooth Littlewood-Paley ladder built from the cutoff eta.

#pragma once

#include <functional>
#include <vector>

#include "hobo/grid.hpp"

namespace hobo {

// ---------------------------------------------------------------------------
// transforms
// ---------------------------------------------------------------------------

SpectralField forward_transform(const RealField& v);
SpectralField forward_transform(const ComplexField& v);
// rejects input whose reconstruction has |imag| > 1e-10 * max|field|
RealField inverse_transform(const SpectralField& V);
ComplexField inverse_transform_complex(const SpectralField& V);

// ---------------------------------------------------------------------------
// multipliers
// ---------------------------------------------------------------------------

class MultiplierSymbol {
  public:
    // evaluate fn once per grid wavenumber; rejects non-finite values
    static MultiplierSymbol from_function(const Grid& grid,
                                          const std::function<cplx(double)>& fn);

    static MultiplierSymbol identity(const Grid& grid);
    static MultiplierSymbol derivative(const Grid& grid, int order = 1);  // (i xi)^order
    static MultiplierSymbol hilbert(const Grid& grid);                    // -i sgn(xi)
    static MultiplierSymbol riesz(const Grid& grid, double s);            // |xi|^s, D_x^s
    static MultiplierSymbol bessel(const Grid& grid, double s);           // (1+xi^2)^{s/2}, J_x^s

    const Grid& grid() const { return grid_; }
    std::span<const cplx> values() const { return values_; }
    cplx operator[](int k) const { return values_[static_cast<size_t>(k)]; }

  private:
    MultiplierSymbol(const Grid& grid, std::vector<cplx> values);
    Grid grid_;
    std::vector<cplx> values_;
};

SpectralField apply_multiplier(const SpectralField& V, const MultiplierSymbol& m);

// convenience: forward, multiply, inverse (result must be real)
RealField apply_multiplier(const RealField& v, const MultiplierSymbol& m);

// Hilbert transform: multiplier -i sgn(xi), sgn(0) = 0; zero mode annihilated.
RealField hilbert_transform(const RealField& v);
SpectralField hilbert_transform(const SpectralField& V);

// ---------------------------------------------------------------------------
// cutoff and Littlewood-Paley ladder
// ---------------------------------------------------------------------------

// even C-infinity bump: 1 on [-1,1], 0 outside [-2,2], built from exp(-1/t)
double cutoff_eta(double xi);
// phi(xi) = eta(xi) - eta(2 xi)
double lp_phi(double xi);
// block symbol phi_N: N = 0 gives eta(2 xi); dyadic N = 2^l gives phi(xi/N)
double lp_block_symbol(double block, double xi);
// dyadic ladder {0, 1, 2, ..., top}, top = largest 2^l <= nyquist/2
std::vector<double> lp_ladder(const Grid& grid);

// ---------------------------------------------------------------------------
// projections
// ---------------------------------------------------------------------------

enum class Projection {
    plus,      // sharp restriction to xi > 0
    minus,     // sharp restriction to xi < 0
    hi,        // sum of dyadic blocks N >= 2,   symbol 1 - eta(xi)
    lo,        // 1 - hi,                        symbol eta(xi)
    HI,        // sum of dyadic blocks N >= 16,  symbol 1 - eta(xi/8)
    LO,        // 1 - HI,                        symbol eta(xi/8)
    block,     // single dyadic block P_N
    plus_hi,   // P_+ P_hi
    minus_hi,  // P_- P_hi
    plus_HI,   // P_+ P_HI
    geq,       // P_{>=N}, symbol 1 - eta(2 xi / N)
};

// block/geq read the dyadic block value from `block_n` (0 or a power of two).
SpectralField project(const SpectralField& V, Projection which, double block_n = -1.0);
ComplexField project(const ComplexField& v, Projection which, double block_n = -1.0);
// real-output projections only; rejects plus/minus variants
RealField project(const RealField& v, Projection which, double block_n = -1.0);

double projection_symbol(Projection which, double xi, double block_n);

}  // namespace hobo
