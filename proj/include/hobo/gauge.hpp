// gauge.hpp
// Algebraic diagnostics for the gauge transformation W = P_{+hi}(e^{iF}),
// dxF = A v with A = 2d/(3a).  The transformation itself is not evolved;
// the module builds F, the unimodular phase, W and w = dxW, and measures
// the residuals of the two recovery identities.

#pragma once

#include "hobo/grid.hpp"
#include "hobo/models.hpp"

namespace hobo {

struct GaugeState {
    RealField F;         // antiderivative, zero spatial mean (plus optional offset)
    double A;            // gauge constant 2d/(3a)
    ComplexField phase;  // e^{iF}
    ComplexField W;      // P_{+hi}(e^{iF})
    ComplexField w;      // dx W
    bool bo_compatible;  // is_bo_compatible(coeffs, 1e-9)
    // |dxW - P_{+hi}(iA v e^{iF})| / |w|, the band-edge commutator residual
    double product_form_residual;
};

// spectral antiderivative with zero mean; rejects nonzero-mean input
// (threshold |mean| < 1e-12 * max|v|)
RealField antiderivative(const RealField& v, double A);

// Builds the gauge state.  phase_offset adds a constant to F; every
// implemented identity is invariant under such shifts (global phase).
GaugeState gauge_forward(const RealField& v, const ModelCoefficients& coeffs,
                         double phase_offset = 0.0);

// relative L2 residual of  iAv = e^{-iF} w + e^{-iF} dx P_lo(e^{iF})
//                                + e^{-iF} dx P_{-hi}(e^{iF})
double recovery_residual_35(const RealField& v, const GaugeState& state);

// relative L2 residual of the P_{+HI}-projected identity
//   iA P_{+HI} v = P_{+HI}(e^{-iF} w)
//                + P_{+HI}( P_{+hi}(e^{-iF}) dx P_lo(e^{iF}) )
//                + P_{+HI}( P_{+hi}(e^{-iF}) dx P_{-hi}(e^{iF}) )
// The inner projection on both product terms is the high-frequency part
// forced by the output band; see the doc comment in gauge.cpp.
double recovery_residual_36(const RealField& v, const GaugeState& state);

}  // namespace hobo
