#include "hobo/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "hobo/fft.hpp"

namespace hobo {

// ---------------------------------------------------------------------------
// transforms
// ---------------------------------------------------------------------------

SpectralField forward_transform(const RealField& v) {
    for (int j = 0; j < v.size(); ++j) {
        if (!std::isfinite(v[j]))
            throw std::invalid_argument("forward_transform: non-finite sample at index " +
                                        std::to_string(j));
    }
    const int n = v.size();
    std::vector<cplx> in(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) in[static_cast<size_t>(j)] = cplx(v[j], 0.0);
    std::vector<cplx> out(static_cast<size_t>(n));
    Fft::plan_for(n).forward(in, out);
    const double scale = 1.0 / n;
    for (cplx& c : out) c *= scale;
    return SpectralField(v.grid(), std::move(out));
}

SpectralField forward_transform(const ComplexField& v) {
    const int n = v.size();
    std::vector<cplx> out(static_cast<size_t>(n));
    Fft::plan_for(n).forward(v.samples(), out);
    const double scale = 1.0 / n;
    for (cplx& c : out) c *= scale;
    return SpectralField(v.grid(), std::move(out));
}

ComplexField inverse_transform_complex(const SpectralField& V) {
    const int n = V.size();
    std::vector<cplx> out(static_cast<size_t>(n));
    Fft::plan_for(n).backward(V.coefficients(), out);
    return ComplexField(V.grid(), std::move(out));
}

RealField inverse_transform(const SpectralField& V) {
    ComplexField z = inverse_transform_complex(V);
    double max_abs = 0.0, max_imag = 0.0;
    for (const cplx& c : z.samples()) {
        max_abs = std::max(max_abs, std::abs(c));
        max_imag = std::max(max_imag, std::abs(c.imag()));
    }
    if (max_imag > 1e-10 * max_abs) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "inverse_transform: coefficients are not conjugate-symmetric "
                      "(imaginary residue %.3e vs field norm %.3e)",
                      max_imag, max_abs);
        throw std::invalid_argument(msg);
    }
    return z.real_part();
}

// ---------------------------------------------------------------------------
// multipliers
// ---------------------------------------------------------------------------

MultiplierSymbol::MultiplierSymbol(const Grid& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {}

MultiplierSymbol MultiplierSymbol::from_function(const Grid& grid,
                                                 const std::function<cplx(double)>& fn) {
    std::vector<cplx> vals(static_cast<size_t>(grid.size()));
    for (int k = 0; k < grid.size(); ++k) {
        cplx v = fn(grid.wavenumber(k));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument(
                "MultiplierSymbol: non-finite value at wavenumber " +
                std::to_string(grid.wavenumber(k)) +
                " (resolve removable singularities explicitly)");
        vals[static_cast<size_t>(k)] = v;
    }
    return MultiplierSymbol(grid, std::move(vals));
}

MultiplierSymbol MultiplierSymbol::identity(const Grid& grid) {
    return from_function(grid, [](double) { return cplx(1.0, 0.0); });
}

// Odd symbols annihilate the unpaired Nyquist slot (it has no conjugate
// partner, so a nonzero odd value there cannot represent a real field).
MultiplierSymbol MultiplierSymbol::derivative(const Grid& grid, int order) {
    MultiplierSymbol m =
        from_function(grid, [order](double xi) { return std::pow(cplx(0.0, xi), order); });
    if (order % 2 != 0) m.values_[static_cast<size_t>(grid.size() / 2)] = cplx(0.0);
    return m;
}

MultiplierSymbol MultiplierSymbol::hilbert(const Grid& grid) {
    MultiplierSymbol m = from_function(grid, [](double xi) {
        double sgn = xi > 0.0 ? 1.0 : (xi < 0.0 ? -1.0 : 0.0);
        return cplx(0.0, -sgn);
    });
    m.values_[static_cast<size_t>(grid.size() / 2)] = cplx(0.0);
    return m;
}

MultiplierSymbol MultiplierSymbol::riesz(const Grid& grid, double s) {
    return from_function(grid, [s](double xi) {
        if (xi == 0.0) return cplx(s > 0.0 ? 0.0 : 1.0, 0.0);
        return cplx(std::pow(std::abs(xi), s), 0.0);
    });
}

MultiplierSymbol MultiplierSymbol::bessel(const Grid& grid, double s) {
    return from_function(
        grid, [s](double xi) { return cplx(std::pow(1.0 + xi * xi, 0.5 * s), 0.0); });
}

SpectralField apply_multiplier(const SpectralField& V, const MultiplierSymbol& m) {
    require_same_grid(V.grid(), m.grid(), "apply_multiplier");
    std::vector<cplx> out(V.coefficients().begin(), V.coefficients().end());
    for (int k = 0; k < V.size(); ++k) out[static_cast<size_t>(k)] *= m[k];
    return SpectralField(V.grid(), std::move(out));
}

RealField apply_multiplier(const RealField& v, const MultiplierSymbol& m) {
    return inverse_transform(apply_multiplier(forward_transform(v), m));
}

SpectralField hilbert_transform(const SpectralField& V) {
    return apply_multiplier(V, MultiplierSymbol::hilbert(V.grid()));
}

RealField hilbert_transform(const RealField& v) {
    return inverse_transform(hilbert_transform(forward_transform(v)));
}

// ---------------------------------------------------------------------------
// cutoff and ladder
// ---------------------------------------------------------------------------

static double mollifier(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double cutoff_eta(double xi) {
    double ax = std::abs(xi);
    if (ax <= 1.0) return 1.0;
    if (ax >= 2.0) return 0.0;
    double num = mollifier(2.0 - ax);
    return num / (num + mollifier(ax - 1.0));
}

double lp_phi(double xi) { return cutoff_eta(xi) - cutoff_eta(2.0 * xi); }

static bool is_dyadic(double n) {
    if (n == 0.0) return true;
    if (n < 1.0) return false;
    int e = 0;
    double mant = std::frexp(n, &e);
    return mant == 0.5;  // exact power of two
}

double lp_block_symbol(double block, double xi) {
    if (!is_dyadic(block))
        throw std::invalid_argument("lp_block_symbol: block must be 0 or a power of two, got " +
                                    std::to_string(block));
    if (block == 0.0) return cutoff_eta(2.0 * xi);
    return lp_phi(xi / block);
}

std::vector<double> lp_ladder(const Grid& grid) {
    std::vector<double> ladder{0.0};
    const double top = grid.nyquist() / 2.0;
    for (double n = 1.0; n <= top; n *= 2.0) ladder.push_back(n);
    return ladder;
}

// ---------------------------------------------------------------------------
// projections
// ---------------------------------------------------------------------------

double projection_symbol(Projection which, double xi, double block_n) {
    const double chi_plus = xi > 0.0 ? 1.0 : 0.0;
    const double chi_minus = xi < 0.0 ? 1.0 : 0.0;
    switch (which) {
        case Projection::plus: return chi_plus;
        case Projection::minus: return chi_minus;
        case Projection::hi: return 1.0 - cutoff_eta(xi);
        case Projection::lo: return cutoff_eta(xi);
        case Projection::HI: return 1.0 - cutoff_eta(xi / 8.0);
        case Projection::LO: return cutoff_eta(xi / 8.0);
        case Projection::block: return lp_block_symbol(block_n, xi);
        case Projection::plus_hi: return chi_plus * (1.0 - cutoff_eta(xi));
        case Projection::minus_hi: return chi_minus * (1.0 - cutoff_eta(xi));
        case Projection::plus_HI: return chi_plus * (1.0 - cutoff_eta(xi / 8.0));
        case Projection::geq:
            if (!is_dyadic(block_n))
                throw std::invalid_argument("project: geq-N needs dyadic N, got " +
                                            std::to_string(block_n));
            if (block_n == 0.0) return 1.0;
            return 1.0 - cutoff_eta(2.0 * xi / block_n);
    }
    throw std::logic_error("projection_symbol: unknown projection");
}

static bool needs_block(Projection which) {
    return which == Projection::block || which == Projection::geq;
}

SpectralField project(const SpectralField& V, Projection which, double block_n) {
    if (needs_block(which) && block_n < 0.0)
        throw std::invalid_argument("project: this projection requires a dyadic block value");
    std::vector<cplx> out(V.coefficients().begin(), V.coefficients().end());
    for (int k = 0; k < V.size(); ++k)
        out[static_cast<size_t>(k)] *= projection_symbol(which, V.grid().wavenumber(k), block_n);
    return SpectralField(V.grid(), std::move(out));
}

ComplexField project(const ComplexField& v, Projection which, double block_n) {
    return inverse_transform_complex(project(forward_transform(v), which, block_n));
}

RealField project(const RealField& v, Projection which, double block_n) {
    switch (which) {
        case Projection::plus:
        case Projection::minus:
        case Projection::plus_hi:
        case Projection::minus_hi:
        case Projection::plus_HI:
            throw std::invalid_argument(
                "project: sign projections produce complex fields; use the spectral or "
                "complex-field interface");
        default: break;
    }
    return inverse_transform(project(forward_transform(v), which, block_n));
}

}  // namespace hobo
