#include "hobo/models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hobo/fft.hpp"

namespace hobo {

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::hbo: return "hbo";
        case ModelKind::bo: return "bo";
        case ModelKind::ilw: return "ilw";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "hbo") return ModelKind::hbo;
    if (s == "bo") return ModelKind::bo;
    if (s == "ilw") return ModelKind::ilw;
    throw std::invalid_argument("unknown model kind '" + s + "' (expected hbo|bo|ilw)");
}

void PhysicalParams::validate() const {
    if (!(rho1 > 0.0) || !(rho > rho1))
        throw std::invalid_argument(
            "PhysicalParams: need rho > rho1 > 0 (stable configuration), got rho=" +
            std::to_string(rho) + " rho1=" + std::to_string(rho1));
    if (!(h1 > 0.0)) throw std::invalid_argument("PhysicalParams: h1 must be positive");
    if (!(g > 0.0)) throw std::invalid_argument("PhysicalParams: g must be positive");
}

ModelCoefficients ModelCoefficients::hbo(double a, double b, double c, double d, double epsilon) {
    ModelCoefficients m{a, b, c, d, epsilon, ModelKind::hbo};
    m.validate();
    return m;
}

ModelCoefficients ModelCoefficients::bo(double b, double c, double a, double d) {
    ModelCoefficients m{a, b, c, d, 0.0, ModelKind::bo};
    m.validate();
    return m;
}

ModelCoefficients ModelCoefficients::ilw(double b, double c, double d, double epsilon, double a1,
                                         double a2, double depth) {
    ModelCoefficients m{1.0, b, c, d, epsilon, ModelKind::ilw, a1, a2, depth};
    m.validate();
    return m;
}

void ModelCoefficients::validate() const {
    // physics-derived coefficients are all positive; direct construction may
    // zero c or d for linear-only runs
    if (!(b > 0.0) || !(a >= 0.0) || !(c >= 0.0) || !(d >= 0.0))
        throw std::invalid_argument("ModelCoefficients: need b > 0 and a, c, d >= 0");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("ModelCoefficients: epsilon must be >= 0");
    if (epsilon > 0.0 && kind == ModelKind::hbo && !(a > 0.0))
        throw std::invalid_argument("ModelCoefficients: HBO with eps > 0 needs a > 0");
    if (kind == ModelKind::ilw && !(a1 > 0.0 && a2 > 0.0 && depth > 0.0))
        throw std::invalid_argument("ModelCoefficients: ILW needs a1, a2, depth > 0");
}

ModelCoefficients coefficients_from_physical(const PhysicalParams& p, double epsilon,
                                             ModelKind kind) {
    p.validate();
    const double rad_a = p.g * p.h1 * (p.rho - p.rho1) / p.rho1;       // g h1 (rho-rho1)/rho1
    const double rad_b = p.g * p.rho1 * (p.rho - p.rho1) / p.h1;      // g rho1 (rho-rho1)/h1
    const double ratio = p.rho / p.rho1;
    const double a = 0.5 * p.h1 * p.h1 * (ratio * ratio - 1.0 / 3.0) * std::sqrt(rad_a);
    const double b = 0.5 * p.rho * p.h1 * p.h1 / (p.rho1 * p.rho1) * std::sqrt(rad_b);
    const double quarter_root = std::pow(rad_b, 0.25);
    const double c = 0.75 * std::sqrt(2.0) / p.rho1 * quarter_root;
    const double d = 0.5 * std::sqrt(2.0) * p.rho * p.h1 / (p.rho1 * p.rho1) * quarter_root;
    ModelCoefficients m{a, b, c, d, kind == ModelKind::bo ? 0.0 : epsilon, kind};
    m.validate();
    return m;
}

bool is_bo_compatible(const ModelCoefficients& coeffs, double tol) {
    if (!(coeffs.a > 0.0 && coeffs.d > 0.0))
        throw std::invalid_argument("is_bo_compatible: needs a, d > 0");
    return std::abs(3.0 * coeffs.a * coeffs.c / (4.0 * coeffs.d) - coeffs.b) <=
           tol * std::abs(coeffs.b);
}

bool has_nonlinear_terms(const ModelCoefficients& coeffs) {
    if (coeffs.c != 0.0) return true;
    return coeffs.kind != ModelKind::bo && coeffs.d * coeffs.epsilon != 0.0;
}

static double coth(double x) { return 1.0 / std::tanh(x); }

double dispersion_relation(double xi, const ModelCoefficients& coeffs) {
    const double eps = coeffs.kind == ModelKind::bo ? 0.0 : coeffs.epsilon;
    if (coeffs.kind == ModelKind::ilw) {
        if (xi == 0.0) return 0.0;  // removable singularity of coth
        const double ct = coth(coeffs.depth * xi);
        return coeffs.b * xi * xi * ct - eps * xi * xi * xi * (coeffs.a1 * ct * ct - coeffs.a2);
    }
    return coeffs.b * std::abs(xi) * xi - coeffs.a * eps * xi * xi * xi;
}

double dispersion_inflection(const ModelCoefficients& coeffs) {
    if (coeffs.kind != ModelKind::hbo && coeffs.kind != ModelKind::bo)
        throw std::invalid_argument("dispersion_inflection: defined for the HBO/BO branch");
    const double eps = coeffs.kind == ModelKind::bo ? 0.0 : coeffs.epsilon;
    if (eps == 0.0) return std::numeric_limits<double>::infinity();
    return coeffs.b / (3.0 * coeffs.a * eps);
}

double resonance_function(double xi1, double xi2, const ModelCoefficients& coeffs) {
    const double xi = xi1 + xi2;
    if (!(xi1 >= 0.0 && xi2 <= 0.0 && xi >= 0.0))
        throw std::invalid_argument(
            "resonance_function: sign pattern violated (need xi1 >= 0, xi2 <= 0, xi1+xi2 >= 0)");
    const double eps = coeffs.kind == ModelKind::bo ? 0.0 : coeffs.epsilon;
    auto odd = [](double z) { return std::abs(z) * z; };
    return -coeffs.b * (odd(xi) - odd(xi1) - odd(xi2)) + 3.0 * coeffs.a * eps * xi * xi1 * xi2;
}

// ---------------------------------------------------------------------------
// tendency
// ---------------------------------------------------------------------------

TendencyOps::TendencyOps(const Grid& grid, const ModelCoefficients& coeffs, bool dealias)
    : grid_(grid), coeffs_(coeffs), dealias_(dealias), fft_(Fft::plan_for(grid.size())) {
    coeffs_.validate();
    const int n = grid.size();
    omega_.resize(static_cast<size_t>(n));
    xi_.resize(static_cast<size_t>(n));
    hsym_.resize(static_cast<size_t>(n));
    keep_.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double xi = grid.wavenumber(k);
        xi_[static_cast<size_t>(k)] = xi;
        omega_[static_cast<size_t>(k)] = dispersion_relation(xi, coeffs_);
        if (coeffs_.kind == ModelKind::ilw) {
            // F_h = -i coth(h xi); value at xi = 0 set to 0 (it only ever
            // multiplies mean-zero spectra here)
            hsym_[static_cast<size_t>(k)] =
                xi == 0.0 ? cplx(0.0) : cplx(0.0, -coth(coeffs_.depth * xi));
        } else {
            const double sgn = xi > 0.0 ? 1.0 : (xi < 0.0 ? -1.0 : 0.0);
            hsym_[static_cast<size_t>(k)] = cplx(0.0, -sgn);
        }
        keep_[static_cast<size_t>(k)] = !dealias_ || 3 * std::abs(grid.mode(k)) <= n;
    }
    omega_[static_cast<size_t>(n / 2)] = 0.0;  // odd symbol, unpaired Nyquist slot
    xi_[static_cast<size_t>(n / 2)] = 0.0;
    const double eps = coeffs_.kind == ModelKind::bo ? 0.0 : coeffs_.epsilon;
    c_half_ = 0.5 * coeffs_.c;
    d_eps_ = coeffs_.kind == ModelKind::bo ? 0.0 : coeffs_.d * eps;
}

void TendencyOps::check_spectrum(const std::vector<cplx>& s, const char* stage) {
    for (const cplx& c : s) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::runtime_error(std::string("tendency: NaN in intermediate spectrum at stage '") +
                                     stage + "'");
    }
}

void TendencyOps::nonlinear(const std::vector<cplx>& V, std::vector<cplx>& out) const {
    const size_t n = V.size();
    out.assign(n, cplx(0.0));
    if (c_half_ == 0.0 && d_eps_ == 0.0) return;

    std::vector<cplx> buf(n), phys(n), prod(n), spec(n);

    fft_.backward(V, phys);  // v samples (imag ~ roundoff)

    // c v v_x as (c/2) dx(v^2)
    for (size_t j = 0; j < n; ++j) {
        const double vj = phys[j].real();
        prod[j] = cplx(vj * vj, 0.0);
    }
    fft_.forward(prod, spec);
    check_spectrum(spec, "v^2");
    const double inv_n = 1.0 / static_cast<double>(n);
    for (size_t k = 0; k < n; ++k) {
        if (!keep_[k]) continue;
        out[k] += c_half_ * cplx(0.0, xi_[k]) * (spec[k] * inv_n);
    }

    if (d_eps_ != 0.0) {
        std::vector<cplx> vx(n), hvx(n);
        for (size_t k = 0; k < n; ++k) buf[k] = cplx(0.0, xi_[k]) * V[k];
        fft_.backward(buf, vx);
        for (size_t k = 0; k < n; ++k) buf[k] *= hsym_[k];
        fft_.backward(buf, hvx);

        // v H v_x
        for (size_t j = 0; j < n; ++j) prod[j] = cplx(phys[j].real() * hvx[j].real(), 0.0);
        fft_.forward(prod, spec);
        check_spectrum(spec, "v*Hvx");
        for (size_t k = 0; k < n; ++k) {
            if (!keep_[k]) continue;
            out[k] -= d_eps_ * cplx(0.0, xi_[k]) * (spec[k] * inv_n);
        }

        // H(v v_x)
        for (size_t j = 0; j < n; ++j) prod[j] = cplx(phys[j].real() * vx[j].real(), 0.0);
        fft_.forward(prod, spec);
        check_spectrum(spec, "v*vx");
        for (size_t k = 0; k < n; ++k) {
            if (!keep_[k]) continue;
            out[k] -= d_eps_ * cplx(0.0, xi_[k]) * hsym_[k] * (spec[k] * inv_n);
        }
    }
}

RealField rhs(const RealField& v, const ModelCoefficients& coeffs, bool dealias) {
    TendencyOps ops(v.grid(), coeffs, dealias);
    SpectralField V = forward_transform(v);
    std::vector<cplx> nl;
    ops.nonlinear(V.data(), nl);
    for (int k = 0; k < v.size(); ++k)
        nl[static_cast<size_t>(k)] += cplx(0.0, ops.omega()[static_cast<size_t>(k)]) * V[k];
    return inverse_transform(SpectralField(v.grid(), std::move(nl)));
}

// ---------------------------------------------------------------------------
// observables
// ---------------------------------------------------------------------------

double mass(const RealField& v) {
    double s = 0.0;
    for (double x : v.samples()) s += x * x;
    return s * v.grid().spacing();
}

double energy(const RealField& v, const ModelCoefficients& coeffs) {
    if (coeffs.kind == ModelKind::ilw)
        throw std::invalid_argument("energy: the functional is defined for HBO/BO only");
    const double eps = coeffs.kind == ModelKind::bo ? 0.0 : coeffs.epsilon;
    SpectralField V = forward_transform(v);
    RealField vx = inverse_transform(apply_multiplier(V, MultiplierSymbol::derivative(v.grid())));
    // H dx has the real even symbol |xi|
    RealField hvx = inverse_transform(apply_multiplier(V, MultiplierSymbol::riesz(v.grid(), 1.0)));
    // cubic terms use the dealiased square, consistent with the tendency
    std::vector<double> sq(static_cast<size_t>(v.size()));
    for (int j = 0; j < v.size(); ++j) sq[static_cast<size_t>(j)] = v[j] * v[j];
    SpectralField SQ = forward_transform(RealField(v.grid(), std::move(sq)));
    const int n = v.size();
    for (int k = 0; k < n; ++k)
        if (3 * std::abs(v.grid().mode(k)) > n) SQ[k] = cplx(0.0);
    RealField v2 = inverse_transform(SQ);

    double h = 0.0;
    for (int j = 0; j < n; ++j) {
        h += coeffs.a * eps * vx[j] * vx[j] - coeffs.b * v[j] * hvx[j] -
             (coeffs.c / 3.0) * v2[j] * v[j] + coeffs.d * eps * v2[j] * hvx[j];
    }
    return h * v.grid().spacing();
}

double sobolev_norm(const SpectralField& V, double s) {
    if (!(s >= -2.0 && s <= 4.0))
        throw std::invalid_argument("sobolev_norm: s must lie in [-2, 4]");
    double acc = 0.0;
    for (int k = 0; k < V.size(); ++k) {
        const double xi = V.grid().wavenumber(k);
        acc += std::pow(1.0 + xi * xi, s) * std::norm(V[k]);
    }
    return std::sqrt(acc * V.grid().length());
}

double sobolev_norm(const RealField& v, double s) {
    return sobolev_norm(forward_transform(v), s);
}

ObservableSet ObservableSet::compute(const RealField& v, const ModelCoefficients& coeffs) {
    ObservableSet o;
    o.mass = hobo::mass(v);
    o.energy = coeffs.kind == ModelKind::ilw ? 0.0 : hobo::energy(v, coeffs);
    SpectralField V = forward_transform(v);
    o.l2_norm = sobolev_norm(V, 0.0);
    o.h_half_norm = sobolev_norm(V, 0.5);
    o.h1_norm = sobolev_norm(V, 1.0);
    return o;
}

}  // namespace hobo
