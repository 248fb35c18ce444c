#include "hobo/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hobo {

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b)) {
        throw std::invalid_argument(std::string(where) + ": grid mismatch (N=" +
                                    std::to_string(a.size()) + ",L=" + std::to_string(a.length()) +
                                    " vs N=" + std::to_string(b.size()) + ",L=" +
                                    std::to_string(b.length()) + ")");
    }
}

Grid::Grid(double length, int size) : length_(length), size_(size) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("Grid: period length must be positive and finite");
    if (size < 8 || size % 2 != 0)
        throw std::invalid_argument("Grid: point count must be even and >= 8, got " +
                                    std::to_string(size));
}

static void check_finite(std::span<const double> s, const char* what) {
    for (size_t j = 0; j < s.size(); ++j) {
        if (!std::isfinite(s[j]))
            throw std::invalid_argument(std::string(what) + ": non-finite sample at index " +
                                        std::to_string(j));
    }
}

RealField::RealField(const Grid& grid)
    : grid_(grid), samples_(static_cast<size_t>(grid.size()), 0.0) {}

RealField::RealField(const Grid& grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != static_cast<size_t>(grid_.size()))
        throw std::invalid_argument("RealField: sample count does not match grid point count");
    check_finite(samples_, "RealField");
}

double RealField::mean() const {
    double s = 0.0;
    for (double v : samples_) s += v;
    return s / static_cast<double>(samples_.size());
}

double RealField::max_abs() const {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
}

double RealField::l2_norm() const {
    double s = 0.0;
    for (double v : samples_) s += v * v;
    return std::sqrt(s * grid_.spacing());
}

ComplexField::ComplexField(const Grid& grid)
    : grid_(grid), samples_(static_cast<size_t>(grid.size()), cplx(0.0)) {}

ComplexField::ComplexField(const Grid& grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != static_cast<size_t>(grid_.size()))
        throw std::invalid_argument("ComplexField: sample count does not match grid point count");
}

ComplexField::ComplexField(const RealField& re) : grid_(re.grid()) {
    samples_.reserve(static_cast<size_t>(re.size()));
    for (double v : re.samples()) samples_.emplace_back(v, 0.0);
}

double ComplexField::max_abs() const {
    double m = 0.0;
    for (const cplx& v : samples_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexField::l2_norm() const {
    double s = 0.0;
    for (const cplx& v : samples_) s += std::norm(v);
    return std::sqrt(s * grid_.spacing());
}

RealField ComplexField::real_part() const {
    std::vector<double> out(samples_.size());
    for (size_t j = 0; j < samples_.size(); ++j) out[j] = samples_[j].real();
    return RealField(grid_, std::move(out));
}

SpectralField::SpectralField(const Grid& grid)
    : grid_(grid), coeff_(static_cast<size_t>(grid.size()), cplx(0.0)) {}

SpectralField::SpectralField(const Grid& grid, std::vector<cplx> coefficients)
    : grid_(grid), coeff_(std::move(coefficients)) {
    if (coeff_.size() != static_cast<size_t>(grid_.size()))
        throw std::invalid_argument("SpectralField: coefficient count does not match grid");
}

double SpectralField::l2_norm() const {
    double s = 0.0;
    for (const cplx& c : coeff_) s += std::norm(c);
    return std::sqrt(s * grid_.length());
}

double SpectralField::conjugate_asymmetry() const {
    double worst = std::abs(coeff_[0].imag());
    for (int m = 1; m < grid_.size() / 2; ++m) {
        cplx diff = mode(-m) - std::conj(mode(m));
        worst = std::max(worst, std::abs(diff));
    }
    return worst;
}

template <typename Field, typename Op>
static Field zip(const Field& a, const Field& b, Op op, const char* where) {
    require_same_grid(a.grid(), b.grid(), where);
    auto out = a.data();
    for (size_t j = 0; j < out.size(); ++j) out[j] = op(out[j], b.data()[j]);
    return Field(a.grid(), std::move(out));
}

RealField operator+(const RealField& a, const RealField& b) {
    return zip(a, b, [](double x, double y) { return x + y; }, "RealField +");
}
RealField operator-(const RealField& a, const RealField& b) {
    return zip(a, b, [](double x, double y) { return x - y; }, "RealField -");
}
RealField operator*(double s, const RealField& a) {
    auto out = a.data();
    for (double& v : out) v *= s;
    return RealField(a.grid(), std::move(out));
}

ComplexField operator+(const ComplexField& a, const ComplexField& b) {
    return zip(a, b, [](cplx x, cplx y) { return x + y; }, "ComplexField +");
}
ComplexField operator-(const ComplexField& a, const ComplexField& b) {
    return zip(a, b, [](cplx x, cplx y) { return x - y; }, "ComplexField -");
}
ComplexField operator*(const ComplexField& a, const ComplexField& b) {
    return zip(a, b, [](cplx x, cplx y) { return x * y; }, "ComplexField *");
}
ComplexField operator*(cplx s, const ComplexField& a) {
    auto out = a.data();
    for (cplx& v : out) v *= s;
    return ComplexField(a.grid(), std::move(out));
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    return zip(a, b, [](cplx x, cplx y) { return x + y; }, "SpectralField +");
}
SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    return zip(a, b, [](cplx x, cplx y) { return x - y; }, "SpectralField -");
}
SpectralField operator*(double s, const SpectralField& a) {
    auto out = a.data();
    for (cplx& v : out) v *= s;
    return SpectralField(a.grid(), std::move(out));
}

}  // namespace hobo
