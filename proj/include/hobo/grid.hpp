// grid.hpp
// Periodic grid and the three field containers used throughout:
//   RealField     -- real samples v(x_j) on the grid
//   ComplexField  -- complex samples (gauge phases, projected fields)
//   SpectralField -- Fourier coefficients in FFT slot order
//
// Coefficient convention: slot k holds mode m(k) in [-N/2, N/2), and the
// coefficient of mode m approximates (1/L) * integral of v(x) e^{-i xi_m x},
// xi_m = 2 pi m / L.  The unpaired Nyquist slot (m = -N/2) carries the
// negative wavenumber -pi N / L.

#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace hobo {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

class Grid {
  public:
    Grid(double length, int size);

    double length() const { return length_; }
    int size() const { return size_; }
    double spacing() const { return length_ / size_; }
    double node(int j) const { return j * length_ / size_; }

    // signed integer mode stored in spectral slot k
    int mode(int k) const { return k < size_ / 2 ? k : k - size_; }
    // spectral slot holding signed mode m
    int slot(int m) const { return m >= 0 ? m : m + size_; }
    double wavenumber(int k) const { return 2.0 * pi * mode(k) / length_; }
    double nyquist() const { return pi * size_ / length_; }
    // largest |m| kept by the 2/3 rule
    int dealias_cut() const { return size_ / 3; }

    friend bool operator==(const Grid&, const Grid&) = default;

  private:
    double length_;
    int size_;
};

class RealField {
  public:
    explicit RealField(const Grid& grid);
    RealField(const Grid& grid, std::vector<double> samples);

    template <typename F>
    static RealField from_function(const Grid& grid, F&& f) {
        std::vector<double> s(static_cast<size_t>(grid.size()));
        for (int j = 0; j < grid.size(); ++j) s[j] = f(grid.node(j));
        return RealField(grid, std::move(s));
    }

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.size(); }
    std::span<const double> samples() const { return samples_; }
    double operator[](int j) const { return samples_[static_cast<size_t>(j)]; }
    double& operator[](int j) { return samples_[static_cast<size_t>(j)]; }
    std::vector<double>& data() { return samples_; }
    const std::vector<double>& data() const { return samples_; }

    double mean() const;
    double max_abs() const;
    double l2_norm() const;  // sqrt( sum v_j^2 * L/N )

  private:
    Grid grid_;
    std::vector<double> samples_;
};

class ComplexField {
  public:
    explicit ComplexField(const Grid& grid);
    ComplexField(const Grid& grid, std::vector<cplx> samples);
    explicit ComplexField(const RealField& re);

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.size(); }
    std::span<const cplx> samples() const { return samples_; }
    cplx operator[](int j) const { return samples_[static_cast<size_t>(j)]; }
    cplx& operator[](int j) { return samples_[static_cast<size_t>(j)]; }
    std::vector<cplx>& data() { return samples_; }
    const std::vector<cplx>& data() const { return samples_; }

    double max_abs() const;
    double l2_norm() const;
    RealField real_part() const;

  private:
    Grid grid_;
    std::vector<cplx> samples_;
};

class SpectralField {
  public:
    explicit SpectralField(const Grid& grid);
    SpectralField(const Grid& grid, std::vector<cplx> coefficients);

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.size(); }
    std::span<const cplx> coefficients() const { return coeff_; }
    cplx operator[](int k) const { return coeff_[static_cast<size_t>(k)]; }
    cplx& operator[](int k) { return coeff_[static_cast<size_t>(k)]; }
    std::vector<cplx>& data() { return coeff_; }
    const std::vector<cplx>& data() const { return coeff_; }

    cplx mode(int m) const { return coeff_[static_cast<size_t>(grid_.slot(m))]; }
    double l2_norm() const;  // sqrt( L * sum |c_m|^2 ), Parseval partner of RealField::l2_norm
    // max_m |c(-m) - conj(c(m))| over paired modes
    double conjugate_asymmetry() const;

  private:
    Grid grid_;
    std::vector<cplx> coeff_;
};

// same-grid arithmetic (grid mismatch throws)
RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(double s, const RealField& a);
ComplexField operator+(const ComplexField& a, const ComplexField& b);
ComplexField operator-(const ComplexField& a, const ComplexField& b);
ComplexField operator*(const ComplexField& a, const ComplexField& b);  // pointwise
ComplexField operator*(cplx s, const ComplexField& a);
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace hobo
