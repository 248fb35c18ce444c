#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hobo/spectral.hpp"
#include "test_helpers.hpp"

using namespace hobo;
using hobo::testing::random_band_limited;
using hobo::testing::max_abs_diff;

TEST_CASE("forward transform of a constant hits only the zero mode") {
    Grid grid(2.0 * pi, 64);
    RealField v = RealField::from_function(grid, [](double) { return 3.0; });
    SpectralField V = forward_transform(v);
    CHECK(std::abs(V.mode(0) - cplx(3.0)) < 1e-14);
    for (int k = 1; k < grid.size(); ++k) CHECK(std::abs(V[k]) < 1e-14);
}

TEST_CASE("forward transform of cos(kx) puts 1/2 at +-k") {
    Grid grid(2.0 * pi, 128);
    RealField v = RealField::from_function(grid, [](double x) { return std::cos(3.0 * x); });
    SpectralField V = forward_transform(v);
    CHECK(std::abs(V.mode(3) - cplx(0.5)) < 1e-14);
    CHECK(std::abs(V.mode(-3) - cplx(0.5)) < 1e-14);
    for (int k = 0; k < grid.size(); ++k) {
        if (std::abs(grid.mode(k)) == 3) continue;
        CHECK(std::abs(V[k]) < 1e-13);
    }
}

TEST_CASE("discrete Parseval holds to 1e-12 on 100 random fields") {
    Grid grid(32.0 * pi, 256);
    for (uint64_t seed = 0; seed < 100; ++seed) {
        RealField v = random_band_limited(grid, seed, grid.size() / 3);
        // quadrature oracle on the samples
        double quad = 0.0;
        for (double x : v.samples()) quad += x * x;
        quad *= grid.spacing();
        SpectralField V = forward_transform(v);
        double spec = 0.0;
        for (const cplx& c : V.coefficients()) spec += std::norm(c);
        spec *= grid.length();
        CHECK(std::abs(quad - spec) <= 1e-12 * std::abs(quad));
    }
}

TEST_CASE("forward transform rejects a non-finite sample by index") {
    Grid grid(2.0 * pi, 16);
    RealField v(grid);
    v.data()[5] = std::nan("");
    CHECK_THROWS_WITH_AS(forward_transform(v), doctest::Contains("index 5"),
                         std::invalid_argument);
}

TEST_CASE("inverse transform reconstructs constants and cosines") {
    Grid grid(2.0 * pi, 64);
    SpectralField V(grid);
    V[grid.slot(0)] = cplx(1.0);
    RealField one = inverse_transform(V);
    for (int j = 0; j < grid.size(); ++j) CHECK(one[j] == doctest::Approx(1.0).epsilon(1e-14));

    SpectralField C(grid);
    C[grid.slot(1)] = cplx(0.5);
    C[grid.slot(-1)] = cplx(0.5);
    RealField cosx = inverse_transform(C);
    for (int j = 0; j < grid.size(); ++j)
        CHECK(std::abs(cosx[j] - std::cos(grid.node(j))) < 1e-14);
}

TEST_CASE("round trip is the identity in both the sup and L2 norms") {
    Grid grid(32.0 * pi, 512);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        RealField v = random_band_limited(grid, seed, grid.size() / 2 - 1);
        RealField w = inverse_transform(forward_transform(v));
        CHECK(max_abs_diff(v, w) < 1e-12 * v.max_abs());
        CHECK((v - w).l2_norm() < 1e-13 * v.l2_norm());
    }
}

TEST_CASE("inverse transform rejects asymmetric coefficients") {
    Grid grid(2.0 * pi, 32);
    SpectralField V(grid);
    V[grid.slot(3)] = cplx(1.0, 0.2);  // no conjugate partner
    CHECK_THROWS_AS(inverse_transform(V), std::invalid_argument);
}

TEST_CASE("identity multiplier leaves the spectrum unchanged") {
    Grid grid(2.0 * pi, 64);
    RealField v = random_band_limited(grid, 7, 20);
    SpectralField V = forward_transform(v);
    SpectralField W = apply_multiplier(V, MultiplierSymbol::identity(grid));
    for (int k = 0; k < grid.size(); ++k) CHECK(W[k] == V[k]);
}

TEST_CASE("derivative multiplier: d/dx cos = -sin") {
    Grid grid(2.0 * pi, 64);
    RealField v = RealField::from_function(grid, [](double x) { return std::cos(x); });
    RealField dv = apply_multiplier(v, MultiplierSymbol::derivative(grid));
    for (int j = 0; j < grid.size(); ++j)
        CHECK(std::abs(dv[j] + std::sin(grid.node(j))) < 1e-13);
}

TEST_CASE("D^{1/2} scales a single mode by |xi|^{1/2}") {
    Grid grid(2.0 * pi, 64);
    RealField v = RealField::from_function(grid, [](double x) { return std::cos(4.0 * x); });
    RealField w = apply_multiplier(v, MultiplierSymbol::riesz(grid, 0.5));
    for (int j = 0; j < grid.size(); ++j) CHECK(std::abs(w[j] - 2.0 * v[j]) < 1e-13);
}

TEST_CASE("multiplier application rejects a grid mismatch") {
    Grid a(2.0 * pi, 64), b(2.0 * pi, 128);
    SpectralField V(a);
    CHECK_THROWS_AS(apply_multiplier(V, MultiplierSymbol::identity(b)), std::invalid_argument);
}

TEST_CASE("multiplier construction rejects non-finite symbol values") {
    Grid grid(2.0 * pi, 16);
    CHECK_THROWS_AS(MultiplierSymbol::from_function(grid, [](double xi) { return cplx(1.0 / xi); }),
                    std::invalid_argument);
}

TEST_CASE("Hilbert transform maps cos to sin and sin to -cos") {
    Grid grid(2.0 * pi, 128);
    for (int k : {1, 2, 5, 11}) {
        RealField c = RealField::from_function(grid, [k](double x) { return std::cos(k * x); });
        RealField s = RealField::from_function(grid, [k](double x) { return std::sin(k * x); });
        CHECK(max_abs_diff(hilbert_transform(c), s) < 1e-13);
        RealField ms = hilbert_transform(s);
        for (int j = 0; j < grid.size(); ++j)
            CHECK(std::abs(ms[j] + std::cos(k * grid.node(j))) < 1e-13);
    }
}

TEST_CASE("Hilbert transform squares to minus identity on mean-zero fields") {
    Grid grid(32.0 * pi, 256);
    for (uint64_t seed = 0; seed < 10; ++seed) {
        RealField v = random_band_limited(grid, seed, grid.size() / 3);
        RealField hh = hilbert_transform(hilbert_transform(v));
        const double mean = v.mean();
        for (int j = 0; j < grid.size(); ++j)
            CHECK(std::abs(hh[j] + (v[j] - mean)) < 1e-12 * std::max(1.0, v.max_abs()));
    }
}

TEST_CASE("sharp projections partition the spectrum: P+ + P- + mean = id") {
    Grid grid(2.0 * pi, 64);
    RealField v = random_band_limited(grid, 3, grid.size() / 2 - 1);
    // include a nonzero mean and a Nyquist component
    v.data()[0] += 0.1;
    SpectralField V = forward_transform(v);
    SpectralField P = project(V, Projection::plus);
    SpectralField M = project(V, Projection::minus);
    for (int k = 0; k < grid.size(); ++k) {
        cplx expect = V[k];
        cplx got = P[k] + M[k] + (grid.mode(k) == 0 ? V[k] : cplx(0.0));
        CHECK(std::abs(got - expect) < 1e-15);
    }
}

TEST_CASE("a dyadic block passes a mode deep inside its annulus unchanged") {
    Grid grid(2.0 * pi, 256);
    RealField v = RealField::from_function(grid, [](double x) { return std::cos(4.0 * x); });
    RealField w = project(v, Projection::block, 4.0);
    CHECK(max_abs_diff(v, w) < 1e-13);  // phi_4(4) = phi(1) = 1
}

TEST_CASE("Littlewood-Paley ladder sums to one on covered wavenumbers") {
    Grid grid(32.0 * pi, 1024);
    auto ladder = lp_ladder(grid);
    const double top = ladder.back();
    CHECK(top == 16.0);  // nyquist = pi N / L = 32
    for (int k = 0; k < grid.size(); ++k) {
        const double xi = grid.wavenumber(k);
        if (std::abs(xi) > top) continue;
        double sum = 0.0;
        for (double n : ladder) sum += lp_block_symbol(n, xi);
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("cutoff eta satisfies the four stated constraints") {
    CHECK(cutoff_eta(0.5) == 1.0);
    CHECK(cutoff_eta(3.0) == 0.0);
    CHECK(cutoff_eta(1.0) == 1.0);
    CHECK(cutoff_eta(2.0) == 0.0);
    for (double xi : {0.3, 0.9, 1.2, 1.7, 2.4}) {
        CHECK(cutoff_eta(xi) == cutoff_eta(-xi));
        CHECK(cutoff_eta(xi) >= 0.0);
        CHECK(cutoff_eta(xi) <= 1.0);
    }
    // phi vanishes for |xi| <= 1/2 and |xi| >= 2
    CHECK(lp_phi(0.4) == 0.0);
    CHECK(lp_phi(2.5) == 0.0);
    CHECK(lp_phi(1.0) > 0.0);
}

TEST_CASE("non-dyadic block values are rejected") {
    Grid grid(2.0 * pi, 64);
    SpectralField V(grid);
    CHECK_THROWS_AS(project(V, Projection::block, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(project(V, Projection::geq, 0.75), std::invalid_argument);
}

TEST_CASE("H = -i P+ + i P- as an operator identity") {
    Grid grid(32.0 * pi, 256);
    for (uint64_t seed = 0; seed < 5; ++seed) {
        RealField v = random_band_limited(grid, seed, grid.size() / 2 - 1);
        SpectralField V = forward_transform(v);
        SpectralField H = hilbert_transform(V);
        SpectralField P = project(V, Projection::plus);
        SpectralField M = project(V, Projection::minus);
        for (int k = 0; k < grid.size(); ++k) {
            cplx other = cplx(0.0, -1.0) * P[k] + cplx(0.0, 1.0) * M[k];
            CHECK(std::abs(H[k] - other) <= 1e-13 * std::max(1.0, std::abs(V[k])));
        }
    }
}

TEST_CASE("Hermitian symbols map real fields to real fields") {
    Grid grid(32.0 * pi, 256);
    RealField v = random_band_limited(grid, 11, grid.size() / 3);
    for (auto sym : {MultiplierSymbol::derivative(grid), MultiplierSymbol::hilbert(grid),
                     MultiplierSymbol::riesz(grid, 1.5), MultiplierSymbol::bessel(grid, -1.0)}) {
        ComplexField z = inverse_transform_complex(apply_multiplier(forward_transform(v), sym));
        double max_imag = 0.0;
        for (const cplx& c : z.samples()) max_imag = std::max(max_imag, std::abs(c.imag()));
        CHECK(max_imag < 1e-11 * std::max(1.0, z.max_abs()));
    }
}

TEST_CASE("P_hi + P_lo and P_HI + P_LO recompose the identity") {
    Grid grid(32.0 * pi, 256);
    RealField v = random_band_limited(grid, 4, grid.size() / 2 - 1);
    RealField hi = project(v, Projection::hi);
    RealField lo = project(v, Projection::lo);
    CHECK(max_abs_diff(hi + lo, v) < 1e-14 * std::max(1.0, v.max_abs()));
    RealField cap_hi = project(v, Projection::HI);
    RealField cap_lo = project(v, Projection::LO);
    CHECK(max_abs_diff(cap_hi + cap_lo, v) < 1e-14 * std::max(1.0, v.max_abs()));
}

TEST_CASE("Littlewood-Paley blocks reconstruct band-limited fields") {
    Grid grid(32.0 * pi, 1024);
    auto ladder = lp_ladder(grid);
    const double top = ladder.back();
    // band-limit strictly below the top block
    const int max_mode = static_cast<int>(top * grid.length() / (2.0 * pi)) - 1;
    RealField v = random_band_limited(grid, 9, max_mode);
    RealField sum(grid);
    for (double n : ladder) sum = sum + project(v, Projection::block, n);
    CHECK(max_abs_diff(sum, v) < 1e-11 * std::max(1.0, v.max_abs()));
}

TEST_CASE("conjugate symmetry of spectra from real fields") {
    Grid grid(2.0 * pi, 128);
    RealField v = random_band_limited(grid, 21, 42);
    CHECK(forward_transform(v).conjugate_asymmetry() < 1e-13 * std::max(1.0, v.max_abs()));
}

TEST_CASE("P_{>=N} complements the blocks below N") {
    Grid grid(32.0 * pi, 1024);
    RealField v = random_band_limited(grid, 14, 200);
    RealField tail = project(v, Projection::geq, 8.0);
    RealField low(grid);
    for (double n : {0.0, 1.0, 2.0, 4.0}) low = low + project(v, Projection::block, n);
    CHECK(max_abs_diff(tail + low, v) < 1e-12 * std::max(1.0, v.max_abs()));
}

TEST_CASE("real-field projection interface rejects sign projections") {
    Grid grid(2.0 * pi, 64);
    RealField v(grid);
    CHECK_THROWS_AS(project(v, Projection::plus), std::invalid_argument);
    CHECK_NOTHROW(project(v, Projection::hi));
}
