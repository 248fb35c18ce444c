// Shared helpers for the test suites: a portable deterministic generator and
// band-limited random field construction (integration state is dealiased, so
// realness-sensitive checks use Nyquist-free fields).

#pragma once

#include <cstdint>
#include <vector>

#include "hobo/grid.hpp"
#include "hobo/spectral.hpp"

namespace hobo::testing {

inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// uniform in [-1, 1)
inline double uniform(uint64_t& state) {
    return 2.0 * (static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53) - 1.0;
}

// mean-zero real field with random spectrum supported on 1 <= |m| <= max_mode
inline RealField random_band_limited(const Grid& grid, uint64_t seed, int max_mode) {
    uint64_t s = seed * 0x9e3779b97f4a7c15ull + 1;
    SpectralField V(grid);
    for (int m = 1; m <= max_mode; ++m) {
        const cplx c(uniform(s), uniform(s));
        V[grid.slot(m)] = c;
        V[grid.slot(-m)] = std::conj(c);
    }
    return inverse_transform(V);
}

inline double max_abs_diff(const RealField& a, const RealField& b) {
    double m = 0.0;
    for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

}  // namespace hobo::testing
