// Test-only oracles, kept independent of the implementation paths they check.
#pragma once

#include <complex>
#include <vector>

#include "bellsynth/common.hpp"

namespace oracles {

using bellsynth::Complex;

// O(N^2) DFT, the reference for the radix-2 FFT.
inline std::vector<Complex> naive_dft(const std::vector<Complex>& x, int sign) {
    const size_t n = x.size();
    std::vector<Complex> out(n);
    for (size_t k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (size_t j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * bellsynth::kPi * static_cast<double>(k * j % n) / n;
            acc += x[j] * Complex(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

// BBO Sellmeier evaluated here from the published coefficients, so the
// dispersion module is checked against an independent transcription.
inline double bbo_n_ordinary(double lambda_um) {
    const double l2 = lambda_um * lambda_um;
    return std::sqrt(2.7405 + 0.0184 / (l2 - 0.0179) - 0.0155 * l2);
}
inline double bbo_n_extraordinary_principal(double lambda_um) {
    const double l2 = lambda_um * lambda_um;
    return std::sqrt(2.3730 + 0.0128 / (l2 - 0.0156) - 0.0044 * l2);
}

inline double binary_entropy_bits(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// Shifted-rectangle self-overlap, the closed form for the cw eps(tau).
inline double rect_overlap(double tau, double width) {
    return std::max(0.0, 1.0 - 2.0 * std::abs(tau) / width);
}

} // namespace oracles
