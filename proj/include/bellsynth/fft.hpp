#pragma once

#include <vector>

#include "bellsynth/common.hpp"

namespace bellsynth {

// In-place iterative radix-2 FFT, length must be a power of two.
// sign = -1: forward (sum x_k e^{-2pi i k n / N}); sign = +1: inverse kernel
// (no 1/N scaling applied).
void fft_inplace(Complex* data, int n, int sign);

// 2D FFT over a row-major rows x cols array (both powers of two).
void fft_2d(std::vector<Complex>& data, int rows, int cols, int sign, Exec exec);

} // namespace bellsynth
