#include "bellsynth/fft.hpp"

#include <cstdlib>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bellsynth {

int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* cap = std::getenv("BELLSYNTH_THREADS")) {
        int c = std::atoi(cap);
        if (c >= 1 && c < n) n = c;
    }
    return n;
#else
    return 1;
#endif
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_inplace(Complex* a, int n, int sign) {
    if (!is_power_of_two(n)) throw DomainError("fft: length must be a power of two");
    // bit-reversal permutation
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / len;
        const Complex wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                Complex u = a[i + k];
                Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void fft_2d(std::vector<Complex>& data, int rows, int cols, int sign, Exec exec) {
    if (static_cast<long>(rows) * cols != static_cast<long>(data.size()))
        throw DomainError("fft_2d: size mismatch");
    const bool par = exec == Exec::Parallel;
    (void)par;

#pragma omp parallel for schedule(static) num_threads(max_threads()) if (par)
    for (int r = 0; r < rows; ++r) {
        fft_inplace(data.data() + static_cast<long>(r) * cols, cols, sign);
    }

#pragma omp parallel num_threads(max_threads()) if (par)
    {
        std::vector<Complex> column(rows);
#pragma omp for schedule(static)
        for (int c = 0; c < cols; ++c) {
            for (int r = 0; r < rows; ++r) column[r] = data[static_cast<long>(r) * cols + c];
            fft_inplace(column.data(), rows, sign);
            for (int r = 0; r < rows; ++r) data[static_cast<long>(r) * cols + c] = column[r];
        }
    }
}

} // namespace bellsynth
