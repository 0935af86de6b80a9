#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bellsynth {

using Complex = std::complex<double>;

// Speed of light. Internal unit system: fs, mm, nm (wavelengths), rad/fs
// (angular frequencies), fs/mm (inverse group velocities).
inline constexpr double kC_nm_fs = 299.792458;
inline constexpr double kC_mm_fs = 2.99792458e-4;
inline constexpr double kPi = std::numbers::pi;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }

inline double angular_freq_rad_fs(double wavelength_nm) {
    return 2.0 * kPi * kC_nm_fs / wavelength_nm;
}

// Intensity-FWHM bandwidth in wavelength -> intensity-FWHM in angular frequency.
inline double bandwidth_rad_fs(double fwhm_nm, double center_nm) {
    return 2.0 * kPi * kC_nm_fs * fwhm_nm / (center_nm * center_nm);
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad physical parameter or argument value.
class DomainError : public Error {
public:
    using Error::Error;
};

// Requested shift/delay outside what the grid can represent.
class RangeError : public Error {
public:
    using Error::Error;
};

// Grid cannot resolve or contain the structure it must represent.
class ResolutionError : public Error {
public:
    using Error::Error;
};

// A value that must satisfy a structural invariant does not.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

// API misuse (unsorted input, wrong-mode call, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

// Execution policy for the numeric kernels. Serial is the reference path;
// Parallel must produce bit-identical results (reductions are chunked with a
// fixed serial combine), so the two are interchangeable everywhere.
enum class Exec { Serial, Parallel };

// Number of OpenMP threads to use, honoring the BELLSYNTH_THREADS cap.
int max_threads();

bool is_power_of_two(int n);

} // namespace bellsynth
