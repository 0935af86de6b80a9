#pragma once

#include <optional>
#include <vector>

#include "bellsynth/common.hpp"
#include "bellsynth/dispersion.hpp"

namespace bellsynth {

struct PumpParams {
    enum class Mode { Cw, Pulsed };
    Mode mode = Mode::Cw;
    double center_nm = 351.1;
    double bandwidth_nm = 0.0; // intensity FWHM; 0 for cw

    void validate() const;
};

struct FilterParams {
    double center_nm = 0.0; // 0 = centered on the degenerate wavelength
    double fwhm_nm = 0.0;   // intensity FWHM
    // shape: gaussian (the only supported shape)
};

struct GridSpec {
    int n = 0;                // samples per spectral axis, power of two
    double span_rad_fs = 0.0; // one-sided detuning span of each axis

    void validate() const;
};

// Everything the two-photon amplitude depends on.
struct SetupConfig {
    CrystalParams crystal;
    PumpParams pump;
    std::optional<FilterParams> filter1;
    std::optional<FilterParams> filter2;
    GridSpec grid; // n == 0 selects the mode default
    double phase_phi = 0.0;

    double down_center_nm() const { return 2.0 * pump.center_nm; }
    GridSpec effective_grid() const;
};

GridSpec default_grid_cw();     // 8192 points, +-3.5 rad/fs
GridSpec default_grid_pulsed(); // 512 x 512, +-40 THz

// Joint spectral amplitude Phi over detunings from the degenerate center.
//
// Pulsed: full (nu1, nu2) grid of
//   alpha(nu1+nu2) sinc(Delta L/2) e^{i Delta L/2} f1(nu1) f2(nu2),
//   Delta = (1/u_o - 1/u_p) nu1 + (1/u_e - 1/u_p) nu2.
// Cw: the pump line forces nu2 = -nu1; stored as a 1D cut along that
// anti-diagonal (n2 == 1), Phi(nu) = sinc(D L nu/2) e^{i D L nu/2} f1(nu) f2(-nu).
//
// Pump and filter envelopes are Gaussian in amplitude with FWHM given on
// intensity (the amplitude FWHM is sqrt(2) times the quoted value).
struct SpectralAmplitude {
    bool cw = false;
    int n1 = 0, n2 = 0;
    double nu_step = 0.0;
    double nu_min = 0.0; // both axes share the centered axis nu_k = nu_min + k step
    std::vector<Complex> values; // row-major, nu1 index major

    double nu_at(int k) const { return nu_min + k * nu_step; }
    double measure() const { return cw ? nu_step : nu_step * nu_step; }
    double norm_sq() const; // sum |Phi|^2 * measure
};

// Two-photon amplitude Pi on the (t+, t-) grid, t+ = (t1+t2)/2, t- = t1-t2.
struct BiphotonAmplitude {
    bool cw = false;
    int n_plus = 0, n_minus = 0; // cw: n_plus == 1
    double t_plus_step = 0.0;    // cw: nominal t+ window length
    double t_plus_min = 0.0;
    double t_minus_step = 0.0;
    double t_minus_min = 0.0;
    std::vector<Complex> values; // row-major, t+ index major
    double norm_sq = 0.0;        // integral of |Pi|^2 (grid measure)

    double t_minus_at(int j) const { return t_minus_min + j * t_minus_step; }
    double t_minus_max() const { return t_minus_at(n_minus - 1); }
    double measure() const { return t_plus_step * t_minus_step; }
};

SpectralAmplitude joint_spectral_amplitude(const SetupConfig& setup, const GridSpec& grid,
                                           Exec exec = Exec::Parallel);

// Unitary transform of the spectral grid to (t+, t-); Parseval-exact
// (sum |Pi|^2 dt = sum |Phi|^2 dnu to rounding).
BiphotonAmplitude time_domain_amplitude(const SpectralAmplitude& phi, Exec exec = Exec::Parallel);

// Closed-form cw amplitude: Pi(t-) = 1 on [0, D L], 0 elsewhere, sampled on
// the same grid the numeric cw pipeline would use (edge cells cell-averaged).
// The independent oracle for the numeric route.
BiphotonAmplitude analytic_pi_cw(const CrystalParams& crystal, const DispersionSummary& disp,
                                 const GridSpec& grid = default_grid_cw());

// joint_spectral_amplitude + time_domain_amplitude with the setup's grid.
BiphotonAmplitude make_biphoton(const SetupConfig& setup, Exec exec = Exec::Parallel);

// Amplitude grid dump, "t_plus,t_minus,re,im".
std::string biphoton_to_csv(const BiphotonAmplitude& pi);

} // namespace bellsynth
