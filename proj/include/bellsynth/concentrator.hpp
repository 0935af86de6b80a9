#pragma once

#include <span>
#include <vector>

#include "bellsynth/biphoton.hpp"
#include "bellsynth/common.hpp"
#include "bellsynth/qstate.hpp"

namespace bellsynth {

struct MeasurementSetting {
    double tau_fs = 0.0;     // relative arm delay
    double theta1_deg = 45.0; // analyzer angles, interpreted mod 180
    double theta2_deg = 45.0;
    double phi = 0.0;        // quartz-plate phase, radians
};

struct SweepCurve {
    enum class Abscissa { DelayFs, AnalyzerDeg };
    Abscissa kind = Abscissa::DelayFs;
    std::vector<double> abscissa;
    std::vector<double> rate;
};

// Coincidence rate
//   integral |cos t1 cos t2 Pi(t+ + tau/2, t- + tau)
//            + e^{i phi} sin t1 sin t2 Pi(t+ + tau/2, t- - tau)|^2,
// normalized so tau=0, 45/45, phi=0 gives 1. The common t+ translation by
// tau/2 drops out of the integral and is not resampled. Shifts in t- use
// linear interpolation with zero fill outside the grid.
double coincidence_rate(const BiphotonAmplitude& pi, const MeasurementSetting& s,
                        Exec exec = Exec::Parallel);

// Pointwise coincidence_rate over sorted delays. Enforces that the t- grid
// step is at most a quarter of the smallest tau step.
SweepCurve sweep_delay(const BiphotonAmplitude& pi, std::span<const double> tau_fs,
                       double theta1_deg, double theta2_deg, double phi,
                       Exec exec = Exec::Parallel);

SweepCurve sweep_analyzer(const BiphotonAmplitude& pi, double tau_fs, double theta1_deg,
                          std::span<const double> theta2_deg, double phi,
                          Exec exec = Exec::Parallel);

// (max - min) / (max + min); needs >= 3 samples and a positive maximum.
double visibility(const SweepCurve& curve);

// Complex overlap integral of Pi(t+ + tau/2, t- - tau) against
// Pi(t+ + tau/2, t- + tau); |overlap| / norm is the concentration parameter.
Complex biphoton_overlap(const BiphotonAmplitude& pi, double tau_fs, Exec exec = Exec::Parallel);

// eps(tau) = |overlap| / integral |Pi|^2; eps(0) = 1 exactly.
double werner_epsilon(const BiphotonAmplitude& pi, double tau_fs, Exec exec = Exec::Parallel);

// partial_state(werner_epsilon(pi, tau), phi + arg(overlap)).
TwoQubitState output_state(const BiphotonAmplitude& pi, double tau_fs, double phi,
                           Exec exec = Exec::Parallel);

} // namespace bellsynth
