#pragma once

#include "bellsynth/common.hpp"

namespace bellsynth {

enum class CrystalMaterial { BBO };
enum class CrystalCut { TypeII };
enum class Ray { Ordinary, Extraordinary };

struct CrystalParams {
    CrystalMaterial material = CrystalMaterial::BBO;
    double length_mm = 3.0;
    double phase_matching_angle_deg = 49.2;
    CrystalCut cut = CrystalCut::TypeII;

    void validate() const;
};

// Group-delay bookkeeping for one operating point (pump + degenerate
// down-conversion wavelength) of a type-II crystal.
//
// The pump propagates as the extraordinary ray at the phase-matching angle;
// the down-converted photons are one ordinary and one angle-tuned
// extraordinary ray. D = 1/u_o - 1/u_e is the o/e group-delay mismatch per
// mm; D_plus = 1/u_p - (1/u_o + 1/u_e)/2 is the pump-to-mean-pair mismatch.
struct DispersionSummary {
    double n_o = 0.0;            // ordinary index at the down-conversion wavelength
    double n_e_effective = 0.0;  // angle-tuned extraordinary index, same wavelength
    double u_p = 0.0;            // group velocities, mm/fs
    double u_o = 0.0;
    double u_e = 0.0;
    double D = 0.0;              // fs/mm
    double D_plus = 0.0;         // fs/mm
};

// Sellmeier index of BBO. Ordinary rays ignore the angle; extraordinary rays
// use the angle-tuned index 1/n(theta)^2 = cos^2/n_o^2 + sin^2/n_e^2.
// Valid for wavelengths in [200, 2600] nm.
double refractive_index(double wavelength_nm, Ray ray, double angle_deg = 90.0);

// Analytic d n / d lambda in 1/nm (differentiated Sellmeier forms).
double refractive_index_derivative(double wavelength_nm, Ray ray, double angle_deg = 90.0);

// u = c / (n - lambda dn/dlambda), mm/fs.
double group_velocity_mm_fs(double wavelength_nm, Ray ray, double angle_deg = 90.0);

DispersionSummary dispersion_summary(const CrystalParams& crystal, double pump_center_nm,
                                     double down_center_nm);

} // namespace bellsynth
