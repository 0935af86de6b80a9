#include "bellsynth/dispersion.hpp"

#include <cmath>

namespace bellsynth {

namespace {

// BBO Sellmeier coefficients (Eimerl/Kato set), lambda in micrometers:
//   n_o^2 = 2.7405 + 0.0184/(l^2 - 0.0179) - 0.0155 l^2
//   n_e^2 = 2.3730 + 0.0128/(l^2 - 0.0156) - 0.0044 l^2
struct Sellmeier {
    double A, B, C, D;
    double n2(double l_um) const {
        const double l2 = l_um * l_um;
        return A + B / (l2 - C) - D * l2;
    }
    // d(n^2)/dl = 2 l (-B/(l^2-C)^2 - D)
    double dn2(double l_um) const {
        const double l2 = l_um * l_um;
        const double den = l2 - C;
        return 2.0 * l_um * (-B / (den * den) - D);
    }
};

constexpr Sellmeier kBboOrdinary{2.7405, 0.0184, 0.0179, 0.0155};
constexpr Sellmeier kBboExtraordinary{2.3730, 0.0128, 0.0156, 0.0044};

void check_wavelength(double wavelength_nm) {
    if (!(wavelength_nm >= 200.0 && wavelength_nm <= 2600.0))
        throw DomainError("refractive_index: wavelength " + std::to_string(wavelength_nm) +
                          " nm outside Sellmeier validity range [200, 2600] nm");
}

double index_from_n2(const Sellmeier& s, double l_um) { return std::sqrt(s.n2(l_um)); }

// dn/dl = d(n^2)/dl / (2 n), per micrometer
double deriv_principal(const Sellmeier& s, double l_um) {
    return s.dn2(l_um) / (2.0 * index_from_n2(s, l_um));
}

} // namespace

void CrystalParams::validate() const {
    if (!(length_mm > 0.0)) throw DomainError("crystal length must be positive");
    if (!(phase_matching_angle_deg > 0.0 && phase_matching_angle_deg < 90.0))
        throw DomainError("phase-matching angle must lie in (0, 90) degrees");
}

double refractive_index(double wavelength_nm, Ray ray, double angle_deg) {
    check_wavelength(wavelength_nm);
    const double l = wavelength_nm * 1e-3;
    const double no = index_from_n2(kBboOrdinary, l);
    if (ray == Ray::Ordinary) return no;
    const double ne = index_from_n2(kBboExtraordinary, l);
    const double th = deg2rad(angle_deg);
    const double c2 = std::cos(th) * std::cos(th);
    const double s2 = std::sin(th) * std::sin(th);
    return 1.0 / std::sqrt(c2 / (no * no) + s2 / (ne * ne));
}

double refractive_index_derivative(double wavelength_nm, Ray ray, double angle_deg) {
    check_wavelength(wavelength_nm);
    const double l = wavelength_nm * 1e-3;
    if (ray == Ray::Ordinary) return deriv_principal(kBboOrdinary, l) * 1e-3; // per nm
    const double no = index_from_n2(kBboOrdinary, l);
    const double ne = index_from_n2(kBboExtraordinary, l);
    const double dno = deriv_principal(kBboOrdinary, l);
    const double dne = deriv_principal(kBboExtraordinary, l);
    const double th = deg2rad(angle_deg);
    const double c2 = std::cos(th) * std::cos(th);
    const double s2 = std::sin(th) * std::sin(th);
    const double nth = 1.0 / std::sqrt(c2 / (no * no) + s2 / (ne * ne));
    // from n(th)^-2 = c2 n_o^-2 + s2 n_e^-2
    const double d = nth * nth * nth *
                     (c2 * dno / (no * no * no) + s2 * dne / (ne * ne * ne));
    return d * 1e-3;
}

double group_velocity_mm_fs(double wavelength_nm, Ray ray, double angle_deg) {
    const double n = refractive_index(wavelength_nm, ray, angle_deg);
    const double dn = refractive_index_derivative(wavelength_nm, ray, angle_deg);
    const double n_group = n - wavelength_nm * dn;
    return kC_mm_fs / n_group;
}

DispersionSummary dispersion_summary(const CrystalParams& crystal, double pump_center_nm,
                                     double down_center_nm) {
    crystal.validate();
    if (std::abs(down_center_nm - 2.0 * pump_center_nm) > 0.02 * down_center_nm)
        throw DomainError("dispersion_summary: frequency-degenerate operation expected "
                          "(down-conversion center must be ~2x the pump center)");

    const double th = crystal.phase_matching_angle_deg;
    DispersionSummary s;
    s.n_o = refractive_index(down_center_nm, Ray::Ordinary);
    s.n_e_effective = refractive_index(down_center_nm, Ray::Extraordinary, th);
    s.u_o = group_velocity_mm_fs(down_center_nm, Ray::Ordinary);
    s.u_e = group_velocity_mm_fs(down_center_nm, Ray::Extraordinary, th);
    // type-II: the pump is the extraordinary ray at the same internal angle
    s.u_p = group_velocity_mm_fs(pump_center_nm, Ray::Extraordinary, th);
    s.D = 1.0 / s.u_o - 1.0 / s.u_e;
    s.D_plus = 1.0 / s.u_p - 0.5 * (1.0 / s.u_o + 1.0 / s.u_e);
    if (!(s.u_o > 0.0 && s.u_e > 0.0 && s.u_p > 0.0))
        throw InvariantViolation("dispersion_summary: non-positive group velocity");
    if (std::abs(s.D) < 1e-9)
        throw InvariantViolation("dispersion_summary: vanishing o/e group-delay mismatch");
    return s;
}

} // namespace bellsynth
