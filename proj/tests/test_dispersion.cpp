#include <doctest.h>

#include "bellsynth/dispersion.hpp"
#include "oracles.hpp"

using namespace bellsynth;

namespace {

CrystalParams bbo(double length_mm, double angle_deg) {
    return {CrystalMaterial::BBO, length_mm, angle_deg, CrystalCut::TypeII};
}

} // namespace

TEST_CASE("BBO ordinary index at 702.2 nm") {
    const double n = refractive_index(702.2, Ray::Ordinary);
    CHECK(n == doctest::Approx(1.665).epsilon(5e-4));
    // independent transcription of the Sellmeier polynomial
    CHECK(n == doctest::Approx(oracles::bbo_n_ordinary(0.7022)).epsilon(1e-12));
}

TEST_CASE("angle-tuned index degenerates to the principal values") {
    for (double lam : {500.0, 702.2, 780.0}) {
        CHECK(refractive_index(lam, Ray::Extraordinary, 90.0) ==
              doctest::Approx(oracles::bbo_n_extraordinary_principal(lam * 1e-3)).epsilon(1e-12));
        CHECK(refractive_index(lam, Ray::Extraordinary, 0.0) ==
              doctest::Approx(refractive_index(lam, Ray::Ordinary)).epsilon(1e-12));
    }
}

TEST_CASE("wavelengths outside the Sellmeier range are rejected") {
    CHECK_THROWS_AS(refractive_index(150.0, Ray::Ordinary), DomainError);
    CHECK_THROWS_AS(refractive_index(2700.0, Ray::Ordinary), DomainError);
}

TEST_CASE("analytic index derivative matches central differences") {
    const double h = 0.01; // nm
    for (double lam : {420.0, 550.0, 702.2, 780.0, 900.0}) {
        for (auto [ray, angle] : {std::pair{Ray::Ordinary, 90.0}, {Ray::Extraordinary, 49.2},
                                  {Ray::Extraordinary, 43.5}}) {
            const double analytic = refractive_index_derivative(lam, ray, angle);
            const double fd =
                (refractive_index(lam + h, ray, angle) - refractive_index(lam - h, ray, angle)) /
                (2.0 * h);
            CHECK(analytic == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("n_o decreases monotonically across the visible") {
    double prev = refractive_index(400.0, Ray::Ordinary);
    for (double lam = 410.0; lam <= 900.0; lam += 10.0) {
        const double n = refractive_index(lam, Ray::Ordinary);
        CHECK(n < prev);
        prev = n;
    }
}

TEST_CASE("cw operating point: D L anchors at 742 fs") {
    const DispersionSummary s = dispersion_summary(bbo(3.0, 49.2), 351.1, 702.2);
    const double DL = s.D * 3.0;
    CHECK(std::abs(DL - 742.0) / 742.0 < 0.05);
    CHECK(DL == doctest::Approx(756.68).epsilon(1e-3)); // frozen regression value
    CHECK(s.D > 0.0);
    CHECK(s.u_o > 0.0);
    CHECK(s.u_e > 0.0);
    CHECK(s.u_p > 0.0);
    CHECK(s.u_e > s.u_o); // the e-ray leads in BBO
}

TEST_CASE("pulsed operating point at the 780 nm default angle") {
    const DispersionSummary s = dispersion_summary(bbo(3.0, 43.5), 390.0, 780.0);
    CHECK(s.D * 3.0 == doctest::Approx(625.2).epsilon(0.10));
    CHECK(s.D_plus > 0.0);
}

TEST_CASE("D L is linear in crystal length and D independent of it") {
    const DispersionSummary s1 = dispersion_summary(bbo(3.0, 49.2), 351.1, 702.2);
    const DispersionSummary s2 = dispersion_summary(bbo(6.0, 49.2), 351.1, 702.2);
    CHECK(s1.D == doctest::Approx(s2.D).epsilon(1e-14));
    CHECK(s2.D * 6.0 == doctest::Approx(2.0 * s1.D * 3.0).epsilon(1e-14));
}

TEST_CASE("degenerate-operation precondition is enforced") {
    CHECK_THROWS_AS(dispersion_summary(bbo(3.0, 49.2), 351.1, 760.0), DomainError);
}

TEST_CASE("crystal parameter validation") {
    CHECK_THROWS_AS(dispersion_summary(bbo(-1.0, 49.2), 351.1, 702.2), DomainError);
    CHECK_THROWS_AS(dispersion_summary(bbo(3.0, 95.0), 351.1, 702.2), DomainError);
}
