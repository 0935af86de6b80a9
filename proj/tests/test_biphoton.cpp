#include <doctest.h>

#include <cmath>

#include "bellsynth/biphoton.hpp"
#include "bellsynth/concentrator.hpp"
#include "oracles.hpp"

using namespace bellsynth;

namespace {

SetupConfig cw_setup() {
    SetupConfig s;
    s.crystal = {CrystalMaterial::BBO, 3.0, 49.2, CrystalCut::TypeII};
    s.pump = {PumpParams::Mode::Cw, 351.1, 0.0};
    return s;
}

SetupConfig pulsed_setup(double length_mm = 3.0, bool filters = true, int n = 512) {
    SetupConfig s;
    s.crystal = {CrystalMaterial::BBO, length_mm, 45.5, CrystalCut::TypeII};
    s.pump = {PumpParams::Mode::Pulsed, 390.0, 2.0};
    if (filters) {
        s.filter1 = FilterParams{0.0, 20.0};
        s.filter2 = FilterParams{0.0, 20.0};
    }
    s.grid = {n, default_grid_pulsed().span_rad_fs};
    return s;
}

double cw_DL(const SetupConfig& s) {
    const DispersionSummary d =
        dispersion_summary(s.crystal, s.pump.center_nm, s.down_center_nm());
    return d.D * s.crystal.length_mm;
}

} // namespace

TEST_CASE("cw spectral amplitude: 1d reduction, first sinc zero, mirror symmetry") {
    SetupConfig s = cw_setup();
    s.filter1 = FilterParams{0.0, 20.0};
    s.filter2 = FilterParams{0.0, 20.0};
    const GridSpec grid = s.effective_grid();
    const SpectralAmplitude phi = joint_spectral_amplitude(s, grid);
    CHECK(phi.cw);
    CHECK(phi.n2 == 1);
    CHECK(phi.n1 == grid.n);

    // first local minimum of |Phi| above the center sits at nu = 2 pi / (D L),
    // i.e. (nu1 - nu2)/2pi = 2/(D L)
    const double DL = cw_DL(s);
    const int center = grid.n / 2;
    int k = center + 1;
    while (k + 1 < grid.n && std::abs(phi.values[k + 1]) < std::abs(phi.values[k])) ++k;
    CHECK(std::abs(phi.nu_at(k) - 2.0 * kPi / DL) <= phi.nu_step);

    // the two photons' marginal spectra mirror about degeneracy
    for (int i = 1; i < grid.n; ++i)
        CHECK(std::abs(phi.values[i]) ==
              doctest::Approx(std::abs(phi.values[grid.n - i])).epsilon(1e-9));
}

TEST_CASE("transform is Parseval-exact") {
    {
        const SetupConfig s = cw_setup();
        const SpectralAmplitude phi = joint_spectral_amplitude(s, s.effective_grid());
        const BiphotonAmplitude pi = time_domain_amplitude(phi);
        CHECK(pi.norm_sq / pi.t_plus_step ==
              doctest::Approx(phi.norm_sq()).epsilon(1e-9)); // per unit t+ window
    }
    {
        const SetupConfig s = pulsed_setup();
        const SpectralAmplitude phi = joint_spectral_amplitude(s, s.effective_grid());
        const BiphotonAmplitude pi = time_domain_amplitude(phi);
        CHECK(pi.norm_sq == doctest::Approx(phi.norm_sq()).epsilon(1e-9));
    }
}

TEST_CASE("numeric cw amplitude vs the analytic rectangle") {
    const SetupConfig s = cw_setup();
    const BiphotonAmplitude num = make_biphoton(s);
    const DispersionSummary d =
        dispersion_summary(s.crystal, s.pump.center_nm, s.down_center_nm());
    const BiphotonAmplitude rect = analytic_pi_cw(s.crystal, d, s.effective_grid());
    REQUIRE(num.n_minus == rect.n_minus);
    REQUIRE(num.t_minus_step == doctest::Approx(rect.t_minus_step).epsilon(1e-12));

    // normalized L2 difference with the relative phase aligned
    Complex inner(0.0, 0.0);
    double nn = 0.0, nr = 0.0;
    for (int j = 0; j < num.n_minus; ++j) {
        inner += std::conj(rect.values[j]) * num.values[j];
        nn += std::norm(num.values[j]);
        nr += std::norm(rect.values[j]);
    }
    const Complex phase = inner / std::abs(inner);
    double diff2 = 0.0;
    for (int j = 0; j < num.n_minus; ++j) {
        const Complex dlt =
            num.values[j] / std::sqrt(nn) - phase * rect.values[j] / std::sqrt(nr);
        diff2 += std::norm(dlt);
    }
    CHECK(std::sqrt(diff2) < 0.02);

    // >= 95% of the energy inside [0, D L]
    const double DL = d.D * s.crystal.length_mm;
    double inside = 0.0;
    for (int j = 0; j < num.n_minus; ++j) {
        const double t = num.t_minus_at(j);
        if (t >= -1e-9 && t <= DL) inside += std::norm(num.values[j]);
    }
    CHECK(inside / nn > 0.95);
}

TEST_CASE("analytic rectangle: norm and shifted overlap") {
    const SetupConfig s = cw_setup();
    const DispersionSummary d =
        dispersion_summary(s.crystal, s.pump.center_nm, s.down_center_nm());
    const BiphotonAmplitude rect = analytic_pi_cw(s.crystal, d, s.effective_grid());
    const double DL = d.D * s.crystal.length_mm;
    CHECK(rect.norm_sq == doctest::Approx(DL * rect.t_plus_step).epsilon(2e-3));

    const double h = rect.t_minus_step;
    for (int m : {0, 10, 40, 120, 400, 460}) {
        const double tau = m * h;
        const double eps = werner_epsilon(rect, tau);
        CHECK(std::abs(eps - oracles::rect_overlap(tau, DL)) < 0.01);
    }
    CHECK(werner_epsilon(rect, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(werner_epsilon(rect, DL) == doctest::Approx(0.0).scale(1).epsilon(1e-12));

    const std::string dump = biphoton_to_csv(rect);
    CHECK(dump.rfind("t_plus,t_minus,re,im", 0) == 0);
}

TEST_CASE("pulsed t+ envelope carries the pump duration") {
    const SetupConfig s = pulsed_setup(3.0, /*filters=*/false);
    const BiphotonAmplitude pi = make_biphoton(s);
    const DispersionSummary d =
        dispersion_summary(s.crystal, s.pump.center_nm, s.down_center_nm());
    const double DL = d.D * s.crystal.length_mm;

    // |Pi(t+)|^2 at fixed t- is the pump intensity envelope; FWHM = 4 ln2 / W
    int jc = 0;
    for (int j = 0; j < pi.n_minus; ++j)
        if (std::abs(pi.t_minus_at(j) - DL / 2) < std::abs(pi.t_minus_at(jc) - DL / 2)) jc = j;
    std::vector<double> prof(pi.n_plus);
    for (int r = 0; r < pi.n_plus; ++r)
        prof[r] = std::norm(pi.values[static_cast<size_t>(r) * pi.n_minus + jc]);
    const int rmax =
        static_cast<int>(std::max_element(prof.begin(), prof.end()) - prof.begin());
    const double half = prof[rmax] / 2.0;
    int lo = rmax, hi = rmax;
    while (lo > 0 && prof[lo] > half) --lo;
    while (hi + 1 < pi.n_plus && prof[hi] > half) ++hi;
    auto t_at = [&](int i) { return pi.t_plus_min + i * pi.t_plus_step; };
    auto interp = [&](int a, int b) {
        return t_at(a) + (half - prof[a]) / (prof[b] - prof[a]) * (t_at(b) - t_at(a));
    };
    const double fwhm = interp(hi - 1, hi) - interp(lo + 1, lo);
    const double wp = bandwidth_rad_fs(s.pump.bandwidth_nm, s.pump.center_nm);
    CHECK(fwhm == doctest::Approx(4.0 * std::log(2.0) / wp).epsilon(0.02));
}

TEST_CASE("narrowing the filters widens the t- support") {
    double prev_rms = 0.0;
    for (double fw : {20.0, 5.0, 2.0}) {
        SetupConfig s = pulsed_setup();
        s.filter1 = FilterParams{0.0, fw};
        s.filter2 = FilterParams{0.0, fw};
        const BiphotonAmplitude pi = make_biphoton(s);
        double w = 0.0, m1 = 0.0, m2 = 0.0;
        for (int r = 0; r < pi.n_plus; ++r)
            for (int j = 0; j < pi.n_minus; ++j) {
                const double p = std::norm(pi.values[static_cast<size_t>(r) * pi.n_minus + j]);
                const double t = pi.t_minus_at(j);
                w += p;
                m1 += p * t;
                m2 += p * t * t;
            }
        const double rms = std::sqrt(m2 / w - (m1 / w) * (m1 / w));
        CHECK(rms > prev_rms);
        prev_rms = rms;
    }
}

TEST_CASE("a much wider filter acts as identity") {
    SetupConfig bare = pulsed_setup(3.0, false);
    SetupConfig wide = pulsed_setup(3.0, false);
    wide.filter1 = FilterParams{0.0, 1e9};
    wide.filter2 = FilterParams{0.0, 1e9};
    const SpectralAmplitude a = joint_spectral_amplitude(bare, bare.effective_grid());
    const SpectralAmplitude b = joint_spectral_amplitude(wide, wide.effective_grid());
    double maxdiff = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        maxdiff = std::max(maxdiff, std::abs(a.values[i] - b.values[i]));
    CHECK(maxdiff < 1e-12);
}

TEST_CASE("grid preconditions are enforced") {
    SetupConfig s = pulsed_setup();
    s.grid = {512, 0.002}; // span far below 5x pump bandwidth
    CHECK_THROWS_AS(joint_spectral_amplitude(s, s.grid), ResolutionError);

    SetupConfig coarse = pulsed_setup();
    coarse.grid = {16, default_grid_pulsed().span_rad_fs}; // lobe under-sampled
    CHECK_THROWS_AS(joint_spectral_amplitude(coarse, coarse.grid), ResolutionError);

    SetupConfig odd = pulsed_setup();
    odd.grid = {300, default_grid_pulsed().span_rad_fs};
    CHECK_THROWS_AS(joint_spectral_amplitude(odd, odd.grid), DomainError);

    // t- strip must reach +-3 D L: a 256-point default-span grid cannot hold a
    // 3 mm crystal
    SetupConfig small = pulsed_setup(3.0, true, 256);
    CHECK_THROWS_AS(make_biphoton(small), ResolutionError);
}

TEST_CASE("pump parameter validation") {
    PumpParams cw_bad{PumpParams::Mode::Cw, 351.1, 1.0};
    CHECK_THROWS_AS(cw_bad.validate(), DomainError);
    PumpParams pulsed_bad{PumpParams::Mode::Pulsed, 390.0, 0.0};
    CHECK_THROWS_AS(pulsed_bad.validate(), DomainError);
}

TEST_CASE("doubling the grid moves downstream rates by < 0.1%") {
    // 1 mm crystal so both sizes satisfy the span invariants
    const SetupConfig s256 = pulsed_setup(1.0, true, 256);
    const SetupConfig s512 = pulsed_setup(1.0, true, 512);
    const BiphotonAmplitude a = make_biphoton(s256);
    const BiphotonAmplitude b = make_biphoton(s512);
    for (double tau : {0.0, 50.0, 100.0, 200.0}) {
        for (double th2 : {45.0, -45.0, 20.0}) {
            const double ra = coincidence_rate(a, {tau, 45.0, th2, 0.0});
            const double rb = coincidence_rate(b, {tau, 45.0, th2, 0.0});
            CHECK(std::abs(ra - rb) < 1e-3 * std::max({ra, rb, 0.01}));
        }
    }
}

TEST_CASE("serial and parallel construction agree exactly") {
    const SetupConfig s = pulsed_setup(1.0, true, 256);
    const SpectralAmplitude ps = joint_spectral_amplitude(s, s.effective_grid(), Exec::Serial);
    const SpectralAmplitude pp = joint_spectral_amplitude(s, s.effective_grid(), Exec::Parallel);
    REQUIRE(ps.values.size() == pp.values.size());
    for (size_t i = 0; i < ps.values.size(); ++i) CHECK(ps.values[i] == pp.values[i]);

    const BiphotonAmplitude ts = time_domain_amplitude(ps, Exec::Serial);
    const BiphotonAmplitude tp = time_domain_amplitude(pp, Exec::Parallel);
    REQUIRE(ts.values.size() == tp.values.size());
    for (size_t i = 0; i < ts.values.size(); ++i) CHECK(ts.values[i] == tp.values[i]);
    CHECK(ts.norm_sq == tp.norm_sq);
}
