// Timing comparison of the serial reference kernels against the OpenMP
// versions: JSA fill, spectral->time transform, and a delay sweep.
#include <chrono>
#include <cstdio>
#include <vector>

#include "bellsynth/biphoton.hpp"
#include "bellsynth/concentrator.hpp"

using namespace bellsynth;

namespace {

template <typename F>
double time_ms(F&& f, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto a = std::chrono::steady_clock::now();
        f();
        const auto b = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(b - a).count());
    }
    return best;
}

SetupConfig pulsed_setup() {
    SetupConfig s;
    s.crystal = {CrystalMaterial::BBO, 3.0, 45.5, CrystalCut::TypeII};
    s.pump = {PumpParams::Mode::Pulsed, 390.0, 2.0};
    s.filter1 = FilterParams{0.0, 20.0};
    s.filter2 = FilterParams{0.0, 20.0};
    s.grid = {512, default_grid_pulsed().span_rad_fs};
    return s;
}

} // namespace

int main() {
    const SetupConfig setup = pulsed_setup();
    const GridSpec grid = setup.effective_grid();

    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");
    auto report = [](const char* name, double ts, double tp) {
        std::printf("%-28s %12.2f %12.2f %8.2fx\n", name, ts, tp, ts / tp);
    };

    {
        const double ts = time_ms([&] { joint_spectral_amplitude(setup, grid, Exec::Serial); });
        const double tp = time_ms([&] { joint_spectral_amplitude(setup, grid, Exec::Parallel); });
        report("jsa_fill_512", ts, tp);
    }

    const SpectralAmplitude phi = joint_spectral_amplitude(setup, grid, Exec::Parallel);
    {
        const double ts = time_ms([&] { time_domain_amplitude(phi, Exec::Serial); });
        const double tp = time_ms([&] { time_domain_amplitude(phi, Exec::Parallel); });
        report("time_domain_512", ts, tp);
    }

    const BiphotonAmplitude pi = time_domain_amplitude(phi, Exec::Parallel);
    {
        std::vector<double> taus;
        for (int i = 0; i < 48; ++i) taus.push_back(-1200.0 + i * 50.0);
        const double ts = time_ms([&] { sweep_delay(pi, taus, 45.0, -45.0, 0.0, Exec::Serial); });
        const double tp = time_ms([&] { sweep_delay(pi, taus, 45.0, -45.0, 0.0, Exec::Parallel); });
        report("delay_sweep_48pts", ts, tp);

        // sanity: both paths must agree exactly
        const SweepCurve a = sweep_delay(pi, taus, 45.0, -45.0, 0.0, Exec::Serial);
        const SweepCurve b = sweep_delay(pi, taus, 45.0, -45.0, 0.0, Exec::Parallel);
        double maxdiff = 0.0;
        for (size_t i = 0; i < a.rate.size(); ++i)
            maxdiff = std::max(maxdiff, std::abs(a.rate[i] - b.rate[i]));
        std::printf("serial/parallel max diff: %.3g\n", maxdiff);
    }
    return 0;
}
