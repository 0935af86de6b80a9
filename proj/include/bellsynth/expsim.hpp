#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bellsynth/concentrator.hpp"
#include "bellsynth/qstate.hpp"

namespace bellsynth {

struct DetectionConfig {
    double pair_rate_hz = 10000.0;
    double efficiency1 = 1.0;
    double efficiency2 = 1.0;
    double background1_hz = 0.0;
    double background2_hz = 0.0;
    double coincidence_window_ns = 3.0;
    double tac_bin_ns = 0.1;
    double duration_s = 1.0;
    uint64_t rng_seed = 1;
    double pair_jitter_sigma_ns = 0.3; // relative D2-vs-D1 timing spread

    void validate() const;
};

enum class Detector : uint8_t { D1 = 1, D2 = 2 };
enum class Origin : uint8_t { Pair, Background };

struct EventRecord {
    Detector detector;
    double time_ns;
    Origin origin;
};

// Monte Carlo detection chain. Pair emissions are a Poisson process at
// pair_rate; each pair picks one of the four joint analyzer outcomes from the
// state's projective probabilities, surviving photons are detected with their
// efficiencies, the D2 partner is jittered by a centred Gaussian, and the two
// background processes run independently. The stream is time-sorted and fully
// reproducible from the seed.
std::vector<EventRecord> simulate_events(const TwoQubitState& rho, const MeasurementSetting& s,
                                         const DetectionConfig& cfg);

struct Histogram {
    double bin_width_ns = 0.0;
    double window_ns = 0.0;
    std::vector<long> counts; // over t(D2) - t(D1) in [-window, +window]

    double bin_center(int i) const { return -window_ns + (i + 0.5) * bin_width_ns; }
};

struct CoincidenceSummary {
    long singles1 = 0;
    long singles2 = 0;
    long coincidences = 0;         // D1/D2 pairs with |dt| <= window
    double accidental_estimate = 0; // singles1_rate * singles2_rate * 2 window * duration
    double duration_s = 0.0;
};

// TAC-style histogram of D2-vs-D1 arrival differences over a sorted stream.
std::pair<Histogram, CoincidenceSummary> coincidence_histogram(std::span<const EventRecord> events,
                                                               const DetectionConfig& cfg);

// Counts over the 16 settings {H,V,D,L} x {H,V,D,L}, one Binomial(shots, p)
// draw per setting.
struct CountTable {
    std::array<long, 16> counts{};
    long shots_per_setting = 0;

    static int index(TomoBasis a, TomoBasis b) {
        return static_cast<int>(a) * 4 + static_cast<int>(b);
    }
    long at(TomoBasis a, TomoBasis b) const { return counts[index(a, b)]; }
};

CountTable tomography_counts(const TwoQubitState& rho, long shots_per_setting, uint64_t seed);

// Linear inversion through the dual basis of the 16 projectors, then
// projection to the PSD cone (clip negative eigenvalues, renormalize trace).
TwoQubitState reconstruct_state(const CountTable& counts);
TwoQubitState reconstruct_from_frequencies(const std::array<double, 16>& freqs);

std::string events_to_csv(std::span<const EventRecord> events);
std::string histogram_to_csv(const Histogram& h);
std::string counts_to_csv(const CountTable& t);

} // namespace bellsynth
