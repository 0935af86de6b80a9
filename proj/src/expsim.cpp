#include "bellsynth/expsim.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bellsynth/rng.hpp"

namespace bellsynth {

namespace {

// Stream tags. One generator per logical purpose, all derived from the run
// seed via split_seed, so adding draws to one stream never perturbs another.
constexpr uint64_t kTagPairTimes = 1;
constexpr uint64_t kTagPairPhysics = 2; // outcome + jitter + detection, per pair
constexpr uint64_t kTagBackground1 = 3;
constexpr uint64_t kTagBackground2 = 4;
constexpr uint64_t kTagTomography = 16; // + setting index

const std::array<TomoBasis, 4> kBases = {TomoBasis::H, TomoBasis::V, TomoBasis::D, TomoBasis::L};

} // namespace

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t split_seed(uint64_t seed, uint64_t tag) {
    uint64_t s = seed ^ (tag * 0x9E3779B97F4A7C15ULL);
    return splitmix64(s);
}

Xoshiro256ss::Xoshiro256ss(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
}

uint64_t Xoshiro256ss::next() {
    auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256ss::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Xoshiro256ss::exponential(double rate) {
    return -std::log1p(-uniform()) / rate;
}

double Xoshiro256ss::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(2.0 * kPi * u2);
}

long Xoshiro256ss::binomial(long n, double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    long k = 0;
    for (long i = 0; i < n; ++i)
        if (uniform() < p) ++k;
    return k;
}

void DetectionConfig::validate() const {
    if (!(pair_rate_hz >= 0.0) || !(background1_hz >= 0.0) || !(background2_hz >= 0.0))
        throw DomainError("detection rates must be finite and non-negative");
    if (!(efficiency1 >= 0.0 && efficiency1 <= 1.0 && efficiency2 >= 0.0 && efficiency2 <= 1.0))
        throw DomainError("detector efficiencies must lie in [0, 1]");
    if (!(coincidence_window_ns > 0.0) || !(tac_bin_ns > 0.0))
        throw DomainError("coincidence window and TAC bin must be positive");
    if (coincidence_window_ns < tac_bin_ns)
        throw DomainError("coincidence window must be at least one TAC bin");
    if (!(duration_s > 0.0)) throw DomainError("duration must be positive");
    if (!(pair_jitter_sigma_ns >= 0.0)) throw DomainError("jitter sigma must be non-negative");
}

std::vector<EventRecord> simulate_events(const TwoQubitState& rho, const MeasurementSetting& s,
                                         const DetectionConfig& cfg) {
    cfg.validate();
    const double duration_ns = cfg.duration_s * 1e9;
    const double t1 = deg2rad(s.theta1_deg);
    const double t2 = deg2rad(s.theta2_deg);
    // joint outcome probabilities over {pass, fail} x {pass, fail}; an ideal
    // analyzer absorbs the orthogonal component
    const double p_pp = coincidence_probability(rho, t1, t2);
    const double p_pf = coincidence_probability(rho, t1, t2 + kPi / 2.0);
    const double p_fp = coincidence_probability(rho, t1 + kPi / 2.0, t2);

    std::vector<EventRecord> events;
    events.reserve(static_cast<size_t>(
        (cfg.pair_rate_hz * 2 + cfg.background1_hz + cfg.background2_hz) * cfg.duration_s * 1.2 +
        64));

    Xoshiro256ss times(split_seed(cfg.rng_seed, kTagPairTimes));
    Xoshiro256ss physics(split_seed(cfg.rng_seed, kTagPairPhysics));
    const double rate_ns = cfg.pair_rate_hz * 1e-9;
    auto clamp_time = [&](double t) { return std::clamp(t, 0.0, duration_ns); };
    if (rate_ns > 0.0) {
        double t = times.exponential(rate_ns);
        while (t < duration_ns) {
            // fixed draw count per pair: outcome, jitter (two uniforms), two
            // detection draws -- keeps the stream alignment branch-free
            const double u = physics.uniform();
            const double jitter = physics.normal() * cfg.pair_jitter_sigma_ns;
            const double ud1 = physics.uniform();
            const double ud2 = physics.uniform();
            const bool pass1 = u < p_pp + p_pf;
            const bool pass2 = u < p_pp || (u >= p_pp + p_pf && u < p_pp + p_pf + p_fp);
            if (pass1 && ud1 < cfg.efficiency1)
                events.push_back({Detector::D1, clamp_time(t), Origin::Pair});
            if (pass2 && ud2 < cfg.efficiency2)
                events.push_back({Detector::D2, clamp_time(t + jitter), Origin::Pair});
            t += times.exponential(rate_ns);
        }
    }

    for (auto [tag, det, rate_hz] :
         {std::tuple{kTagBackground1, Detector::D1, cfg.background1_hz},
          std::tuple{kTagBackground2, Detector::D2, cfg.background2_hz}}) {
        if (rate_hz <= 0.0) continue;
        Xoshiro256ss bg(split_seed(cfg.rng_seed, tag));
        const double r_ns = rate_hz * 1e-9;
        double t = bg.exponential(r_ns);
        while (t < duration_ns) {
            events.push_back({det, t, Origin::Background});
            t += bg.exponential(r_ns);
        }
    }

    std::sort(events.begin(), events.end(), [](const EventRecord& a, const EventRecord& b) {
        if (a.time_ns != b.time_ns) return a.time_ns < b.time_ns;
        if (a.detector != b.detector) return a.detector < b.detector;
        return a.origin < b.origin;
    });
    return events;
}

std::pair<Histogram, CoincidenceSummary> coincidence_histogram(std::span<const EventRecord> events,
                                                               const DetectionConfig& cfg) {
    cfg.validate();
    for (size_t i = 1; i < events.size(); ++i)
        if (events[i].time_ns < events[i - 1].time_ns)
            throw ContractViolation("coincidence_histogram: event stream must be time-sorted");

    const double w = cfg.coincidence_window_ns;
    const int nbins = std::max(1, static_cast<int>(std::ceil(2.0 * w / cfg.tac_bin_ns)));
    Histogram h;
    h.bin_width_ns = cfg.tac_bin_ns;
    h.window_ns = w;
    h.counts.assign(nbins, 0);

    std::vector<double> d1, d2;
    for (const EventRecord& e : events)
        (e.detector == Detector::D1 ? d1 : d2).push_back(e.time_ns);

    CoincidenceSummary sum;
    sum.singles1 = static_cast<long>(d1.size());
    sum.singles2 = static_cast<long>(d2.size());
    sum.duration_s = cfg.duration_s;

    size_t lo = 0;
    for (const double t1 : d1) {
        while (lo < d2.size() && d2[lo] < t1 - w) ++lo;
        for (size_t j = lo; j < d2.size() && d2[j] <= t1 + w; ++j) {
            const double dt = d2[j] - t1;
            int bin = static_cast<int>((dt + w) / cfg.tac_bin_ns);
            bin = std::clamp(bin, 0, nbins - 1);
            ++h.counts[bin];
            ++sum.coincidences;
        }
    }

    const double T = cfg.duration_s;
    const double r1 = sum.singles1 / T;
    const double r2 = sum.singles2 / T;
    sum.accidental_estimate = r1 * r2 * (2.0 * w * 1e-9) * T;
    return {std::move(h), sum};
}

CountTable tomography_counts(const TwoQubitState& rho, long shots_per_setting, uint64_t seed) {
    if (shots_per_setting <= 0) throw DomainError("tomography_counts: shots must be positive");
    CountTable table;
    table.shots_per_setting = shots_per_setting;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const int idx = a * 4 + b;
            const double p = projector_probability(rho, kBases[a], kBases[b]);
            Xoshiro256ss gen(split_seed(seed, kTagTomography + idx));
            table.counts[idx] = gen.binomial(shots_per_setting, p);
        }
    }
    return table;
}

namespace {

// Single-qubit design matrix T[a][k] = Tr(sigma_k P_a), k over (I, x, y, z).
// Frequencies relate to the Bloch expansion rho = (1/4) sum r_kl s_k x s_l by
// F = (1/4) T R T^t, inverted in closed form via T^-1.
const Eigen::Matrix4d& tomo_design_inverse() {
    static const Eigen::Matrix4d inv = [] {
        Eigen::Matrix4d t;
        t << 1, 0, 0, 1, // H
            1, 0, 0, -1, // V
            1, 1, 0, 0,  // D
            1, 0, 1, 0;  // L
        return Eigen::Matrix4d(t.inverse());
    }();
    return inv;
}

const std::array<Eigen::Matrix2cd, 4>& pauli() {
    static const std::array<Eigen::Matrix2cd, 4> p = [] {
        std::array<Eigen::Matrix2cd, 4> m;
        m[0] << 1, 0, 0, 1;
        m[1] << 0, 1, 1, 0;
        m[2] << 0, Complex(0, -1), Complex(0, 1), 0;
        m[3] << 1, 0, 0, -1;
        return m;
    }();
    return p;
}

} // namespace

TwoQubitState reconstruct_from_frequencies(const std::array<double, 16>& freqs) {
    Eigen::Matrix4d f;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) f(a, b) = freqs[a * 4 + b];
    const Eigen::Matrix4d& tinv = tomo_design_inverse();
    const Eigen::Matrix4d r = 4.0 * tinv * f * tinv.transpose();

    Matrix4 rho = Matrix4::Zero();
    const auto& s = pauli();
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            Matrix4 kr;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) kr.block<2, 2>(2 * i, 2 * j) = s[k](i, j) * s[l];
            rho += 0.25 * r(k, l) * kr;
        }
    rho = 0.5 * (rho + rho.adjoint().eval()); // scrub rounding off Hermiticity

    // PSD projection: clip negative eigenvalues, renormalize the trace
    Eigen::SelfAdjointEigenSolver<Matrix4> es(rho);
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
    const double tr = ev.sum();
    if (!(tr > 0.0)) throw DomainError("reconstruction produced a zero state");
    ev /= tr;
    Matrix4 d = Matrix4::Zero();
    for (int i = 0; i < 4; ++i) d(i, i) = ev(i);
    return TwoQubitState::from_matrix(es.eigenvectors() * d * es.eigenvectors().adjoint());
}

TwoQubitState reconstruct_state(const CountTable& counts) {
    if (counts.shots_per_setting <= 0)
        throw DomainError("reconstruct_state: zero shots per setting");
    std::array<double, 16> freqs{};
    for (int i = 0; i < 16; ++i)
        freqs[i] = static_cast<double>(counts.counts[i]) / counts.shots_per_setting;
    return reconstruct_from_frequencies(freqs);
}

std::string events_to_csv(std::span<const EventRecord> events) {
    std::ostringstream out;
    out << "detector,time_ns,origin\n";
    char buf[80];
    for (const EventRecord& e : events) {
        std::snprintf(buf, sizeof buf, "D%d,%.4f,%s\n", static_cast<int>(e.detector), e.time_ns,
                      e.origin == Origin::Pair ? "pair" : "background");
        out << buf;
    }
    return out.str();
}

std::string histogram_to_csv(const Histogram& h) {
    std::ostringstream out;
    out << "bin_center_ns,count\n";
    char buf[64];
    for (size_t i = 0; i < h.counts.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g,%ld\n", h.bin_center(static_cast<int>(i)),
                      h.counts[i]);
        out << buf;
    }
    return out.str();
}

std::string counts_to_csv(const CountTable& t) {
    static const char* names[4] = {"H", "V", "D", "L"};
    std::ostringstream out;
    out << "basis1,basis2,count,total\n";
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            out << names[a] << ',' << names[b] << ',' << t.counts[a * 4 + b] << ','
                << t.shots_per_setting << '\n';
    return out.str();
}

} // namespace bellsynth
