#include "bellsynth/concentrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bellsynth {

namespace {

// Row accumulators for the two integrals everything here reduces to. Both
// walk one t+ row, sampling Pi(t- + tau) and Pi(t- - tau) by linear
// interpolation (zero outside the grid). A shift that is an integer number
// of cells (to 1e-9) is applied as an exact relocation.
struct Shift {
    int i0 = 0;      // floor offset in cells
    double frac = 0; // fractional part; 0 means pure relocation
};

Shift make_shift(double tau_fs, double step) {
    const double s = tau_fs / step;
    const double r = std::round(s);
    if (std::abs(s - r) < 1e-9) return {static_cast<int>(r), 0.0};
    const double f = std::floor(s);
    return {static_cast<int>(f), s - f};
}

inline Complex sample(const Complex* row, int n, int j, const Shift& sh) {
    const int k = j + sh.i0;
    Complex v(0.0, 0.0);
    if (k >= 0 && k < n) v = (1.0 - sh.frac) * row[k];
    if (sh.frac != 0.0 && k + 1 >= 0 && k + 1 < n) v += sh.frac * row[k + 1];
    return v;
}

double row_rate(const Complex* row, int n, const Shift& plus, const Shift& minus, double cc,
                Complex ss_phase) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const Complex a = sample(row, n, j, plus);
        const Complex b = sample(row, n, j, minus);
        acc += std::norm(cc * a + ss_phase * b);
    }
    return acc;
}

Complex row_overlap(const Complex* row, int n, const Shift& plus, const Shift& minus) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
        const Complex a = sample(row, n, j, plus);
        const Complex b = sample(row, n, j, minus);
        acc += b * std::conj(a);
    }
    return acc;
}

void check_tau(const BiphotonAmplitude& pi, double tau_fs) {
    const double half_span = 0.5 * (pi.t_minus_max() - pi.t_minus_min);
    if (std::abs(tau_fs) > half_span)
        throw RangeError("delay exceeds half the t- grid span (" + std::to_string(half_span) +
                         " fs); widen the grid instead of wrapping");
}

// Deterministic reduction: fixed chunks, serial combine.
template <typename T, typename RowFn>
T reduce_rows(int rows, Exec exec, RowFn&& fn) {
    std::vector<T> partial(rows);
    const bool par = exec == Exec::Parallel && rows > 1;
    (void)par;
#pragma omp parallel for schedule(static) num_threads(max_threads()) if (par)
    for (int r = 0; r < rows; ++r) partial[r] = fn(r);
    T total{};
    for (const T& p : partial) total += p;
    return total;
}

} // namespace

double coincidence_rate(const BiphotonAmplitude& pi, const MeasurementSetting& s, Exec exec) {
    check_tau(pi, s.tau_fs);
    const Shift plus = make_shift(s.tau_fs, pi.t_minus_step);
    const Shift minus = make_shift(-s.tau_fs, pi.t_minus_step);
    const double t1 = deg2rad(s.theta1_deg);
    const double t2 = deg2rad(s.theta2_deg);
    const double cc = std::cos(t1) * std::cos(t2);
    const Complex ss_phase = std::exp(Complex(0.0, s.phi)) * std::sin(t1) * std::sin(t2);
    const int n = pi.n_minus;
    const double raw = reduce_rows<double>(pi.n_plus, exec, [&](int r) {
        return row_rate(pi.values.data() + static_cast<size_t>(r) * n, n, plus, minus, cc,
                        ss_phase);
    });
    return raw * pi.measure() / pi.norm_sq;
}

SweepCurve sweep_delay(const BiphotonAmplitude& pi, std::span<const double> tau_fs,
                       double theta1_deg, double theta2_deg, double phi, Exec exec) {
    if (tau_fs.size() >= 2) {
        double min_step = std::numeric_limits<double>::infinity();
        for (size_t i = 1; i < tau_fs.size(); ++i) {
            const double d = tau_fs[i] - tau_fs[i - 1];
            if (d <= 0.0) throw DomainError("sweep_delay: delays must be strictly increasing");
            min_step = std::min(min_step, d);
        }
        if (pi.t_minus_step > 0.25 * min_step * (1.0 + 1e-9))
            throw DomainError("sweep_delay: t- grid step must be <= tau step / 4; "
                              "refine the grid or coarsen the sweep");
    }
    if (!tau_fs.empty()) {
        // validate up front: exceptions must not cross the parallel region
        check_tau(pi, tau_fs.front());
        check_tau(pi, tau_fs.back());
    }
    SweepCurve curve;
    curve.kind = SweepCurve::Abscissa::DelayFs;
    curve.abscissa.assign(tau_fs.begin(), tau_fs.end());
    curve.rate.resize(tau_fs.size());
    const bool par = exec == Exec::Parallel;
    (void)par;
    const long npts = static_cast<long>(tau_fs.size());
#pragma omp parallel for schedule(static) num_threads(max_threads()) if (par)
    for (long i = 0; i < npts; ++i) {
        MeasurementSetting s{tau_fs[i], theta1_deg, theta2_deg, phi};
        curve.rate[i] = coincidence_rate(pi, s, Exec::Serial);
    }
    return curve;
}

SweepCurve sweep_analyzer(const BiphotonAmplitude& pi, double tau_fs, double theta1_deg,
                          std::span<const double> theta2_deg, double phi, Exec exec) {
    for (size_t i = 1; i < theta2_deg.size(); ++i)
        if (theta2_deg[i] <= theta2_deg[i - 1])
            throw DomainError("sweep_analyzer: angles must be strictly increasing");
    check_tau(pi, tau_fs);
    SweepCurve curve;
    curve.kind = SweepCurve::Abscissa::AnalyzerDeg;
    curve.abscissa.assign(theta2_deg.begin(), theta2_deg.end());
    curve.rate.resize(theta2_deg.size());
    const bool par = exec == Exec::Parallel;
    (void)par;
    const long npts = static_cast<long>(theta2_deg.size());
#pragma omp parallel for schedule(static) num_threads(max_threads()) if (par)
    for (long i = 0; i < npts; ++i) {
        MeasurementSetting s{tau_fs, theta1_deg, theta2_deg[i], phi};
        curve.rate[i] = coincidence_rate(pi, s, Exec::Serial);
    }
    return curve;
}

double visibility(const SweepCurve& curve) {
    if (curve.rate.size() < 3) throw DomainError("visibility: need at least 3 samples");
    const auto [mn, mx] = std::minmax_element(curve.rate.begin(), curve.rate.end());
    if (!(*mx > 0.0)) throw DomainError("visibility: undefined for an all-zero curve");
    return (*mx - *mn) / (*mx + *mn);
}

Complex biphoton_overlap(const BiphotonAmplitude& pi, double tau_fs, Exec exec) {
    check_tau(pi, tau_fs);
    const Shift plus = make_shift(tau_fs, pi.t_minus_step);
    const Shift minus = make_shift(-tau_fs, pi.t_minus_step);
    const int n = pi.n_minus;
    const Complex raw = reduce_rows<Complex>(pi.n_plus, exec, [&](int r) {
        return row_overlap(pi.values.data() + static_cast<size_t>(r) * n, n, plus, minus);
    });
    return raw * pi.measure();
}

double werner_epsilon(const BiphotonAmplitude& pi, double tau_fs, Exec exec) {
    const double eps = std::abs(biphoton_overlap(pi, tau_fs, exec)) / pi.norm_sq;
    return std::clamp(eps, 0.0, 1.0);
}

TwoQubitState output_state(const BiphotonAmplitude& pi, double tau_fs, double phi, Exec exec) {
    const Complex o = biphoton_overlap(pi, tau_fs, exec);
    const double eps = std::clamp(std::abs(o) / pi.norm_sq, 0.0, 1.0);
    const double phase = eps > 0.0 ? phi + std::arg(o) : phi;
    return partial_state(eps, phase);
}

} // namespace bellsynth
