#include "bellsynth/biphoton.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "bellsynth/fft.hpp"

namespace bellsynth {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// Gaussian amplitude envelope whose intensity FWHM is w.
double gauss_amp(double nu, double w) {
    const double r = nu / w;
    return std::exp(-2.0 * kLn2 * r * r);
}

struct FilterEnv {
    bool present = false;
    double offset = 0.0; // filter center detuning from the degenerate center
    double w = 0.0;      // intensity FWHM, rad/fs
    double operator()(double nu) const { return present ? gauss_amp(nu - offset, w) : 1.0; }
};

FilterEnv make_filter(const std::optional<FilterParams>& f, double down_center_nm) {
    FilterEnv env;
    if (!f) return env;
    if (!(f->fwhm_nm > 0.0)) throw DomainError("filter FWHM must be positive");
    env.present = true;
    env.w = bandwidth_rad_fs(f->fwhm_nm, down_center_nm);
    const double center = f->center_nm > 0.0 ? f->center_nm : down_center_nm;
    env.offset = angular_freq_rad_fs(center) - angular_freq_rad_fs(down_center_nm);
    return env;
}

void check_spans(const GridSpec& grid, const SetupConfig& setup, const DispersionSummary& disp) {
    const double L = setup.crystal.length_mm;
    const double DL = std::abs(disp.D) * L;
    const double step = 2.0 * grid.span_rad_fs / grid.n;
    const bool cw = setup.pump.mode == PumpParams::Mode::Cw;

    // sinc main lobe along the frequency-difference direction; first zeros at
    // Delta L/2 = +-pi
    const double lobe = cw ? 4.0 * kPi / DL : 8.0 * kPi / DL;
    if (lobe / step < 8.0)
        throw ResolutionError("spectral grid too coarse to resolve the sinc main lobe (< 8 samples)");
    const double diff_span = cw ? 2.0 * grid.span_rad_fs : 4.0 * grid.span_rad_fs;
    if (diff_span < 5.0 * lobe)
        throw ResolutionError("spectral span must cover at least 5x the sinc main lobe");

    if (!cw) {
        const double wp = bandwidth_rad_fs(setup.pump.bandwidth_nm, setup.pump.center_nm);
        if (4.0 * grid.span_rad_fs < 5.0 * wp)
            throw ResolutionError("spectral span must cover at least 5x the pump bandwidth");
        if (step > 0.5 * wp)
            throw ResolutionError("spectral grid too coarse to resolve the pump envelope");
    }
}

void check_time_span(const BiphotonAmplitude& pi, double DL) {
    if (!(pi.t_minus_min <= -3.0 * DL && pi.t_minus_max() >= 3.0 * DL))
        throw ResolutionError("t- grid must span at least [-3 D L, +3 D L]");
}

} // namespace

void PumpParams::validate() const {
    if (!(center_nm > 0.0)) throw DomainError("pump center wavelength must be positive");
    if (mode == Mode::Cw && bandwidth_nm != 0.0)
        throw DomainError("cw pump must have zero bandwidth");
    if (mode == Mode::Pulsed && !(bandwidth_nm > 0.0))
        throw DomainError("pulsed pump must have positive bandwidth");
}

void GridSpec::validate() const {
    if (!is_power_of_two(n) || n < 16)
        throw DomainError("grid size must be a power of two >= 16");
    if (!(span_rad_fs > 0.0)) throw DomainError("grid span must be positive");
}

GridSpec default_grid_cw() { return {8192, 3.5}; }
GridSpec default_grid_pulsed() { return {512, 2.0 * kPi * 0.040}; }

GridSpec SetupConfig::effective_grid() const {
    if (grid.n != 0) return grid;
    return pump.mode == PumpParams::Mode::Cw ? default_grid_cw() : default_grid_pulsed();
}

double SpectralAmplitude::norm_sq() const {
    double s = 0.0;
    for (const Complex& z : values) s += std::norm(z);
    return s * measure();
}

SpectralAmplitude joint_spectral_amplitude(const SetupConfig& setup, const GridSpec& grid,
                                           Exec exec) {
    setup.pump.validate();
    grid.validate();
    const double down_nm = setup.down_center_nm();
    const DispersionSummary disp =
        dispersion_summary(setup.crystal, setup.pump.center_nm, down_nm);
    check_spans(grid, setup, disp);

    const double L = setup.crystal.length_mm;
    const double a = (1.0 / disp.u_o - 1.0 / disp.u_p) * L; // fs, multiplies nu1
    const double b = (1.0 / disp.u_e - 1.0 / disp.u_p) * L; // fs, multiplies nu2
    const FilterEnv f1 = make_filter(setup.filter1, down_nm);
    const FilterEnv f2 = make_filter(setup.filter2, down_nm);

    SpectralAmplitude phi;
    phi.nu_step = 2.0 * grid.span_rad_fs / grid.n;
    phi.nu_min = -(grid.n / 2) * phi.nu_step;
    phi.n1 = grid.n;

    if (setup.pump.mode == PumpParams::Mode::Cw) {
        // monochromatic pump: support on nu2 = -nu1, one 1D cut
        phi.cw = true;
        phi.n2 = 1;
        phi.values.resize(grid.n);
        const double DL = disp.D * L;
        for (int k = 0; k < grid.n; ++k) {
            const double nu = phi.nu_at(k);
            const double x = 0.5 * DL * nu;
            phi.values[k] = sinc(x) * std::exp(Complex(0.0, x)) * f1(nu) * f2(-nu);
        }
        return phi;
    }

    const double wp = bandwidth_rad_fs(setup.pump.bandwidth_nm, setup.pump.center_nm);
    phi.cw = false;
    phi.n2 = grid.n;
    phi.values.resize(static_cast<size_t>(grid.n) * grid.n);
    const int n = grid.n;
    const bool par = exec == Exec::Parallel;
    (void)par;
#pragma omp parallel for schedule(static) num_threads(max_threads()) if (par)
    for (int i = 0; i < n; ++i) {
        const double nu1 = phi.nu_at(i);
        Complex* row = phi.values.data() + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const double nu2 = phi.nu_at(j);
            const double x = 0.5 * (a * nu1 + b * nu2);
            row[j] = gauss_amp(nu1 + nu2, wp) * sinc(x) * std::exp(Complex(0.0, x)) * f1(nu1) *
                     f2(nu2);
        }
    }
    return phi;
}

BiphotonAmplitude time_domain_amplitude(const SpectralAmplitude& phi, Exec exec) {
    if (phi.values.empty()) throw DomainError("time_domain_amplitude: empty spectral grid");
    if (!(phi.norm_sq() > 0.0))
        throw InvariantViolation("time_domain_amplitude: spectral amplitude has zero norm");
    BiphotonAmplitude pi;
    pi.cw = phi.cw;
    const double d = phi.nu_step;

    if (phi.cw) {
        const int n = phi.n1;
        pi.n_plus = 1;
        pi.n_minus = n;
        pi.t_minus_step = 2.0 * kPi / (n * d);
        pi.t_minus_min = -(n / 2) * pi.t_minus_step;
        pi.t_plus_min = 0.0;
        pi.t_plus_step = n * pi.t_minus_step; // nominal t+ window length
        pi.values.resize(n);
        // Pi(t) = (d/sqrt(2pi)) e^{-i nu0 t} FFT[Phi_k e^{-i k d t0}]
        std::vector<Complex> work(n);
        for (int k = 0; k < n; ++k)
            work[k] = phi.values[k] * std::exp(Complex(0.0, -k * d * pi.t_minus_min));
        fft_inplace(work.data(), n, -1);
        const double scale = d / std::sqrt(2.0 * kPi);
        for (int j = 0; j < n; ++j) {
            const double t = pi.t_minus_at(j);
            pi.values[j] = scale * std::exp(Complex(0.0, -phi.nu_min * t)) * work[j];
        }
        double s = 0.0;
        for (const Complex& z : pi.values) s += std::norm(z);
        pi.norm_sq = s * pi.measure();
        return pi;
    }

    // Exact 45-degree change of variables: spectral samples are scattered on
    // the (p, q) = (i+j, i-j+n) checkerboard of a 2n x 2n array and one FFT is
    // taken. The checkerboard support makes the image periodic under the
    // (n, n) diagonal translation, so only the central t- half-strip carries
    // independent values; keeping it makes the transform exactly unitary.
    const int n = phi.n1;
    const int m = 2 * n;
    const bool par = exec == Exec::Parallel;
    (void)par;

    const double dtp = kPi / (n * d);
    const double dtm = 2.0 * dtp;
    const double tp0 = -(m / 2) * dtp;
    const double tm0_full = -(m / 2) * dtm;

    std::vector<Complex> b(static_cast<size_t>(m) * m, Complex(0.0, 0.0));
    {
        // pre-phases for the centered axes: rows e^{-i d p tp0}, cols e^{-i d (q-n) tm0/2}
        std::vector<Complex> prow(m), qcol(m);
        for (int p = 0; p < m; ++p) prow[p] = std::exp(Complex(0.0, -d * p * tp0));
        for (int q = 0; q < m; ++q) qcol[q] = std::exp(Complex(0.0, -d * (q - n) * 0.5 * tm0_full));
#pragma omp parallel for schedule(static) num_threads(max_threads()) if (par)
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const int p = i + j;
                const int q = i - j + n;
                b[static_cast<size_t>(p) * m + q] =
                    phi.values[static_cast<size_t>(i) * n + j] * prow[p] * qcol[q];
            }
        }
    }

    fft_2d(b, m, m, -1, exec);

    pi.n_plus = m;
    pi.n_minus = n;
    pi.t_plus_step = dtp;
    pi.t_plus_min = tp0;
    pi.t_minus_step = dtm;
    pi.t_minus_min = -(n / 2) * dtm;
    pi.values.resize(static_cast<size_t>(m) * n);

    const int col0 = m / 2 - n / 2; // kept strip in the full t- axis
    const double scale = d * d / (2.0 * kPi);
    std::vector<double> partial(m, 0.0);
#pragma omp parallel for schedule(static) num_threads(max_threads()) if (par)
    for (int r = 0; r < m; ++r) {
        const double tp = tp0 + r * dtp;
        const Complex row_phase = scale * std::exp(Complex(0.0, -2.0 * phi.nu_min * tp));
        Complex* out = pi.values.data() + static_cast<size_t>(r) * n;
        const Complex* in = b.data() + static_cast<size_t>(r) * m;
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            const int nn = col0 + j;
            const double sign = (nn % 2 == 0) ? 1.0 : -1.0; // e^{i pi nn} from the q-n offset
            out[j] = row_phase * sign * in[nn];
            s += std::norm(out[j]);
        }
        partial[r] = s;
    }
    double s = 0.0;
    for (double p : partial) s += p;
    pi.norm_sq = s * pi.measure();
    return pi;
}

BiphotonAmplitude analytic_pi_cw(const CrystalParams& crystal, const DispersionSummary& disp,
                                 const GridSpec& grid) {
    grid.validate();
    const double DL = disp.D * crystal.length_mm;
    if (!(DL > 0.0)) throw ContractViolation("analytic_pi_cw: expects positive D L");

    BiphotonAmplitude pi;
    pi.cw = true;
    const int n = grid.n;
    const double d = 2.0 * grid.span_rad_fs / n;
    pi.n_plus = 1;
    pi.n_minus = n;
    pi.t_minus_step = 2.0 * kPi / (n * d);
    pi.t_minus_min = -(n / 2) * pi.t_minus_step;
    pi.t_plus_min = 0.0;
    pi.t_plus_step = n * pi.t_minus_step;
    pi.values.resize(n);
    const double h = pi.t_minus_step;
    for (int j = 0; j < n; ++j) {
        const double t = pi.t_minus_at(j);
        // cell-averaged indicator of [0, DL]
        const double lo = std::max(t - 0.5 * h, 0.0);
        const double hi = std::min(t + 0.5 * h, DL);
        pi.values[j] = std::max(0.0, hi - lo) / h;
    }
    double s = 0.0;
    for (const Complex& z : pi.values) s += std::norm(z);
    pi.norm_sq = s * pi.measure();
    check_time_span(pi, DL);
    return pi;
}

BiphotonAmplitude make_biphoton(const SetupConfig& setup, Exec exec) {
    const GridSpec grid = setup.effective_grid();
    SpectralAmplitude phi = joint_spectral_amplitude(setup, grid, exec);
    BiphotonAmplitude pi = time_domain_amplitude(phi, exec);
    const DispersionSummary disp =
        dispersion_summary(setup.crystal, setup.pump.center_nm, setup.down_center_nm());
    check_time_span(pi, std::abs(disp.D) * setup.crystal.length_mm);
    return pi;
}

std::string biphoton_to_csv(const BiphotonAmplitude& pi) {
    std::ostringstream out;
    out << "t_plus,t_minus,re,im\n";
    char buf[128];
    for (int r = 0; r < pi.n_plus; ++r) {
        const double tp = pi.cw ? 0.0 : pi.t_plus_min + r * pi.t_plus_step;
        for (int j = 0; j < pi.n_minus; ++j) {
            const Complex z = pi.values[static_cast<size_t>(r) * pi.n_minus + j];
            std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g\n", tp, pi.t_minus_at(j), z.real(),
                          z.imag());
            out << buf;
        }
    }
    return out.str();
}

} // namespace bellsynth
