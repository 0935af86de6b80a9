#include "bellsynth/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <vector>

#include "bellsynth/csvio.hpp"
#include "bellsynth/expsim.hpp"

namespace bellsynth {

namespace {

namespace fs = std::filesystem;

std::vector<double> linspace_step(double lo, double hi, double step) {
    if (!(step > 0.0)) throw DomainError("sweep step must be positive");
    if (!(hi > lo)) throw DomainError("sweep range must be non-empty");
    std::vector<double> v;
    const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    v.reserve(n);
    for (long i = 0; i < n; ++i) v.push_back(lo + i * step);
    return v;
}

void write_artifact(const fs::path& dir, const std::string& name, const std::string& text) {
    write_file_atomic((dir / name).string(), text);
}

// Every key any command understands. A command marks all of these consumed
// before the unknown-key check, so one config file can drive several
// commands; anything outside this list is a typo and gets reported.
void touch_known_keys(const Config& cfg) {
    static const char* kKnown[] = {
        "crystal.material",        "crystal.cut",
        "crystal.length_mm",       "crystal.angle_deg",
        "pump.mode",               "pump.center_nm",
        "pump.bandwidth_nm",       "filter1.fwhm_nm",
        "filter1.center_nm",       "filter2.fwhm_nm",
        "filter2.center_nm",       "grid.n",
        "grid.span_thz",           "phase.phi_rad",
        "sweep.tau_min_fs",        "sweep.tau_max_fs",
        "sweep.tau_step_fs",       "analyzer.theta1_deg",
        "analyzer.theta2_deg",     "analyzer.theta2_min_deg",
        "analyzer.theta2_max_deg", "analyzer.theta2_step_deg",
        "analyzer.tau_fs",         "detection.pair_rate_hz",
        "detection.efficiency1",   "detection.efficiency2",
        "detection.background1_hz", "detection.background2_hz",
        "detection.window_ns",     "detection.tac_bin_ns",
        "detection.duration_s",    "detection.jitter_sigma_ns",
        "detection.seed",          "detection.tau_fs",
        "tomography.shots",        "tomography.seed",
        "tomography.tau_fs",
    };
    for (const char* k : kKnown) cfg.touch(k);
}

struct SummaryBuilder {
    std::ostringstream out;
    void add(const std::string& key, double v) { out << key << " = " << format_g9(v) << '\n'; }
    void add(const std::string& key, const std::string& v) { out << key << " = " << v << '\n'; }
    std::string str() const { return out.str(); }
};

int cmd_delay_sweep(const Config& cfg, const fs::path& out_dir) {
    const SetupConfig setup = setup_from_config(cfg);
    const double tau_min = cfg.get_double("sweep.tau_min_fs");
    const double tau_max = cfg.get_double("sweep.tau_max_fs");
    const double tau_step = cfg.get_double("sweep.tau_step_fs");
    const double th1 = cfg.get_double("analyzer.theta1_deg");
    const double th2 = cfg.get_double("analyzer.theta2_deg");
    cfg.check_all_consumed();

    const BiphotonAmplitude pi = make_biphoton(setup);
    const auto taus = linspace_step(tau_min, tau_max, tau_step);
    const SweepCurve curve = sweep_delay(pi, taus, th1, th2, setup.phase_phi);
    const CurveFeature f = analyze_delay_curve(curve);

    SummaryBuilder s;
    s.add("command", "delay-sweep");
    s.add("kind", f.is_dip ? "dip" : "peak");
    s.add("baseline", f.baseline);
    s.add("extreme_rate", f.extreme_rate);
    s.add("extreme_tau_fs", f.extreme_abscissa);
    s.add("width_fs", f.width_fs);
    if (f.is_dip)
        s.add("fwhm_fs", f.width_fs);
    else
        s.add("base_width_fs", 2.0 * f.width_fs);
    s.add("visibility", f.visibility);

    write_artifact(out_dir, "curve.csv", sweep_to_csv(curve));
    write_artifact(out_dir, "summary.txt", s.str());
    return 2;
}

int cmd_analyzer_sweep(const Config& cfg, const fs::path& out_dir) {
    const SetupConfig setup = setup_from_config(cfg);
    const double th1 = cfg.get_double("analyzer.theta1_deg");
    const double lo = cfg.get_double("analyzer.theta2_min_deg", 0.0);
    const double hi = cfg.get_double("analyzer.theta2_max_deg", 180.0);
    const double step = cfg.get_double("analyzer.theta2_step_deg", 7.5);
    const double tau = cfg.get_double("analyzer.tau_fs", 0.0);
    cfg.check_all_consumed();

    const BiphotonAmplitude pi = make_biphoton(setup);
    const auto angles = linspace_step(lo, hi, step);
    const SweepCurve curve = sweep_analyzer(pi, tau, th1, angles, setup.phase_phi);

    SummaryBuilder s;
    s.add("command", "analyzer-sweep");
    s.add("tau_fs", tau);
    s.add("theta1_deg", th1);
    s.add("visibility", visibility(curve));

    write_artifact(out_dir, "curve.csv", sweep_to_csv(curve));
    write_artifact(out_dir, "summary.txt", s.str());
    return 2;
}

// tau = 0 visibility across pump bandwidth x crystal length x filter FWHM.
// Spans are widened per point so thin crystals and wide pumps keep the
// spectral preconditions satisfied.
int cmd_universality(const Config& cfg, const fs::path& out_dir) {
    const double pump_center = cfg.get_double("pump.center_nm", 390.0);
    const double angle = cfg.get_double("crystal.angle_deg", 43.5);
    const int pulsed_n = static_cast<int>(cfg.get_long("grid.n", 512));
    cfg.check_all_consumed();

    const std::vector<double> bandwidths = {0.0, 1.0, 2.0, 4.0};
    const std::vector<double> lengths = {0.5, 1.0, 3.0};
    const std::vector<double> filters = {0.0, 20.0, 5.0, 1.0}; // 0 = none

    std::ostringstream csv;
    csv << "pump_bandwidth_nm,crystal_length_mm,filter_fwhm_nm,visibility\n";
    const auto angles = linspace_step(0.0, 180.0, 7.5);

    for (const double bw : bandwidths) {
        for (const double L : lengths) {
            for (const double fw : filters) {
                SetupConfig setup;
                setup.crystal.length_mm = L;
                setup.crystal.phase_matching_angle_deg = angle;
                setup.pump.mode = bw == 0.0 ? PumpParams::Mode::Cw : PumpParams::Mode::Pulsed;
                setup.pump.center_nm = pump_center;
                setup.pump.bandwidth_nm = bw;
                if (fw > 0.0) {
                    setup.filter1 = FilterParams{0.0, fw};
                    setup.filter2 = FilterParams{0.0, fw};
                }
                const DispersionSummary disp =
                    dispersion_summary(setup.crystal, pump_center, 2.0 * pump_center);
                const double DL = std::abs(disp.D) * L;
                if (bw == 0.0) {
                    setup.grid.n = 2048;
                    setup.grid.span_rad_fs = std::max(0.3, 12.0 * kPi / DL);
                } else {
                    const double wp = bandwidth_rad_fs(bw, pump_center);
                    setup.grid.n = pulsed_n;
                    setup.grid.span_rad_fs =
                        std::max({default_grid_pulsed().span_rad_fs, 2.5 * wp, 10.0 * kPi / DL});
                    // grow until the +-3 D L strip fits (strip span = pi n / span)
                    while (kPi * setup.grid.n / setup.grid.span_rad_fs < 6.05 * DL)
                        setup.grid.n *= 2;
                }
                const BiphotonAmplitude pi = make_biphoton(setup);
                const SweepCurve curve = sweep_analyzer(pi, 0.0, 45.0, angles, 0.0);
                csv << format_g9(bw) << ',' << format_g9(L) << ','
                    << (fw > 0.0 ? format_g9(fw) : std::string("inf")) << ','
                    << format_g9(visibility(curve)) << '\n';
            }
        }
    }
    write_artifact(out_dir, "universality.csv", csv.str());
    return 1;
}

int cmd_werner_trajectory(const Config& cfg, const fs::path& out_dir) {
    const SetupConfig setup = setup_from_config(cfg);
    const double tau_min = cfg.get_double("sweep.tau_min_fs");
    const double tau_max = cfg.get_double("sweep.tau_max_fs");
    const double tau_step = cfg.get_double("sweep.tau_step_fs");
    cfg.check_all_consumed();

    const BiphotonAmplitude pi = make_biphoton(setup);
    std::ostringstream csv;
    csv << "tau_fs,epsilon,entropy,entanglement\n";
    for (const double tau : linspace_step(tau_min, tau_max, tau_step)) {
        const TwoQubitState rho = output_state(pi, tau, setup.phase_phi);
        const StateMetrics m = state_metrics(rho);
        csv << format_g9(tau) << ',' << format_g9(werner_epsilon(pi, tau)) << ','
            << format_g9(m.normalized_entropy) << ',' << format_g9(m.entanglement_of_formation)
            << '\n';
    }
    write_artifact(out_dir, "trajectory.csv", csv.str());
    return 1;
}

DetectionConfig detection_from_config(const Config& cfg, std::optional<uint64_t> seed_override) {
    DetectionConfig d;
    d.pair_rate_hz = cfg.get_double("detection.pair_rate_hz", d.pair_rate_hz);
    d.efficiency1 = cfg.get_double("detection.efficiency1", d.efficiency1);
    d.efficiency2 = cfg.get_double("detection.efficiency2", d.efficiency2);
    d.background1_hz = cfg.get_double("detection.background1_hz", d.background1_hz);
    d.background2_hz = cfg.get_double("detection.background2_hz", d.background2_hz);
    d.coincidence_window_ns = cfg.get_double("detection.window_ns", d.coincidence_window_ns);
    d.tac_bin_ns = cfg.get_double("detection.tac_bin_ns", d.tac_bin_ns);
    d.duration_s = cfg.get_double("detection.duration_s", d.duration_s);
    d.pair_jitter_sigma_ns = cfg.get_double("detection.jitter_sigma_ns", d.pair_jitter_sigma_ns);
    d.rng_seed = cfg.get_seed("detection.seed", d.rng_seed);
    if (seed_override) d.rng_seed = *seed_override;
    return d;
}

int cmd_events(const Config& cfg, const fs::path& out_dir, std::optional<uint64_t> seed_override) {
    const SetupConfig setup = setup_from_config(cfg);
    const DetectionConfig det = detection_from_config(cfg, seed_override);
    MeasurementSetting meas;
    meas.tau_fs = cfg.get_double("detection.tau_fs", 0.0);
    meas.theta1_deg = cfg.get_double("analyzer.theta1_deg", 45.0);
    meas.theta2_deg = cfg.get_double("analyzer.theta2_deg", 45.0);
    meas.phi = setup.phase_phi;
    cfg.check_all_consumed();

    const BiphotonAmplitude pi = make_biphoton(setup);
    const TwoQubitState rho = output_state(pi, meas.tau_fs, setup.phase_phi);
    const auto events = simulate_events(rho, meas, det);
    const auto [hist, summary] = coincidence_histogram(events, det);

    SummaryBuilder s;
    s.add("command", "events");
    s.add("events", static_cast<double>(events.size()));
    s.add("singles1", static_cast<double>(summary.singles1));
    s.add("singles2", static_cast<double>(summary.singles2));
    s.add("coincidences", static_cast<double>(summary.coincidences));
    s.add("accidental_estimate", summary.accidental_estimate);
    s.add("seed", static_cast<double>(det.rng_seed));

    write_artifact(out_dir, "events.csv", events_to_csv(events));
    write_artifact(out_dir, "histogram.csv", histogram_to_csv(hist));
    write_artifact(out_dir, "summary.txt", s.str());
    return 3;
}

int cmd_tomography(const Config& cfg, const fs::path& out_dir,
                   std::optional<uint64_t> seed_override) {
    const SetupConfig setup = setup_from_config(cfg);
    const long shots = cfg.get_long("tomography.shots", 100000);
    uint64_t seed = cfg.get_seed("tomography.seed", 1);
    const double tau = cfg.get_double("tomography.tau_fs", 0.0);
    cfg.check_all_consumed();
    if (seed_override) seed = *seed_override;

    const BiphotonAmplitude pi = make_biphoton(setup);
    const TwoQubitState truth = output_state(pi, tau, setup.phase_phi);
    const CountTable counts = tomography_counts(truth, shots, seed);
    const TwoQubitState estimate = reconstruct_state(counts);
    const StateMetrics m = state_metrics(estimate);

    SummaryBuilder s;
    s.add("command", "tomography");
    s.add("shots_per_setting", static_cast<double>(shots));
    s.add("seed", static_cast<double>(seed));
    s.add("fidelity", fidelity(truth, estimate));
    s.add("concurrence", m.concurrence);
    s.add("entanglement_of_formation", m.entanglement_of_formation);
    s.add("normalized_entropy", m.normalized_entropy);
    s.add("purity", m.purity);

    write_artifact(out_dir, "counts.csv", counts_to_csv(counts));
    write_artifact(out_dir, "state.csv", to_csv(estimate));
    write_artifact(out_dir, "summary.txt", s.str());
    return 3;
}

} // namespace

CurveFeature analyze_delay_curve(const SweepCurve& curve) {
    const auto& r = curve.rate;
    if (r.size() < 5) throw DomainError("analyze_delay_curve: need at least 5 samples");
    CurveFeature f;
    f.baseline = 0.5 * (r.front() + r.back());
    size_t ext = 0;
    for (size_t i = 0; i < r.size(); ++i)
        if (std::abs(r[i] - f.baseline) > std::abs(r[ext] - f.baseline)) ext = i;
    f.extreme_rate = r[ext];
    f.extreme_abscissa = curve.abscissa[ext];
    f.is_dip = r[ext] < f.baseline;
    const double level = 0.5 * (r[ext] + f.baseline);

    auto crossing = [&](long from, long dir) {
        long i = from;
        while (i + dir >= 0 && i + dir < static_cast<long>(r.size())) {
            const long j = i + dir;
            const bool inside_i = f.is_dip ? r[i] <= level : r[i] >= level;
            const bool inside_j = f.is_dip ? r[j] <= level : r[j] >= level;
            if (inside_i && !inside_j) {
                const double t =
                    curve.abscissa[i] + (level - r[i]) / (r[j] - r[i]) *
                                            (curve.abscissa[j] - curve.abscissa[i]);
                return t;
            }
            i = j;
        }
        return curve.abscissa[dir > 0 ? r.size() - 1 : 0];
    };
    const double left = crossing(static_cast<long>(ext), -1);
    const double right = crossing(static_cast<long>(ext), +1);
    f.width_fs = right - left;

    const auto [mn, mx] = std::minmax_element(r.begin(), r.end());
    f.visibility = *mx > 0.0 ? (*mx - *mn) / (*mx + *mn) : 0.0;
    return f;
}

int run_command(const std::string& command, const Config& cfg, const std::string& out_dir,
                std::optional<uint64_t> seed_override) {
    fs::create_directories(out_dir);
    touch_known_keys(cfg);
    int n_outputs = 0;
    if (command == "delay-sweep")
        n_outputs = cmd_delay_sweep(cfg, out_dir);
    else if (command == "analyzer-sweep")
        n_outputs = cmd_analyzer_sweep(cfg, out_dir);
    else if (command == "universality")
        n_outputs = cmd_universality(cfg, out_dir);
    else if (command == "werner-trajectory")
        n_outputs = cmd_werner_trajectory(cfg, out_dir);
    else if (command == "events")
        n_outputs = cmd_events(cfg, out_dir, seed_override);
    else if (command == "tomography")
        n_outputs = cmd_tomography(cfg, out_dir, seed_override);
    else
        throw DomainError("unknown command '" + command + "'");
    std::cout << "OK " << command << ' ' << n_outputs << std::endl;
    return 0;
}

int cli_main(int argc, const char* const* argv) {
    const std::string usage =
        "usage: bellsynth <command> --config <path> --out <dir> [--seed N]\n"
        "commands: delay-sweep analyzer-sweep universality werner-trajectory events tomography\n";
    if (argc < 2) {
        std::cerr << usage;
        return 1;
    }
    const std::string command = argv[1];
    if (command == "-h" || command == "--help") {
        std::cout << usage;
        return 0;
    }
    std::string config_path, out_dir = ".";
    std::optional<uint64_t> seed;
    for (int i = 2; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= argc) {
                throw std::invalid_argument("missing value for " + arg);
            }
            return argv[++i];
        };
        try {
            if (arg == "--config")
                config_path = next();
            else if (arg == "--out")
                out_dir = next();
            else if (arg == "--seed")
                seed = std::stoull(next());
            else
                throw std::invalid_argument("unknown option " + arg);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n" << usage;
            return 1;
        } catch (const std::out_of_range&) {
            std::cerr << "error: value out of range for " << arg << "\n" << usage;
            return 1;
        }
    }
    if (config_path.empty()) {
        std::cerr << "error: --config is required\n" << usage;
        return 1;
    }
    try {
        const Config cfg = Config::parse_file(config_path);
        return run_command(command, cfg, out_dir, seed);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace bellsynth
