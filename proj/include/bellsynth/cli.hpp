#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bellsynth/concentrator.hpp"
#include "bellsynth/config.hpp"

namespace bellsynth {

// Width/visibility summary of a sweep curve. The feature is located against
// the far-delay baseline (mean of the endpoint rates); width_fs is the full
// width at half feature height, found by linear interpolation of the
// crossings. For the cw triangle the base width is exactly twice that.
struct CurveFeature {
    bool is_dip = false;
    double baseline = 0.0;
    double extreme_rate = 0.0;
    double extreme_abscissa = 0.0;
    double width_fs = 0.0;
    double visibility = 0.0;
};

CurveFeature analyze_delay_curve(const SweepCurve& curve);

// Runs one subcommand against a parsed config, writing artifacts into
// out_dir and the machine-readable "OK <command> <n_outputs>" line to stdout.
// Commands: delay-sweep, analyzer-sweep, universality, werner-trajectory,
// events, tomography.
int run_command(const std::string& command, const Config& cfg, const std::string& out_dir,
                std::optional<uint64_t> seed_override);

// argv entry point: <tool> <subcommand> --config <path> --out <dir> [--seed N].
// Exit codes: 0 success, 1 usage, 2 config parse error, 3 physics/domain error.
int cli_main(int argc, const char* const* argv);

} // namespace bellsynth
