#pragma once

#include <string>

#include "bellsynth/concentrator.hpp"

namespace bellsynth {

// Writes via a temp file in the same directory plus rename, so readers never
// observe a partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

// "abscissa,rate" rows at 9 significant digits, C-locale decimal points.
std::string sweep_to_csv(const SweepCurve& curve);
SweepCurve sweep_from_csv(std::istream& in, SweepCurve::Abscissa kind);

std::string format_g9(double v);

} // namespace bellsynth
