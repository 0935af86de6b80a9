#include "bellsynth/csvio.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>

namespace bellsynth {

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << contents;
        if (!out) throw Error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string sweep_to_csv(const SweepCurve& curve) {
    std::ostringstream out;
    out << "abscissa,rate\n";
    for (size_t i = 0; i < curve.abscissa.size(); ++i)
        out << format_g9(curve.abscissa[i]) << ',' << format_g9(curve.rate[i]) << '\n';
    return out.str();
}

SweepCurve sweep_from_csv(std::istream& in, SweepCurve::Abscissa kind) {
    SweepCurve c;
    c.kind = kind;
    std::string line;
    if (!std::getline(in, line) || line != "abscissa,rate")
        throw DomainError("sweep_from_csv: missing 'abscissa,rate' header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw DomainError("sweep_from_csv: malformed row");
        c.abscissa.push_back(std::stod(line.substr(0, comma)));
        c.rate.push_back(std::stod(line.substr(comma + 1)));
    }
    return c;
}

} // namespace bellsynth
