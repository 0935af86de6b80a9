#include "bellsynth/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace bellsynth {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'section.key = value', got '" + line + "'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key.find('.') == std::string::npos)
            throw ConfigError("key must look like 'section.key'", lineno);
        if (value.empty()) throw ConfigError("missing value for key '" + key + "'", lineno);
        if (cfg.entries_.count(key))
            throw ConfigError("duplicate key '" + key + "'", lineno);
        cfg.entries_[key] = Entry{value, lineno, false};
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

std::string Config::get_string(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
    it->second.consumed = true;
    return it->second.value;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
    it->second.consumed = true;
    try {
        size_t pos = 0;
        const double v = std::stod(it->second.value, &pos);
        if (pos != it->second.value.size())
            throw ConfigError("key '" + key + "': trailing characters after number",
                              it->second.line);
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("key '" + key + "': '" + it->second.value + "' is not a number",
                          it->second.line);
    } catch (const std::out_of_range&) {
        throw ConfigError("key '" + key + "': value out of range", it->second.line);
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long Config::get_long(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    const double v = get_double(key);
    const long r = static_cast<long>(std::llround(v));
    if (std::abs(v - r) > 1e-9) {
        const auto it = entries_.find(key);
        throw ConfigError("key '" + key + "' must be an integer", it->second.line);
    }
    return r;
}

uint64_t Config::get_seed(const std::string& key, uint64_t fallback) const {
    if (!has(key)) return fallback;
    const auto it = entries_.find(key);
    it->second.consumed = true;
    try {
        return std::stoull(it->second.value);
    } catch (...) {
        throw ConfigError("key '" + key + "' must be an unsigned integer", it->second.line);
    }
}

void Config::touch(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it != entries_.end()) it->second.consumed = true;
}

void Config::check_all_consumed() const {
    for (const auto& [key, entry] : entries_)
        if (!entry.consumed)
            throw ConfigError("unknown key '" + key + "'", entry.line);
}

SetupConfig setup_from_config(const Config& cfg) {
    SetupConfig s;

    const std::string material = cfg.get_string("crystal.material", "BBO");
    if (material != "BBO") throw ConfigError("crystal.material: only BBO is supported");
    s.crystal.material = CrystalMaterial::BBO;
    const std::string cut = cfg.get_string("crystal.cut", "type-II");
    if (cut != "type-II") throw ConfigError("crystal.cut: only type-II is supported");
    s.crystal.cut = CrystalCut::TypeII;
    s.crystal.length_mm = cfg.get_double("crystal.length_mm", 3.0);

    const std::string mode = cfg.get_string("pump.mode");
    if (mode == "cw") {
        s.pump.mode = PumpParams::Mode::Cw;
        s.pump.bandwidth_nm = cfg.get_double("pump.bandwidth_nm", 0.0);
    } else if (mode == "pulsed") {
        s.pump.mode = PumpParams::Mode::Pulsed;
        s.pump.bandwidth_nm = cfg.get_double("pump.bandwidth_nm");
    } else {
        throw ConfigError("pump.mode must be 'cw' or 'pulsed'");
    }
    s.pump.center_nm = cfg.get_double("pump.center_nm");

    // angle default per operating point: 49.2 deg near 702 nm, 43.5 deg near 780 nm
    const double default_angle = s.down_center_nm() <= 741.0 ? 49.2 : 43.5;
    s.crystal.phase_matching_angle_deg = cfg.get_double("crystal.angle_deg", default_angle);

    for (auto [name, slot] : {std::pair{"filter1", &s.filter1}, std::pair{"filter2", &s.filter2}}) {
        const std::string k = std::string(name) + ".fwhm_nm";
        if (cfg.has(k)) {
            FilterParams f;
            f.fwhm_nm = cfg.get_double(k);
            f.center_nm = cfg.get_double(std::string(name) + ".center_nm", 0.0);
            *slot = f;
        }
    }

    s.grid.n = static_cast<int>(cfg.get_long("grid.n", 0));
    if (cfg.has("grid.span_thz"))
        s.grid.span_rad_fs = 2.0 * kPi * 1e-3 * cfg.get_double("grid.span_thz");
    if (s.grid.n != 0 && s.grid.span_rad_fs == 0.0)
        s.grid.span_rad_fs = s.pump.mode == PumpParams::Mode::Cw ? default_grid_cw().span_rad_fs
                                                                 : default_grid_pulsed().span_rad_fs;
    if (s.grid.n == 0 && s.grid.span_rad_fs != 0.0)
        s.grid.n = s.pump.mode == PumpParams::Mode::Cw ? default_grid_cw().n
                                                       : default_grid_pulsed().n;

    s.phase_phi = cfg.get_double("phase.phi_rad", 0.0);
    s.pump.validate();
    s.crystal.validate();
    return s;
}

} // namespace bellsynth
