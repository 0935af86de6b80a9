#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "bellsynth/biphoton.hpp"
#include "bellsynth/common.hpp"

namespace bellsynth {

// Config file parse failure; carries the offending line for diagnostics.
class ConfigError : public Error {
public:
    ConfigError(const std::string& msg, int line = 0) : Error(format(msg, line)), line_(line) {}
    int line() const { return line_; }

private:
    static std::string format(const std::string& msg, int line) {
        if (line > 0) return "config line " + std::to_string(line) + ": " + msg;
        return "config: " + msg;
    }
    int line_ = 0;
};

// Flat "section.key = value" text, one entry per line, '#' comments.
// Typed getters record which keys were consumed so unknown keys can be
// reported with their line numbers.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    uint64_t get_seed(const std::string& key, uint64_t fallback) const;

    // Marks a key consumed if present (for keys a command knows about but
    // does not use, so one config can serve several commands).
    void touch(const std::string& key) const;

    // Throws ConfigError naming the first never-read key, if any.
    void check_all_consumed() const;

private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool consumed = false;
    };
    std::map<std::string, Entry> entries_;
};

// The physics block shared by every command: crystal.*, pump.*, filter1.*,
// filter2.*, grid.*, phase.phi_rad.
SetupConfig setup_from_config(const Config& cfg);

} // namespace bellsynth
