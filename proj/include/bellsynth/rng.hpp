#pragma once

#include <cstdint>

namespace bellsynth {

// splitmix64 finalizer; also the seed-expansion and stream-splitting mix.
uint64_t splitmix64(uint64_t& state);

// Child seed for an independent logical stream. Streams used by the
// simulator are documented at their use sites; the rule is
//   child = splitmix64(seed ^ (tag * 0x9E3779B97F4A7C15)).
uint64_t split_seed(uint64_t seed, uint64_t tag);

// xoshiro256** -- small, fast, portable; fully determined by the seed.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(uint64_t seed);

    uint64_t next();

    // uniform in [0, 1), 53-bit resolution
    double uniform();

    // exponential with the given rate (mean 1/rate)
    double exponential(double rate);

    // standard normal via Box-Muller; consumes exactly two uniforms
    double normal();

    // Bernoulli(p) counting over n trials
    long binomial(long n, double p);

private:
    uint64_t s_[4];
};

} // namespace bellsynth
