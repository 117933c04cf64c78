#pragma once

/**
 * @file sampling.hpp
 * @brief Seeded random scenarios for equivalence sweeps.
 *
 * The generator is std::mt19937_64 (its output sequence is fixed by the
 * standard) seeded through splitmix64, and integers are drawn by rejection
 * from the raw 64-bit stream, so a seed reproduces the same draws on every
 * platform. Coefficients and seeds are p/q with p in [-9,9]\{0}, q in [1,9].
 */

#include <cstdint>
#include <random>

#include "ratrec/analysis.hpp"

namespace ratrec {

class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next() { return engine_(); }
    // Uniform on [lo, hi].
    long uniform(long lo, long hi);

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream for trial `index` of a sweep seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

Rational draw_rational(Rng& rng);

struct SampledScenario {
    Parameters params;
    InitialConditions init;
};

// Rejection-samples a scenario in `target` (one of ModGreater, EqualPos,
// EqualNeg, ModLess) whose exact iteration has no zero denominator up to
// `horizon`. `defined_horizon` <= 0 skips that check.
SampledScenario draw_scenario(Rng& rng, RegimeKind target, long defined_horizon);

}  // namespace ratrec
