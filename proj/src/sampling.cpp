#include "ratrec/sampling.hpp"

namespace ratrec {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL));
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

long Rng::uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return lo + static_cast<long>(r % span);
}

Rational draw_rational(Rng& rng) {
    long p = rng.uniform(1, 18);
    p = p <= 9 ? -p : p - 9;
    long q = rng.uniform(1, 9);
    return Rational(mpz_class(p), mpz_class(q));
}

SampledScenario draw_scenario(Rng& rng, RegimeKind target, long defined_horizon) {
    switch (target) {
    case RegimeKind::ModGreater:
    case RegimeKind::EqualPos:
    case RegimeKind::EqualNeg:
    case RegimeKind::ModLess: break;
    default: throw Error(ErrorKind::InvalidArgument, "sampling supports the four main regimes only");
    }

    for (;;) {
        Rational alpha = draw_rational(rng);
        Rational cap_a;
        if (target == RegimeKind::EqualPos) {
            cap_a = alpha;
        } else if (target == RegimeKind::EqualNeg) {
            cap_a = -alpha;
        } else {
            cap_a = draw_rational(rng);
        }
        Rational cap_b = draw_rational(rng);
        Rational a = draw_rational(rng);
        Rational b = draw_rational(rng);
        Rational c = draw_rational(rng);
        Rational d = draw_rational(rng);

        Parameters params(alpha, cap_a, cap_b);
        if (regime(params) != target) continue;
        InitialConditions init(d, c, b, a);
        if (defined_horizon > 0 && first_forbidden_index(params, init, defined_horizon)) continue;
        return {params, init};
    }
}

}  // namespace ratrec
