#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ratrec::cli {

// Exit codes: 0 success, 1 domain error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyOutcome {
    long trials = 0;
    long matches = 0;
    std::string report;
};

// Seeded closed-form vs iteration sweep. regime is one of all, gt, eq+, eq-,
// lt; "all" cycles through the four by trial index. Trials may run on
// `jobs` threads; results are merged by trial index.
VerifyOutcome verify_sweep(std::uint64_t seed, long trials, long horizon, const std::string& regime,
                           unsigned jobs = 1);

}  // namespace ratrec::cli
