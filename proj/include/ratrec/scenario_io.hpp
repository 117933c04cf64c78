#pragma once

/**
 * @file scenario_io.hpp
 * @brief Scenario files, the four worked examples, CSV and SVG export.
 *
 * Scenario JSON keeps every number as a string ("1.05", "21/20", "-3") so it
 * is read exactly:
 *
 *   {"alpha":"1","A":"1.05","B":"1","a":"3","b":"-4","c":"2","d":"-1",
 *    "horizon":400,"mode":"exact","label":"Example 1"}
 *
 * CSV has a `n,exact,float` header, one row per index from -3 and a
 * `# status=...` trailer.
 */

#include <string>
#include <string_view>

#include "ratrec/recurrence.hpp"

namespace ratrec {

// Coefficients and seeds are held exactly; `mode` selects how the scenario
// is iterated.
struct Scenario {
    Parameters params;
    InitialConditions init;
    long horizon = 400;
    Mode mode = Mode::Exact;
    std::string label;

    friend bool operator==(const Scenario& x, const Scenario& y);
};

inline constexpr long kDefaultHorizon = 400;

// Throws MalformedScenario on missing/extra fields, non-string numbers,
// malformed numbers, zero seeds, horizon < 1 or an unknown mode.
Scenario parse_scenario(std::string_view text);
std::string render_scenario(const Scenario& s);

// The four worked examples (ids 1..4), exact, horizon 400.
Scenario paper_example(int id);

// Iterates the scenario in its own mode.
Trajectory simulate_scenario(const Scenario& s, std::optional<long> horizon = std::nullopt);

std::string export_csv(const Trajectory& traj);
// Reads export_csv output back.
Trajectory parse_csv(std::string_view text);

// Standalone SVG 1.1 chart of x_n against n. Non-finite values are clipped
// to the plot frame. Output depends only on the inputs.
std::string emit_plot(const Trajectory& traj, std::string_view title);

}  // namespace ratrec
