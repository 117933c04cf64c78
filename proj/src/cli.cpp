#include "ratrec/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ratrec/analysis.hpp"
#include "ratrec/closedform.hpp"
#include "ratrec/sampling.hpp"
#include "ratrec/scenario_io.hpp"

namespace ratrec::cli {

namespace {

// Bad invocations: unreadable files, malformed scenarios, bad arguments.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << content;
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

std::string describe(const Scenario& s) {
    std::ostringstream o;
    o << "alpha=" << s.params.alpha().str() << " A=" << s.params.cap_a().str() << " B=" << s.params.cap_b().str()
      << " a=" << s.init.a().str() << " b=" << s.init.b().str() << " c=" << s.init.c().str()
      << " d=" << s.init.d().str();
    return o.str();
}

bool is_usage(ErrorKind k) {
    return k == ErrorKind::MalformedScenario || k == ErrorKind::UnknownExample || k == ErrorKind::InvalidArgument ||
           k == ErrorKind::MalformedNumber || k == ErrorKind::ZeroDenominator;
}

std::optional<RegimeKind> regime_for_trial(const std::string& filter, long index) {
    static const RegimeKind cycle[] = {RegimeKind::ModGreater, RegimeKind::EqualPos, RegimeKind::EqualNeg,
                                       RegimeKind::ModLess};
    if (filter == "all") return cycle[index % 4];
    if (filter == "gt") return RegimeKind::ModGreater;
    if (filter == "eq+") return RegimeKind::EqualPos;
    if (filter == "eq-") return RegimeKind::EqualNeg;
    if (filter == "lt") return RegimeKind::ModLess;
    return std::nullopt;
}

struct TrialResult {
    RegimeKind regime = RegimeKind::ModGreater;
    bool match = true;
    std::string counterexample;
};

TrialResult run_trial(std::uint64_t seed, long index, long horizon, RegimeKind target) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(index)));
    SampledScenario s = draw_scenario(rng, target, horizon);
    TrialResult r;
    r.regime = target;
    Trajectory traj = simulate(s.params, s.init, horizon);
    for (long m = 1; m <= traj.last_index(); ++m) {
        ClosedFormValue cf = evaluate_closed_form(s.params, s.init, m);
        if (!(cf.value == traj.at(m))) {
            std::ostringstream o;
            o << "trial " << index << " m=" << m << " alpha=" << s.params.alpha().str()
              << " A=" << s.params.cap_a().str() << " B=" << s.params.cap_b().str() << " a=" << s.init.a().str()
              << " b=" << s.init.b().str() << " c=" << s.init.c().str() << " d=" << s.init.d().str()
              << " closed_form(" << to_string(cf.form) << ")=" << cf.value.str() << " oracle=" << traj.at(m).str();
            r.match = false;
            r.counterexample = o.str();
            break;
        }
    }
    return r;
}

int cmd_simulate(const std::string& scenario_path, std::optional<long> horizon, const std::string& mode,
                 const std::string& csv_path, const std::string& svg_path, std::ostream& out) {
    Scenario s = load_scenario(scenario_path);
    if (!mode.empty()) s.mode = mode == "float" ? Mode::Float : Mode::Exact;
    Trajectory traj = simulate_scenario(s, horizon);
    if (!csv_path.empty()) {
        write_file(csv_path, export_csv(traj));
        out << "wrote " << csv_path << '\n';
    }
    if (!svg_path.empty()) {
        write_file(svg_path, emit_plot(traj, s.label.empty() ? "trajectory" : s.label));
        out << "wrote " << svg_path << '\n';
    }
    if (csv_path.empty() && svg_path.empty()) out << export_csv(traj);
    else out << "status: " << traj.status.str() << '\n';
    return kExitOk;
}

int cmd_closed_form(const std::string& scenario_path, long m, const std::string& form_name, std::ostream& out) {
    Scenario s = load_scenario(scenario_path);
    auto form = form_from_string(form_name);
    if (!form) throw UsageError("unknown form '" + form_name + "'");
    ClosedFormValue v = evaluate_closed_form(s.params, s.init, m, *form);
    out << v.value.str() << " (" << to_string(v.form) << ")\n";
    return kExitOk;
}

int cmd_classify(const std::string& scenario_path, bool as_json, std::ostream& out) {
    Scenario s = load_scenario(scenario_path);
    Verdict v = classify(s.params, s.init);
    out << (as_json ? verdict_to_json(v) + "\n" : verdict_report(v));
    return kExitOk;
}

int cmd_example(int id, const std::string& csv_path, const std::string& svg_path, bool with_verdict,
                std::ostream& out) {
    Scenario s = paper_example(id);
    Trajectory traj = simulate_scenario(s);
    out << s.label << '\n' << describe(s) << '\n';
    out << "horizon: " << s.horizon << '\n';
    out << "status: " << traj.status.str() << '\n';
    if (traj.status.is_complete()) {
        auto p = detect_period(traj, std::min<long>(12, traj.last_index() / 3));
        out << "period: " << (p ? std::to_string(*p) : std::string("none")) << '\n';
    }
    if (!csv_path.empty()) {
        write_file(csv_path, export_csv(traj));
        out << "wrote " << csv_path << '\n';
    }
    if (!svg_path.empty()) {
        write_file(svg_path, emit_plot(traj, s.label));
        out << "wrote " << svg_path << '\n';
    }
    if (with_verdict) out << verdict_report(classify(s.params, s.init));
    return kExitOk;
}

int cmd_forbidden(const std::string& scenario_path, long horizon, std::ostream& out) {
    Scenario s = load_scenario(scenario_path);
    auto k = first_forbidden_index(s.params, s.init, horizon);
    out << (k ? std::to_string(*k) : std::string("none")) << '\n';
    return kExitOk;
}

}  // namespace

VerifyOutcome verify_sweep(std::uint64_t seed, long trials, long horizon, const std::string& regime_filter,
                           unsigned jobs) {
    if (trials < 1 || horizon < 1) throw UsageError("trials and horizon must be positive");
    if (!regime_for_trial(regime_filter, 0)) throw UsageError("unknown regime '" + regime_filter + "'");

    std::vector<TrialResult> results(static_cast<std::size_t>(trials));
    std::vector<std::string> failures(static_cast<std::size_t>(trials));
    auto work = [&](unsigned worker, unsigned stride) {
        for (long i = worker; i < trials; i += stride) {
            try {
                results[static_cast<std::size_t>(i)] = run_trial(seed, i, horizon, *regime_for_trial(regime_filter, i));
            } catch (const std::exception& e) {
                failures[static_cast<std::size_t>(i)] = e.what();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(trials)));
    if (jobs == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w, jobs);
        for (auto& t : pool) t.join();
    }

    VerifyOutcome outcome;
    outcome.trials = trials;
    std::ostringstream rep;
    rep << "verify seed=" << seed << " trials=" << trials << " horizon=" << horizon << " regime=" << regime_filter
        << '\n';
    std::string first;
    long per_total[4] = {}, per_match[4] = {};
    for (long i = 0; i < trials; ++i) {
        const auto& r = results[static_cast<std::size_t>(i)];
        const auto& f = failures[static_cast<std::size_t>(i)];
        auto slot = static_cast<std::size_t>(*regime_for_trial(regime_filter, i));
        ++per_total[slot];
        bool ok = f.empty() && r.match;
        if (ok) {
            ++per_match[slot];
            ++outcome.matches;
        } else if (first.empty()) {
            first = f.empty() ? r.counterexample : "trial " + std::to_string(i) + " error: " + f;
        }
    }
    for (auto k : {RegimeKind::ModGreater, RegimeKind::EqualPos, RegimeKind::EqualNeg, RegimeKind::ModLess}) {
        auto slot = static_cast<std::size_t>(k);
        if (per_total[slot] == 0) continue;
        rep << to_string(k) << ": " << per_match[slot] << '/' << per_total[slot] << '\n';
    }
    rep << outcome.matches << '/' << trials << " exact matches\n";
    if (!first.empty()) rep << "first counterexample: " << first << '\n';
    outcome.report = rep.str();
    return outcome;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (const char* env = std::getenv("RATREC_BITLIMIT")) {
        char* end = nullptr;
        unsigned long long bits = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || bits == 0) {
            err << "error: RATREC_BITLIMIT must be a positive integer\n";
            return kExitUsage;
        }
        set_bit_limit(static_cast<std::size_t>(bits));
    }

    CLI::App app{"Exact simulation, closed forms and classification for "
                 "x(n+1) = alpha x(n-3) / (A + B x(n-1) x(n-3))"};
    app.name("ratrec");
    app.require_subcommand(1);

    std::string scenario, csv_path, svg_path, mode, form = "auto", regime_filter = "all";
    std::optional<long> horizon;
    long m = 0, trials = 100, verify_horizon = 50, forbidden_horizon = 1000;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    int example_id = 0;
    bool as_json = false, with_verdict = false;

    auto* sim = app.add_subcommand("simulate", "iterate a scenario and export the trajectory");
    sim->add_option("--scenario", scenario, "scenario JSON file")->required();
    sim->add_option("--horizon", horizon, "last index to compute")->check(CLI::PositiveNumber);
    sim->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    sim->add_option("--csv", csv_path, "write CSV here");
    sim->add_option("--svg", svg_path, "write an SVG plot here");

    auto* cf = app.add_subcommand("closed-form", "evaluate x_n from the explicit formulas");
    cf->add_option("--scenario", scenario, "scenario JSON file")->required();
    cf->add_option("--n", m, "index to evaluate")->required();
    cf->add_option("--form", form, "auto, theorem1, corollary1, corollary2 or elsayed")
        ->check(CLI::IsMember({"auto", "theorem1", "corollary1", "corollary2", "elsayed"}));

    auto* cls = app.add_subcommand("classify", "classify the long-run behaviour");
    cls->add_option("--scenario", scenario, "scenario JSON file")->required();
    cls->add_flag("--json", as_json, "emit JSON");

    auto* ver = app.add_subcommand("verify", "random closed-form vs iteration sweep");
    ver->add_option("--trials", trials, "number of scenarios")->check(CLI::PositiveNumber);
    ver->add_option("--seed", seed, "64-bit seed");
    ver->add_option("--horizon", verify_horizon, "compare x_1..x_N")->check(CLI::PositiveNumber);
    ver->add_option("--regime", regime_filter, "all, gt, eq+, eq- or lt")
        ->check(CLI::IsMember({"all", "gt", "eq+", "eq-", "lt"}));
    ver->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* ex = app.add_subcommand("example", "run one of the four worked examples");
    ex->add_option("--id", example_id, "1..4")->required();
    ex->add_option("--csv", csv_path, "write CSV here");
    ex->add_option("--svg", svg_path, "write an SVG plot here");
    ex->add_flag("--classify", with_verdict, "append the classification");

    auto* fb = app.add_subcommand("forbidden", "first step with a zero denominator");
    fb->add_option("--scenario", scenario, "scenario JSON file")->required();
    fb->add_option("--horizon", forbidden_horizon, "steps to check")->required()->check(CLI::PositiveNumber);

    std::vector<const char*> argv{"ratrec"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(scenario, horizon, mode, csv_path, svg_path, out);
        if (cf->parsed()) return cmd_closed_form(scenario, m, form, out);
        if (cls->parsed()) return cmd_classify(scenario, as_json, out);
        if (ver->parsed()) {
            VerifyOutcome v = verify_sweep(seed, trials, verify_horizon, regime_filter, jobs);
            out << v.report;
            return v.matches == v.trials ? kExitOk : kExitDomain;
        }
        if (ex->parsed()) return cmd_example(example_id, csv_path, svg_path, with_verdict, out);
        if (fb->parsed()) return cmd_forbidden(scenario, forbidden_horizon, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_usage(e.kind()) ? kExitUsage : kExitDomain;
    }
    return kExitUsage;
}

}  // namespace ratrec::cli
