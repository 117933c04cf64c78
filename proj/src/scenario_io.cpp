#include "ratrec/scenario_io.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

namespace ratrec {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorKind::MalformedScenario, why); }

Rational number_field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) malformed(std::string("missing field '") + key + "'");
    if (!it->is_string()) malformed(std::string("field '") + key + "' must be a string");
    try {
        return rat_from_string(it->get<std::string>());
    } catch (const Error& e) {
        malformed(std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

bool operator==(const Scenario& x, const Scenario& y) {
    return x.params.alpha() == y.params.alpha() && x.params.cap_a() == y.params.cap_a() &&
           x.params.cap_b() == y.params.cap_b() && x.init.a() == y.init.a() && x.init.b() == y.init.b() &&
           x.init.c() == y.init.c() && x.init.d() == y.init.d() && x.horizon == y.horizon &&
           x.mode == y.mode && x.label == y.label;
}

Scenario parse_scenario(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        malformed(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) malformed("scenario must be a JSON object");

    static const std::set<std::string> known{"alpha", "A", "B", "a", "b", "c", "d", "horizon", "mode", "label"};
    for (const auto& item : j.items())
        if (!known.contains(item.key())) malformed("unexpected field '" + item.key() + "'");

    Rational alpha = number_field(j, "alpha");
    Rational cap_a = number_field(j, "A");
    Rational cap_b = number_field(j, "B");
    Rational a = number_field(j, "a");
    Rational b = number_field(j, "b");
    Rational c = number_field(j, "c");
    Rational d = number_field(j, "d");
    if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero())
        malformed("initial conditions a, b, c, d must be nonzero");

    auto h = j.find("horizon");
    if (h == j.end()) malformed("missing field 'horizon'");
    if (!h->is_number_integer()) malformed("field 'horizon' must be an integer");
    long horizon = h->get<long>();
    if (horizon < 1) malformed("horizon must be at least 1");

    Mode mode = Mode::Exact;
    if (auto m = j.find("mode"); m != j.end()) {
        if (!m->is_string()) malformed("field 'mode' must be a string");
        std::string s = m->get<std::string>();
        if (s == "exact")
            mode = Mode::Exact;
        else if (s == "float")
            mode = Mode::Float;
        else
            malformed("mode must be 'exact' or 'float'");
    }

    std::string label;
    if (auto l = j.find("label"); l != j.end()) {
        if (!l->is_string()) malformed("field 'label' must be a string");
        label = l->get<std::string>();
    }

    return Scenario{Parameters(alpha, cap_a, cap_b), InitialConditions(d, c, b, a), horizon, mode, label};
}

std::string render_scenario(const Scenario& s) {
    json j;
    j["alpha"] = s.params.alpha().rational().str();
    j["A"] = s.params.cap_a().rational().str();
    j["B"] = s.params.cap_b().rational().str();
    j["a"] = s.init.a().rational().str();
    j["b"] = s.init.b().rational().str();
    j["c"] = s.init.c().rational().str();
    j["d"] = s.init.d().rational().str();
    j["horizon"] = s.horizon;
    j["mode"] = std::string(to_string(s.mode));
    j["label"] = s.label;
    return j.dump(2);
}

Scenario paper_example(int id) {
    auto make = [](const char* alpha, const char* cap_a, const char* cap_b, const char* a, const char* b,
                   const char* c, const char* d, const char* label) {
        return Scenario{Parameters(rat_from_string(alpha), rat_from_string(cap_a), rat_from_string(cap_b)),
                        InitialConditions(rat_from_string(d), rat_from_string(c), rat_from_string(b),
                                          rat_from_string(a)),
                        kDefaultHorizon, Mode::Exact, label};
    };
    switch (id) {
    case 1: return make("1", "1.05", "1", "3", "-4", "2", "-1", "Example 1");
    case 2: return make("1", "9", "-2", "2", "-2", "2", "-2", "Example 2");
    case 3: return make("-0.5", "0.5", "1", "0.1", "0.2", "0.3", "-0.4", "Example 3");
    case 4: return make("1", "0.64", "1", "-1.2", "0.4", "-0.3", "0.9", "Example 4");
    default: break;
    }
    throw Error(ErrorKind::UnknownExample, "no example with id " + std::to_string(id));
}

Trajectory simulate_scenario(const Scenario& s, std::optional<long> horizon) {
    return simulate(s.params.to_mode(s.mode), s.init.to_mode(s.mode), horizon.value_or(s.horizon));
}

std::string export_csv(const Trajectory& traj) {
    std::string out = "n,exact,float\n";
    for (long n = Trajectory::start_index; n <= traj.last_index(); ++n) {
        const Scalar& x = traj.at(n);
        out += std::to_string(n);
        out += ',';
        if (x.is_exact()) out += x.rational().str();
        out += ',';
        out += format_double(x.to_double());
        out += '\n';
    }
    out += "# status=" + traj.status.str() + "\n";
    return out;
}

Trajectory parse_csv(std::string_view text) {
    auto bad = [](const std::string& why) -> Error { return Error(ErrorKind::InvalidArgument, "CSV: " + why); };
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "n,exact,float") throw bad("missing header");

    Trajectory traj;
    bool have_status = false;
    long expected = Trajectory::start_index;
    while (std::getline(in, line)) {
        if (line.rfind("# status=", 0) == 0) {
            std::istringstream st(line.substr(9));
            std::string kind;
            long k = 0;
            st >> kind >> k;
            if (kind == "Complete") traj.status = TrajectoryStatus::complete();
            else if (kind == "ForbiddenAt") traj.status = TrajectoryStatus::forbidden_at(k);
            else if (kind == "Overflowed") traj.status = TrajectoryStatus::overflowed(k);
            else if (kind == "ExactBlowupAt") traj.status = TrajectoryStatus::exact_blowup_at(k);
            else throw bad("unknown status '" + kind + "'");
            have_status = true;
            continue;
        }
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) throw bad("malformed row '" + line + "'");
        long n = std::stol(line.substr(0, c1));
        if (n != expected++) throw bad("rows out of order");
        std::string exact = line.substr(c1 + 1, c2 - c1 - 1);
        std::string flt = line.substr(c2 + 1);
        if (!exact.empty()) {
            traj.values.emplace_back(rat_from_string(exact));
            traj.mode = Mode::Exact;
        } else {
            traj.values.emplace_back(std::stod(flt));
            traj.mode = Mode::Float;
        }
    }
    if (!have_status) throw bad("missing status trailer");
    return traj;
}

}  // namespace ratrec
