#include <sstream>

#include <json.hpp>

#include "ratrec/analysis.hpp"

namespace ratrec {

namespace {

using nlohmann::json;

json scalar_json(const Scalar& s) {
    if (s.is_exact()) return s.rational().str();
    return s.to_double();
}

Scalar scalar_from_json(const json& j) {
    if (j.is_string()) return Scalar(rat_from_string(j.get<std::string>()));
    if (j.is_number()) return Scalar(j.get<double>());
    throw Error(ErrorKind::InvalidArgument, "expected a number or a p/q string");
}

std::string_view exactness_name(LimitCycle::Exactness e) {
    return e == LimitCycle::Exactness::ExactFromZeroConditions ? "ExactFromZeroConditions" : "NumericEstimate";
}

}  // namespace

std::string verdict_report(const Verdict& v) {
    std::ostringstream out;
    out << "regime: " << to_string(v.regime) << '\n';
    out << "bd_zero: " << (v.zero_conditions.bd_zero ? "true" : "false") << '\n';
    out << "ac_zero: " << (v.zero_conditions.ac_zero ? "true" : "false") << '\n';
    out << "class: " << to_string(v.asymptotic_class) << '\n';
    if (auto* lc = std::get_if<LimitCycle>(&v.witness)) {
        out << "witness: limit_cycle\n";
        out << "l3: " << lc->l3.str() << '\n';
        out << "l2: " << lc->l2.str() << '\n';
        out << "l1: " << lc->l1.str() << '\n';
        out << "l0: " << lc->l0.str() << '\n';
        out << "cycle: " << lc->l3.str() << ", " << lc->l2.str() << ", " << lc->l1.str() << ", "
            << lc->l0.str() << '\n';
        out << "exactness: " << exactness_name(lc->exactness) << '\n';
    } else if (auto* q = std::get_if<RegimeQuantities>(&v.witness)) {
        out << "witness: regime_quantities\n";
        out << "e_bd: " << q->e_bd.str() << '\n';
        out << "e_ac: " << q->e_ac.str() << '\n';
        out << "rho_bd: " << q->rho_bd.str() << '\n';
        out << "rho_ac: " << q->rho_ac.str() << '\n';
    } else if (auto* g = std::get_if<GeometricRatio>(&v.witness)) {
        out << "witness: geometric_ratio\n";
        out << "ratio: " << g->ratio.str() << '\n';
    } else {
        out << "witness: none\n";
    }
    out << "notes:";
    for (const auto& n : v.notes) out << ' ' << n;
    out << '\n';
    return out.str();
}

std::string verdict_to_json(const Verdict& v) {
    json j;
    j["regime"] = std::string(to_string(v.regime));
    j["zero_conditions"] = {{"bd_zero", v.zero_conditions.bd_zero}, {"ac_zero", v.zero_conditions.ac_zero}};
    j["class"] = std::string(to_string(v.asymptotic_class));
    if (auto* lc = std::get_if<LimitCycle>(&v.witness)) {
        j["witness"] = {{"kind", "limit_cycle"},
                        {"l3", scalar_json(lc->l3)},
                        {"l2", scalar_json(lc->l2)},
                        {"l1", scalar_json(lc->l1)},
                        {"l0", scalar_json(lc->l0)},
                        {"exactness", std::string(exactness_name(lc->exactness))}};
    } else if (auto* q = std::get_if<RegimeQuantities>(&v.witness)) {
        j["witness"] = {{"kind", "regime_quantities"},
                        {"e_bd", scalar_json(q->e_bd)},
                        {"e_ac", scalar_json(q->e_ac)},
                        {"rho_bd", scalar_json(q->rho_bd)},
                        {"rho_ac", scalar_json(q->rho_ac)}};
    } else if (auto* g = std::get_if<GeometricRatio>(&v.witness)) {
        j["witness"] = {{"kind", "geometric_ratio"}, {"ratio", scalar_json(g->ratio)}};
    } else {
        j["witness"] = nullptr;
    }
    j["notes"] = v.notes;
    return j.dump(2);
}

Verdict verdict_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("verdict JSON: ") + e.what());
    }
    try {
        Verdict v;
        auto regime = regime_from_string(j.at("regime").get<std::string>());
        auto cls = class_from_string(j.at("class").get<std::string>());
        if (!regime || !cls) throw Error(ErrorKind::InvalidArgument, "verdict JSON: unknown regime or class");
        v.regime = *regime;
        v.asymptotic_class = *cls;
        v.zero_conditions = {j.at("zero_conditions").at("bd_zero").get<bool>(),
                             j.at("zero_conditions").at("ac_zero").get<bool>()};
        const json& w = j.at("witness");
        if (!w.is_null()) {
            std::string kind = w.at("kind").get<std::string>();
            if (kind == "limit_cycle") {
                LimitCycle lc{scalar_from_json(w.at("l3")), scalar_from_json(w.at("l2")),
                              scalar_from_json(w.at("l1")), scalar_from_json(w.at("l0"))};
                lc.exactness = w.at("exactness").get<std::string>() == "ExactFromZeroConditions"
                                   ? LimitCycle::Exactness::ExactFromZeroConditions
                                   : LimitCycle::Exactness::NumericEstimate;
                v.witness = lc;
            } else if (kind == "regime_quantities") {
                v.witness = RegimeQuantities{scalar_from_json(w.at("e_bd")), scalar_from_json(w.at("e_ac")),
                                             scalar_from_json(w.at("rho_bd")), scalar_from_json(w.at("rho_ac"))};
            } else if (kind == "geometric_ratio") {
                v.witness = GeometricRatio{scalar_from_json(w.at("ratio"))};
            } else {
                throw Error(ErrorKind::InvalidArgument, "verdict JSON: unknown witness kind " + kind);
            }
        }
        v.notes = j.at("notes").get<std::vector<std::string>>();
        return v;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("verdict JSON: ") + e.what());
    }
}

}  // namespace ratrec
