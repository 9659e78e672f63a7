#include "dsm/report.hpp"

namespace dsm {

nlohmann::json to_json(const InequalityCheck& c) {
    return {{"name", c.name}, {"lhs", c.lhs},     {"rhs", c.rhs},
            {"evaluable", c.evaluable}, {"holds", c.holds}, {"margin", c.margin}};
}

nlohmann::json to_json(const CertificationReport& rep) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks) checks.push_back(to_json(c));
    return {{"solver", rep.solver_kind}, {"checks", checks}, {"all_certified", rep.all_certified}};
}

nlohmann::json to_json(const ConditionCheck& c) {
    nlohmann::json j = {{"name", c.name}, {"holds", c.holds}, {"min_margin", c.min_margin}};
    if (c.witness) j["witness"] = *c.witness;
    return j;
}

nlohmann::json to_json(const LemmaVerdict& v) {
    nlohmann::json hyps = nlohmann::json::array();
    for (const auto& h : v.hypotheses) hyps.push_back(to_json(h));
    nlohmann::json j = {{"hypotheses", hyps},
                        {"hypotheses_hold", v.hypotheses_hold},
                        {"conclusion_checked", v.conclusion_checked},
                        {"conclusion_holds", v.conclusion_holds}};
    if (v.witness) j["witness"] = *v.witness;
    return j;
}

} // namespace dsm
