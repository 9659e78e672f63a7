#pragma once

#include <json.hpp>

#include "dsm/lemmas.hpp"
#include "dsm/solvers.hpp"

namespace dsm {

nlohmann::json to_json(const InequalityCheck& c);
nlohmann::json to_json(const CertificationReport& rep);
nlohmann::json to_json(const ConditionCheck& c);
nlohmann::json to_json(const LemmaVerdict& v);

} // namespace dsm
