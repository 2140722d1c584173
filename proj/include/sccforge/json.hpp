#pragma once

#include "sccforge/chargesim.hpp"
#include "sccforge/linsolve.hpp"
#include "sccforge/lossmodel.hpp"
#include "sccforge/numrep.hpp"
#include "sccforge/regulation.hpp"
#include "sccforge/topology.hpp"

#include <json.hpp>

namespace sccforge {

inline constexpr const char* json_schema = "scc-forge/1";

nlohmann::json to_json(const SignedDigitCode& code);
SignedDigitCode code_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CodeSet& set);
nlohmann::json to_json(const Topology& topo);
nlohmann::json to_json(const KvlSystem& system);
nlohmann::json to_json(const SolvabilityReport& report);
nlohmann::json to_json(const DitherPlan& plan);

}  // namespace sccforge
