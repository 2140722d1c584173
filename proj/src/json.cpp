#include "sccforge/json.hpp"

#include "sccforge/error.hpp"

namespace sccforge {

nlohmann::json to_json(const SignedDigitCode& code)
{
    return {{"a0", code.a0}, {"digits", code.digits}, {"radix", code.radix}};
}

SignedDigitCode code_from_json(const nlohmann::json& j)
{
    SignedDigitCode c;
    try {
        c.a0 = j.at("a0").get<int>();
        c.digits = j.at("digits").get<std::vector<int>>();
        c.radix = j.value("radix", 2);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed code JSON: ") + e.what());
    }
    validate(c);
    return c;
}

nlohmann::json to_json(const CodeSet& set)
{
    nlohmann::json codes = nlohmann::json::array();
    for (const auto& c : set.codes) codes.push_back(to_json(c));
    return {{"ratio", set.ratio.to_string()},
            {"radix", set.ratio.radix()},
            {"resolution", set.ratio.resolution()},
            {"effective_resolution", set.ratio.effective_resolution()},
            {"codes", codes}};
}

nlohmann::json to_json(const Topology& topo)
{
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : topo.groups) {
        groups.push_back({{"mode", to_string(g.mode)}, {"series", g.series_count}, {"equalizers", g.equalizer_count}});
    }
    return {{"source", topo.source_engaged}, {"groups", groups}};
}

nlohmann::json to_json(const KvlSystem& system)
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < system.equations(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < system.unknowns(); ++c) row.push_back(to_fraction_string(system.a(r, c)));
        rows.push_back(row);
    }
    nlohmann::json b = nlohmann::json::array();
    for (const auto& v : system.b) b.push_back(to_fraction_string(v));
    nlohmann::json codes = nlohmann::json::array();
    for (const auto& c : system.codes) codes.push_back(to_json(c));
    return {{"schema", json_schema}, {"unknowns", system.labels()}, {"A", rows},  {"b", b},
            {"codes", codes},         {"step_up", system.step_up}};
}

nlohmann::json to_json(const SolvabilityReport& report)
{
    return {{"rank_A", report.rank_a},
            {"rank_augmented", report.rank_augmented},
            {"unknowns", report.unknowns},
            {"unique", report.unique}};
}

nlohmann::json to_json(const DitherPlan& plan)
{
    nlohmann::json ratios = nlohmann::json::array();
    for (const auto& r : plan.ratios) ratios.push_back(r.to_string());
    return {{"ratios", ratios}, {"weights", plan.weights}};
}

}  // namespace sccforge
