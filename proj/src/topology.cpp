#include "sccforge/topology.hpp"

#include "sccforge/error.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>

namespace sccforge {

std::string_view to_string(ConnectionMode mode)
{
    switch (mode) {
    case ConnectionMode::charge: return "charge";
    case ConnectionMode::discharge: return "discharge";
    case ConnectionMode::bypass: return "bypass";
    }
    return "bypass";
}

Topology code_to_topology(const SignedDigitCode& code)
{
    validate(code);
    Topology t;
    t.source_engaged = code.a0 == 1;
    t.radix = code.radix;
    t.groups.reserve(code.digits.size());
    for (int a : code.digits) {
        GroupConnection g;
        g.mode = a < 0 ? ConnectionMode::charge : (a > 0 ? ConnectionMode::discharge : ConnectionMode::bypass);
        g.series_count = std::abs(a);
        g.equalizer_count = code.radix - std::abs(a) - 1;
        t.groups.push_back(g);
    }
    return t;
}

Rational topology_value(const Topology& topo)
{
    Rational v = topo.source_engaged ? 1 : 0;
    Rational weight = 1;
    for (const auto& g : topo.groups) {
        weight /= topo.radix;
        const int sign = g.mode == ConnectionMode::charge ? -1 : (g.mode == ConnectionMode::discharge ? 1 : 0);
        v += weight * (sign * g.series_count);
    }
    return v;
}

std::string SwitchStates::to_string() const
{
    std::string s;
    for (bool b : states) s += b ? '1' : '0';
    return s;
}

int SwitchStates::closed_count() const
{
    return static_cast<int>(std::count(states.begin(), states.end(), true));
}

namespace {

constexpr SwitchTableEntry board_table[] = {
    {"SW18_1", "0 0 0 1", "000011000110"},
    {"SW18_2", "0 0 1 -1", "000011100001"},
    {"SW18_3", "1 -1 -1 -1", "100100001001"},
    {"SW18_4", "0 1 -1 -1", "010001001001"},
    {"SW28_1", "0 0 1 0", "000011100010"},
    {"SW28_2", "1 -1 -1 0", "100100000101"},
    {"SW28_3", "0 1 -1 0", "010001000101"},
    {"SW38_1", "1 -1 0 -1", "100010001001"},
    {"SW38_2", "0 1 0 -1", "010001100001"},
    {"SW38_3", "0 0 1 1", "000011010010"},
    {"SW38_4", "1 -1 -1 1", "100100000110"},
    {"SW48_1", "1 -1 0 0", "100010000101"},
    {"SW48_2", "0 1 0 0", "010001100010"},
    {"SW58_1", "1 0 -1 -1", "110000001001"},
    {"SW58_2", "1 -1 0 1", "100010000110"},
    {"SW58_3", "0 1 0 1", "001001000110"},
    {"SW58_4", "1 -1 1 -1", "100010100001"},
    {"SW68_1", "1 0 -1 0", "110000000101"},
    {"SW68_2", "1 -1 1 0", "100010100010"},
    {"SW68_3", "0 1 1 0", "001001100010"},
    {"SW78_1", "1 0 0 -1", "110000100001"},
    {"SW78_2", "1 0 -1 1", "110000000110"},
    {"SW78_3", "1 -1 1 1", "100010010010"},
    {"SW78_4", "0 1 1 1", "001001010010"},
};

// FNV-1a over "code:states;" for every entry. Guards against edits to the table.
constexpr std::uint64_t table_checksum()
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](char c) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    };
    for (const auto& e : board_table) {
        for (char c : e.code) mix(c);
        mix(':');
        for (char c : e.states) mix(c);
        mix(';');
    }
    return h;
}

static_assert(std::size(board_table) == 24);
static_assert(table_checksum() == 0xb9eae73d187f89d1ULL, "switch table does not match the transcription");

}  // namespace

std::span<const SwitchTableEntry> switch_table()
{
    return board_table;
}

SwitchStates switch_states(const SignedDigitCode& code)
{
    if (code.radix == 2 && code.resolution() == 3) {
        const std::string key = code.to_string();
        for (const auto& e : board_table) {
            if (e.code != key) continue;
            SwitchStates s;
            for (std::size_t i = 0; i < s.states.size(); ++i) s.states[i] = e.states[i] == '1';
            return s;
        }
    }
    throw UnsupportedError("no board wiring for code {" + code.to_string() + "} (radix " +
                           std::to_string(code.radix) + ")");
}

KvlRow kvl_row(const SignedDigitCode& code)
{
    KvlRow row;
    row.coefficients.reserve(code.digits.size() + 1);
    for (int a : code.digits) row.coefficients.emplace_back(a);
    row.coefficients.emplace_back(-1);
    row.rhs = -code.a0;
    return row;
}

}  // namespace sccforge
