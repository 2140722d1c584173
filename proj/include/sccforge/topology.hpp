#pragma once

#include "sccforge/numrep.hpp"
#include "sccforge/rational.hpp"

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sccforge {

enum class ConnectionMode { charge, discharge, bypass };

std::string_view to_string(ConnectionMode mode);

struct GroupConnection {
    ConnectionMode mode = ConnectionMode::bypass;
    int series_count = 0;
    // Spare capacitors of the group that sweep across the series ones (r - |A_j| - 1).
    int equalizer_count = 0;

    bool operator==(const GroupConnection&) const = default;
};

struct Topology {
    bool source_engaged = false;
    int radix = 2;
    std::vector<GroupConnection> groups;

    bool operator==(const Topology&) const = default;
};

Topology code_to_topology(const SignedDigitCode& code);

// Inverse reading of a topology: source + sum of signed group contributions.
Rational topology_value(const Topology& topo);

// States of S1..S12 on the double-bridge reference board, S1 first.
struct SwitchStates {
    std::array<bool, 12> states{};

    std::string to_string() const;
    int closed_count() const;
    bool operator==(const SwitchStates&) const = default;
};

struct SwitchTableEntry {
    std::string_view label;
    std::string_view code;  // text form, a0 first
    std::string_view states;
};

// The transcribed board table for the radix-2, n = 3 codes.
std::span<const SwitchTableEntry> switch_table();

// Throws UnsupportedError for codes that have no board wiring.
SwitchStates switch_states(const SignedDigitCode& code);

struct KvlRow {
    std::vector<Rational> coefficients;  // A_1 .. A_n, -1
    Rational rhs;                        // -A_0
};

KvlRow kvl_row(const SignedDigitCode& code);

}  // namespace sccforge
