#pragma once

#include "sccforge/rational.hpp"

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sccforge {

// Exact value of "4.7u", "100kHz", "1.2Ohm", "470uF", "3/8". Recognised
// prefixes: p n u m k M G. A trailing unit name (F, Hz, Ohm, V, s, A) is ignored.
// Throws DomainError on anything else.
Rational parse_si_exact(std::string_view text);
double parse_si(std::string_view text);

// Comma separated list of parse_si values.
std::vector<double> parse_si_list(std::string_view text);

// "auto" gives nullopt; "Ts/4", "1/4" and "0.25" give a fraction of T_s.
std::optional<Rational> parse_slot_fraction(std::string_view text);

// Flat "key = value" document. '#' starts a comment; blank lines are skipped.
// Keys keep file order. Throws DomainError on a line without '='.
std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in);

}  // namespace sccforge
