#include "sccforge/units.hpp"

#include "sccforge/error.hpp"

#include <array>
#include <cctype>

namespace sccforge {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool ends_with(std::string_view s, std::string_view tail)
{
    return s.size() >= tail.size() && s.substr(s.size() - tail.size()) == tail;
}

}  // namespace

Rational parse_si_exact(std::string_view text)
{
    std::string_view s = trim(text);
    if (s.empty()) throw DomainError("empty quantity");

    // Longer names first so "Hz" is not read as a bare prefix.
    static constexpr std::array<std::string_view, 7> units{"Ohm", "ohm", "Hz", "F", "V", "s", "A"};
    for (auto u : units) {
        if (ends_with(s, u) && s.size() > u.size()) {
            s.remove_suffix(u.size());
            break;
        }
    }
    if (s.empty()) throw DomainError("malformed quantity '" + std::string(text) + "'");

    Rational scale = 1;
    switch (s.back()) {
    case 'p': scale = Rational(1, 1000000000) / 1000; break;
    case 'n': scale = Rational(1, 1000000000); break;
    case 'u': scale = Rational(1, 1000000); break;
    case 'm': scale = Rational(1, 1000); break;
    case 'k': scale = 1000; break;
    case 'M': scale = 1000000; break;
    case 'G': scale = 1000000000; break;
    default: break;
    }
    if (scale != 1) s.remove_suffix(1);
    s = trim(s);
    try {
        return parse_rational(s) * scale;
    } catch (const DomainError&) {
        throw DomainError("malformed quantity '" + std::string(text) + "'");
    }
}

double parse_si(std::string_view text)
{
    return to_double(parse_si_exact(text));
}

std::vector<double> parse_si_list(std::string_view text)
{
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_si(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::optional<Rational> parse_slot_fraction(std::string_view text)
{
    std::string_view s = trim(text);
    if (s == "auto") return std::nullopt;
    Rational f;
    if (s.starts_with("Ts/") || s.starts_with("ts/")) {
        const Rational k = parse_rational(s.substr(3));
        if (k <= 0) throw DomainError("slot divisor must be positive");
        f = 1 / k;
    } else {
        f = parse_rational(s);
    }
    if (f <= 0 || f > 1) throw DomainError("slot duration must lie in (0, T_s]");
    return f;
}

std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in)
{
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view s(line);
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw DomainError("config line " + std::to_string(number) + ": expected key = value");
        }
        const auto key = trim(s.substr(0, eq));
        if (key.empty()) throw DomainError("config line " + std::to_string(number) + ": empty key");
        out.emplace_back(std::string(key), std::string(trim(s.substr(eq + 1))));
    }
    return out;
}

}  // namespace sccforge
