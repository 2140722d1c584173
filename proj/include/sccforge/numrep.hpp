#pragma once

#include "sccforge/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace sccforge {

// Conversion ratio m / r^n with 1 <= m <= r^n - 1.
class TargetRatio {
public:
    // Throws DomainError when r < 2, n < 1 or m is outside [1, r^n - 1].
    static TargetRatio make(std::int64_t m, int radix, int resolution);

    std::int64_t numerator() const { return m_; }
    int radix() const { return r_; }
    int resolution() const { return n_; }
    std::int64_t denominator() const { return den_; }
    Rational value() const;

    // n minus the trailing zero digits of the conventional code.
    int effective_resolution() const;

    // "3/8" style, unreduced.
    std::string to_string() const;

    bool operator==(const TargetRatio&) const = default;

private:
    TargetRatio(std::int64_t m, int r, int n, std::int64_t den) : m_(m), r_(r), n_(n), den_(den) {}
    std::int64_t m_;
    int r_;
    int n_;
    std::int64_t den_;
};

// r^n, throwing ResourceError on overflow.
std::int64_t checked_power(int radix, int exponent);

struct SignedDigitCode {
    int a0 = 0;
    std::vector<int> digits;  // A_1 .. A_n, most significant first
    int radix = 2;

    int resolution() const { return static_cast<int>(digits.size()); }
    int zero_count() const;
    int nonzero_count() const { return resolution() - zero_count(); }

    // a0 followed by the digits, space separated: "1 -1 0 -1".
    std::string to_string() const;

    bool operator==(const SignedDigitCode&) const = default;
};

// Canonical ordering: digits compared from A_n down to A_1, then a0. This is
// the row order of a full factorial design whose first factor varies fastest.
bool canonical_less(const SignedDigitCode& a, const SignedDigitCode& b);

// Parses the text form. Throws DomainError on malformed input or digits out of range.
SignedDigitCode parse_code(std::string_view text, int radix);

// Throws DomainError if a0 or any digit is out of range.
void validate(const SignedDigitCode& code);

struct CodeSet {
    TargetRatio ratio;
    std::vector<SignedDigitCode> codes;  // duplicate-free, canonical order

    std::size_t size() const { return codes.size(); }
    bool contains(const SignedDigitCode& c) const;
};

SignedDigitCode conventional_code(std::int64_t m, int radix, int resolution);
Rational code_value(const SignedDigitCode& code);

// Closure of the add-then-subtract (r-1) step, starting from the conventional code.
CodeSet spawn_codes(const TargetRatio& ratio);

inline constexpr std::uint64_t default_enumeration_bound = 10'000'000;

// Full factorial search over all (2r-1)^n digit tuples.
CodeSet enumerate_codes(const TargetRatio& ratio, std::uint64_t max_rows = default_enumeration_bound);

// Every cell of U * P^T that hits m or m - 2^n, as an unordered multiset in
// canonical order. Radix 2 only.
std::vector<SignedDigitCode> weight_sign_cells(const TargetRatio& ratio);

// 2^n codes arranged so that the nonzero entries of every digit column
// alternate in sign around the cycle. Radix 2 only.
std::vector<SignedDigitCode> balanced_sequence(const TargetRatio& ratio);

// |codes| >= n' + 1.
bool satisfies_minimum_count(const CodeSet& set);
// Every digit column that has a nonzero entry has entries of both signs.
bool satisfies_sign_pairing(const CodeSet& set);

}  // namespace sccforge
