#pragma once

#include "sccforge/error.hpp"
#include "sccforge/numrep.hpp"
#include "sccforge/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace sccforge {

// KVL equations of a code set, normalized to the input voltage.
// Unknowns are x_1..x_n (flying capacitors) and x_o (output).
struct KvlSystem {
    RationalMatrix a;
    std::vector<Rational> b;
    int radix = 2;
    int resolution = 0;
    std::vector<SignedDigitCode> codes;  // row k was built from codes[k]
    bool step_up = false;                // source and output terminals swapped

    std::size_t equations() const { return a.rows(); }
    std::size_t unknowns() const { return a.cols(); }
    std::vector<std::string> labels() const;
};

struct SolvabilityReport {
    std::size_t rank_a = 0;
    std::size_t rank_augmented = 0;
    std::size_t unknowns = 0;
    bool unique = false;
};

class SolvabilityError : public Error {
public:
    SolvabilityError(const std::string& what, SolvabilityReport report) : Error(what), report_(report) {}
    const SolvabilityReport& report() const { return report_; }

private:
    SolvabilityReport report_;
};

// Throws DomainError on an empty list or mixed radix/resolution.
KvlSystem build_system(std::span<const SignedDigitCode> codes);
KvlSystem build_system(const CodeSet& set);

SolvabilityReport check_solvable(const KvlSystem& system);

// Throws SolvabilityError unless the system has exactly one solution.
std::vector<Rational> solve_unique(const KvlSystem& system);

struct RedundancyReport {
    // Column sums of |RREF(A^T)|, one per equation.
    std::vector<Rational> column_sums;
    // 0-based rows that are linear combinations of earlier rows.
    std::vector<std::size_t> removable;
};

// Rows are removable when their column of RREF(A^T) is not a pivot column.
// Every column whose abs sum exceeds one is among them; so are duplicated
// and negated rows, whose sum is exactly one.
RedundancyReport analyze_redundancy(const KvlSystem& system);
std::vector<std::size_t> find_redundant(const KvlSystem& system);

KvlSystem remove_rows(const KvlSystem& system, std::span<const std::size_t> rows);

// Zero digits descending; ties keep canonical code order.
std::vector<SignedDigitCode> sort_codes_by_zeros(std::span<const SignedDigitCode> codes);

// Reciprocal system: output column and right-hand side trade places.
KvlSystem step_up(const KvlSystem& system);

// Aligned "[A | b]" rendering for documentation.
std::string to_text(const KvlSystem& system);

}  // namespace sccforge
