#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sccforge {

using Rational = mpq_class;
using BigInt = mpz_class;

// Canonical text: "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

// Always "p/q" (JSON wire format).
std::string to_fraction_string(const Rational& q);

// Parses "p/q", "p" or an exact decimal such as "0.4" or "-1.25".
// Throws DomainError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

Rational make_rational(long numerator, long denominator = 1);

std::vector<std::string> to_strings(std::span<const Rational> values);

double to_double(const Rational& q);

// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalMatrix transposed() const;
    // Appends b as an extra last column.
    RationalMatrix augmented(std::span<const Rational> b) const;
    RationalMatrix without_rows(std::span<const std::size_t> drop) const;

    bool operator==(const RationalMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// Rank by fraction-free (Bareiss) elimination on the integer-scaled matrix.
std::size_t rank(const RationalMatrix& m);

struct RrefResult {
    RationalMatrix reduced;
    std::vector<std::size_t> pivot_columns;
};

// Gauss-Jordan reduced row echelon form. Pivot search scans columns left to
// right and takes the smallest row index with a nonzero entry.
RrefResult rref(const RationalMatrix& m);

}  // namespace sccforge
