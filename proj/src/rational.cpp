#include "sccforge/rational.hpp"

#include "sccforge/error.hpp"

#include <cctype>

namespace sccforge {

std::string to_string(const Rational& q)
{
    return q.get_str();
}

std::string to_fraction_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_text(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s)
{
    if (!is_integer_text(s)) {
        throw DomainError("malformed integer '" + std::string(s) + "'");
    }
    std::string text(s);
    if (text[0] == '+') text.erase(0, 1);
    return BigInt(text);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw DomainError("empty rational");

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_integer(text.substr(0, slash));
        const BigInt den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool negative = false;
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
            negative = whole[0] == '-';
            whole.remove_prefix(1);
        }
        if (whole.empty() && frac.empty()) throw DomainError("malformed decimal '" + std::string(text) + "'");
        for (char c : frac) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw DomainError("malformed decimal '" + std::string(text) + "'");
            }
        }
        BigInt ip = whole.empty() ? BigInt(0) : parse_integer(whole);
        if (ip < 0) throw DomainError("malformed decimal '" + std::string(text) + "'");
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt fp = frac.empty() ? BigInt(0) : BigInt(std::string(frac));
        Rational q(ip * scale + fp, scale);
        q.canonicalize();
        return negative ? Rational(-q) : q;
    }

    return Rational(parse_integer(text));
}

Rational make_rational(long numerator, long denominator)
{
    if (denominator == 0) throw DomainError("zero denominator");
    Rational q(numerator, denominator);
    q.canonicalize();
    return q;
}

std::vector<std::string> to_strings(std::span<const Rational> values)
{
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(to_string(v));
    return out;
}

double to_double(const Rational& q)
{
    return q.get_d();
}

}  // namespace sccforge

namespace sccforge {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

RationalMatrix RationalMatrix::transposed() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RationalMatrix RationalMatrix::augmented(std::span<const Rational> b) const
{
    if (b.size() != rows_) throw DomainError("augmented: rhs length does not match row count");
    RationalMatrix a(rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) a(r, c) = (*this)(r, c);
        a(r, cols_) = b[r];
    }
    return a;
}

RationalMatrix RationalMatrix::without_rows(std::span<const std::size_t> drop) const
{
    std::vector<bool> removed(rows_, false);
    for (auto r : drop) {
        if (r >= rows_) throw DomainError("without_rows: row index out of range");
        removed[r] = true;
    }
    std::size_t kept = 0;
    for (bool x : removed) kept += x ? 0 : 1;
    RationalMatrix out(kept, cols_);
    std::size_t o = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
        if (removed[r]) continue;
        for (std::size_t c = 0; c < cols_; ++c) out(o, c) = (*this)(r, c);
        ++o;
    }
    return out;
}

std::size_t rank(const RationalMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    // Scale each row to integers so the elimination stays in Z.
    std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        BigInt l = 1;
        for (std::size_t c = 0; c < cols; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }

    BigInt prev = 1;
    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t p = rk;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rk]);
        for (std::size_t r = rk + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                a[r][k] = (a[rk][c] * a[r][k] - a[r][c] * a[rk][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rk][c];
        ++rk;
    }
    return rk;
}

RrefResult rref(const RationalMatrix& m)
{
    RrefResult res{m, {}};
    RationalMatrix& a = res.reduced;
    std::size_t row = 0;
    for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
        std::size_t p = row;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != row)
            for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(p, k), a(row, k));
        const Rational pivot = a(row, c);
        for (std::size_t k = 0; k < a.cols(); ++k) a(row, k) /= pivot;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, c) == 0) continue;
            const Rational f = a(r, c);
            for (std::size_t k = 0; k < a.cols(); ++k) a(r, k) -= f * a(row, k);
        }
        res.pivot_columns.push_back(c);
        ++row;
    }
    return res;
}

}  // namespace sccforge
