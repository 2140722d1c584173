#include "sccforge/numrep.hpp"

#include "sccforge/error.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

namespace sccforge {

std::int64_t checked_power(int radix, int exponent)
{
    std::int64_t p = 1;
    for (int i = 0; i < exponent; ++i) {
        if (p > std::numeric_limits<std::int64_t>::max() / radix) {
            throw ResourceError("radix^resolution overflows 64 bits");
        }
        p *= radix;
    }
    return p;
}

TargetRatio TargetRatio::make(std::int64_t m, int radix, int resolution)
{
    if (radix < 2) throw DomainError("radix must be at least 2");
    if (resolution < 1) throw DomainError("resolution must be at least 1");
    const std::int64_t den = checked_power(radix, resolution);
    if (m < 1 || m > den - 1) {
        throw DomainError("numerator " + std::to_string(m) + " outside [1, " + std::to_string(den - 1) + "]");
    }
    return TargetRatio(m, radix, resolution, den);
}

Rational TargetRatio::value() const
{
    Rational q(BigInt(std::to_string(m_)), BigInt(std::to_string(den_)));
    q.canonicalize();
    return q;
}

int TargetRatio::effective_resolution() const
{
    int n = n_;
    std::int64_t m = m_;
    while (m % r_ == 0) {
        m /= r_;
        --n;
    }
    return n;
}

std::string TargetRatio::to_string() const
{
    return std::to_string(m_) + "/" + std::to_string(den_);
}

int SignedDigitCode::zero_count() const
{
    return static_cast<int>(std::count(digits.begin(), digits.end(), 0));
}

std::string SignedDigitCode::to_string() const
{
    std::string s = std::to_string(a0);
    for (int d : digits) s += " " + std::to_string(d);
    return s;
}

bool canonical_less(const SignedDigitCode& a, const SignedDigitCode& b)
{
    if (a.digits.size() != b.digits.size()) return a.digits.size() < b.digits.size();
    for (std::size_t i = a.digits.size(); i-- > 0;) {
        if (a.digits[i] != b.digits[i]) return a.digits[i] < b.digits[i];
    }
    return a.a0 < b.a0;
}

void validate(const SignedDigitCode& code)
{
    if (code.radix < 2) throw DomainError("radix must be at least 2");
    if (code.a0 != 0 && code.a0 != 1) throw DomainError("a0 must be 0 or 1");
    if (code.digits.empty()) throw DomainError("code has no digits");
    for (int d : code.digits) {
        if (d < 1 - code.radix || d > code.radix - 1) {
            throw DomainError("digit " + std::to_string(d) + " out of range for radix " + std::to_string(code.radix));
        }
    }
}

SignedDigitCode parse_code(std::string_view text, int radix)
{
    std::vector<int> values;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t' || text[i] == '{' ||
                                   text[i] == '}' || text[i] == ';')) {
            ++i;
        }
        if (i == text.size()) break;
        int v = 0;
        const char* first = text.data() + i;
        const char* last = text.data() + text.size();
        if (*first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{}) throw DomainError("malformed code '" + std::string(text) + "'");
        values.push_back(v);
        i = static_cast<std::size_t>(ptr - text.data());
    }
    if (values.size() < 2) throw DomainError("code needs a0 and at least one digit");
    SignedDigitCode c{values.front(), std::vector<int>(values.begin() + 1, values.end()), radix};
    validate(c);
    return c;
}

bool CodeSet::contains(const SignedDigitCode& c) const
{
    return std::find(codes.begin(), codes.end(), c) != codes.end();
}

SignedDigitCode conventional_code(std::int64_t m, int radix, int resolution)
{
    const auto ratio = TargetRatio::make(m, radix, resolution);
    SignedDigitCode c{0, std::vector<int>(static_cast<std::size_t>(resolution)), radix};
    std::int64_t rest = ratio.numerator();
    for (int j = resolution; j-- > 0;) {
        c.digits[static_cast<std::size_t>(j)] = static_cast<int>(rest % radix);
        rest /= radix;
    }
    return c;
}

Rational code_value(const SignedDigitCode& code)
{
    // Horner from the least significant digit.
    Rational v = 0;
    for (std::size_t i = code.digits.size(); i-- > 0;) {
        v = (v + code.digits[i]) / code.radix;
    }
    return v + code.a0;
}

namespace {

struct CanonicalLess {
    bool operator()(const SignedDigitCode& a, const SignedDigitCode& b) const { return canonical_less(a, b); }
};

}  // namespace

CodeSet spawn_codes(const TargetRatio& ratio)
{
    const int r = ratio.radix();
    const int n = ratio.resolution();
    const SignedDigitCode start = conventional_code(ratio.numerator(), r, n);

    std::set<SignedDigitCode, CanonicalLess> seen{start};
    std::deque<SignedDigitCode> work{start};
    while (!work.empty()) {
        const SignedDigitCode cur = work.front();
        work.pop_front();
        for (int j = 0; j < n; ++j) {
            if (cur.digits[static_cast<std::size_t>(j)] <= 0) continue;
            // d[0] is a0, d[k] is A_k.
            std::vector<int> d(static_cast<std::size_t>(n) + 1);
            d[0] = cur.a0;
            std::copy(cur.digits.begin(), cur.digits.end(), d.begin() + 1);
            std::size_t k = static_cast<std::size_t>(j) + 1;
            d[k] += r - 1;
            while (k > 0 && d[k] >= r) {
                d[k] -= r;
                d[k - 1] += 1;
                --k;
            }
            d[static_cast<std::size_t>(j) + 1] -= r - 1;

            if (d[0] != 0 && d[0] != 1) continue;
            bool ok = true;
            for (std::size_t i = 1; i < d.size(); ++i) ok = ok && d[i] >= 1 - r && d[i] <= r - 1;
            if (!ok) continue;
            SignedDigitCode next{d[0], std::vector<int>(d.begin() + 1, d.end()), r};
            if (seen.insert(next).second) work.push_back(std::move(next));
        }
    }
    return CodeSet{ratio, std::vector<SignedDigitCode>(seen.begin(), seen.end())};
}

CodeSet enumerate_codes(const TargetRatio& ratio, std::uint64_t max_rows)
{
    const int r = ratio.radix();
    const int n = ratio.resolution();
    const int levels = 2 * r - 1;

    std::uint64_t rows = 1;
    for (int i = 0; i < n; ++i) {
        if (rows > max_rows / static_cast<std::uint64_t>(levels)) {
            throw ResourceError("enumeration of " + std::to_string(levels) + "^" + std::to_string(n) +
                                " rows exceeds the bound of " + std::to_string(max_rows));
        }
        rows *= static_cast<std::uint64_t>(levels);
    }

    const std::int64_t m = ratio.numerator();
    const std::int64_t den = ratio.denominator();
    std::vector<std::int64_t> weight(static_cast<std::size_t>(n));
    for (int j = n; j-- > 0;) weight[static_cast<std::size_t>(j)] = (j == n - 1) ? 1 : weight[static_cast<std::size_t>(j) + 1] * r;

    CodeSet out{ratio, {}};
    // Odometer with A_1 turning fastest, so rows come out in canonical order.
    std::vector<int> digits(static_cast<std::size_t>(n), 1 - r);
    std::int64_t f = 0;
    for (int j = 0; j < n; ++j) f += (1 - r) * weight[static_cast<std::size_t>(j)];
    for (std::uint64_t row = 0; row < rows; ++row) {
        if (f == m) out.codes.push_back({0, digits, r});
        else if (f == m - den) out.codes.push_back({1, digits, r});

        for (std::size_t j = 0; j < digits.size(); ++j) {
            if (digits[j] < r - 1) {
                ++digits[j];
                f += weight[j];
                break;
            }
            f -= static_cast<std::int64_t>(2 * (r - 1)) * weight[j];
            digits[j] = 1 - r;
        }
    }
    return out;
}

std::vector<SignedDigitCode> weight_sign_cells(const TargetRatio& ratio)
{
    if (ratio.radix() != 2) throw UnsupportedError("weight/sign cells are defined for radix 2 only");
    const int n = ratio.resolution();
    const std::int64_t rows = ratio.denominator();
    const std::int64_t m = ratio.numerator();

    // Row i of B is the binary expansion of i, most significant bit in column 1.
    auto bit = [n](std::int64_t i, int k) { return static_cast<int>((i >> (n - 1 - k)) & 1); };

    std::vector<SignedDigitCode> out;
    for (std::int64_t i = 0; i < rows; ++i) {
        for (std::int64_t j = 0; j < rows; ++j) {
            std::int64_t cell = 0;
            std::vector<int> d(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) {
                const int sign = bit(j, k) ? -1 : 1;
                d[static_cast<std::size_t>(k)] = bit(i, k) * sign;
                cell += static_cast<std::int64_t>(d[static_cast<std::size_t>(k)]) << (n - 1 - k);
            }
            if (cell == m) out.push_back({0, std::move(d), 2});
            else if (cell == m - rows) out.push_back({1, std::move(d), 2});
        }
    }
    std::stable_sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<SignedDigitCode> balanced_sequence(const TargetRatio& ratio)
{
    if (ratio.radix() != 2) throw UnsupportedError("balanced sequences are defined for radix 2 only");
    const int n = ratio.resolution();
    const std::int64_t m = ratio.numerator();
    const std::int64_t period = ratio.denominator();

    // Polarity each capacitor takes the next time it is used.
    std::vector<int> polarity(static_cast<std::size_t>(n), 2 * m < period ? 1 : -1);

    std::vector<SignedDigitCode> seq;
    seq.reserve(static_cast<std::size_t>(period));
    for (std::int64_t t = 0; t < period; ++t) {
        SignedDigitCode c{0, std::vector<int>(static_cast<std::size_t>(n)), 2};
        // Solve the digits least significant first; each odd residue forces a nonzero digit.
        std::int64_t rem = m;
        std::int64_t f = 0;
        for (int k = n; k >= 1; --k) {
            const auto idx = static_cast<std::size_t>(k - 1);
            int d = 0;
            if (rem % 2 != 0) {
                d = polarity[idx];
                polarity[idx] = -polarity[idx];
            }
            c.digits[idx] = d;
            f += static_cast<std::int64_t>(d) << (n - k);
            const std::int64_t mod = std::int64_t{1} << (k - 1);
            rem = (((rem - d) / 2) % mod + mod) % mod;
        }
        c.a0 = (f == m) ? 0 : 1;
        seq.push_back(std::move(c));
    }
    return seq;
}

bool satisfies_minimum_count(const CodeSet& set)
{
    return set.size() >= static_cast<std::size_t>(set.ratio.effective_resolution()) + 1;
}

bool satisfies_sign_pairing(const CodeSet& set)
{
    const int n = set.ratio.resolution();
    for (int j = 0; j < n; ++j) {
        bool pos = false;
        bool neg = false;
        for (const auto& c : set.codes) {
            pos = pos || c.digits[static_cast<std::size_t>(j)] > 0;
            neg = neg || c.digits[static_cast<std::size_t>(j)] < 0;
        }
        if (pos != neg) return false;
    }
    return true;
}

}  // namespace sccforge
