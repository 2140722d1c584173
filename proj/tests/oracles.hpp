#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's algorithms; they share the value types only.

#include "sccforge/numrep.hpp"
#include "sccforge/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using sccforge::Rational;
using sccforge::SignedDigitCode;

// All codes of m / r^n by recursive digit choice and exact rational value.
inline std::set<std::string> brute_codes(long m, int r, int n)
{
    Rational target(m);
    for (int i = 0; i < n; ++i) target /= r;
    std::set<std::string> out;
    std::vector<int> d(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            for (int a0 = 0; a0 <= 1; ++a0) {
                Rational v = a0;
                Rational w = 1;
                for (int x : d) {
                    w /= r;
                    v += w * x;
                }
                if (v == target) {
                    std::string s = std::to_string(a0);
                    for (int x : d) s += " " + std::to_string(x);
                    out.insert(s);
                }
            }
            return;
        }
        for (int a = 1 - r; a <= r - 1; ++a) {
            d[static_cast<std::size_t>(pos)] = a;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return out;
}

inline std::set<std::string> as_strings(const std::vector<SignedDigitCode>& codes)
{
    std::set<std::string> s;
    for (const auto& c : codes) s.insert(c.to_string());
    return s;
}

inline std::multiset<std::string> as_multiset(const std::vector<SignedDigitCode>& codes)
{
    std::multiset<std::string> s;
    for (const auto& c : codes) s.insert(c.to_string());
    return s;
}

inline std::multiset<std::string> as_multiset(const std::vector<std::string>& codes)
{
    return {codes.begin(), codes.end()};
}

// Determinant by cofactor expansion, for the small matrices in the tests.
inline Rational det(const std::vector<std::vector<Rational>>& a)
{
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    Rational sum = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<Rational>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Rational> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        const Rational term = a[0][c] * det(minor);
        sum += (c % 2 == 0) ? term : Rational(-term);
    }
    return sum;
}

// Rank as the largest k with a nonzero k x k minor.
inline std::size_t rank_by_minors(const std::vector<std::vector<Rational>>& a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t k = std::min(rows, cols); k > 0; --k) {
        std::vector<bool> rsel(rows, false);
        std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            std::vector<bool> csel(cols, false);
            std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
            do {
                std::vector<std::vector<Rational>> sub;
                for (std::size_t r = 0; r < rows; ++r) {
                    if (!rsel[r]) continue;
                    std::vector<Rational> row;
                    for (std::size_t c = 0; c < cols; ++c)
                        if (csel[c]) row.push_back(a[r][c]);
                    sub.push_back(row);
                }
                if (det(sub) != 0) return k;
            } while (std::prev_permutation(csel.begin(), csel.end()));
        } while (std::prev_permutation(rsel.begin(), rsel.end()));
    }
    return 0;
}

// Zero-state step when only loop elements are engaged: the loop sees the
// source across the series string 1/C_j (engaged) + 1/C_o.
struct ZeroStep {
    double q;
    std::vector<double> v;
    double vo;
};

inline ZeroStep zero_state_step(const SignedDigitCode& code, const std::vector<double>& caps, double co, double vin)
{
    double inv = 1.0 / co;
    for (std::size_t j = 0; j < caps.size(); ++j)
        if (code.digits[j] != 0) inv += 1.0 / caps[j];
    ZeroStep s;
    s.q = code.a0 * vin / inv;
    for (std::size_t j = 0; j < caps.size(); ++j) s.v.push_back(-code.digits[j] * s.q / caps[j]);
    s.vo = s.q / co;
    return s;
}

// Closest average to t over any multiset of lattice ratios k / 2^n with at
// most `max_period` members, by trying every pair of ratios and every split.
inline Rational best_dither_error(const Rational& t, int n, int max_period)
{
    const long den = 1L << n;
    Rational best = -1;
    for (long a = 1; a < den; ++a) {
        for (long b = a; b < den; ++b) {
            for (int p = 1; p <= max_period; ++p) {
                for (int wa = 0; wa <= p; ++wa) {
                    const Rational avg = Rational(wa * a + (p - wa) * b) / Rational(p * den);
                    const Rational err = abs(avg - t);
                    if (best < 0 || err < best) best = err;
                }
            }
        }
    }
    return best;
}

// Full scan of the ratio lattice for the smallest adequate gain.
inline Rational ldo_scan(double vin, double need, int n, bool step_up)
{
    const long den = 1L << n;
    std::vector<Rational> gains;
    for (long m = 1; m < den; ++m) {
        gains.emplace_back(Rational(m) / den);
        if (step_up) gains.emplace_back(Rational(den) / m);
    }
    std::sort(gains.begin(), gains.end());
    for (const auto& g : gains)
        if (g.get_d() * vin >= need * (1 - 1e-12)) return g;
    return -1;
}

}  // namespace oracle
