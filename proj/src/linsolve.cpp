#include "sccforge/linsolve.hpp"

#include "sccforge/topology.hpp"

#include <algorithm>

namespace sccforge {

std::vector<std::string> KvlSystem::labels() const
{
    std::vector<std::string> out;
    for (int j = 1; j <= resolution; ++j) out.push_back("V" + std::to_string(j));
    out.emplace_back("Vo");
    return out;
}

KvlSystem build_system(std::span<const SignedDigitCode> codes)
{
    if (codes.empty()) throw DomainError("cannot build a KVL system from an empty code list");
    const int r = codes.front().radix;
    const int n = codes.front().resolution();
    for (const auto& c : codes) {
        if (c.radix != r || c.resolution() != n) throw DomainError("codes mix radix or resolution");
        validate(c);
    }

    KvlSystem s;
    s.radix = r;
    s.resolution = n;
    s.codes.assign(codes.begin(), codes.end());
    s.a = RationalMatrix(codes.size(), static_cast<std::size_t>(n) + 1);
    s.b.resize(codes.size());
    for (std::size_t k = 0; k < codes.size(); ++k) {
        const KvlRow row = kvl_row(codes[k]);
        for (std::size_t c = 0; c < row.coefficients.size(); ++c) s.a(k, c) = row.coefficients[c];
        s.b[k] = row.rhs;
    }
    return s;
}

KvlSystem build_system(const CodeSet& set)
{
    return build_system(std::span<const SignedDigitCode>(set.codes));
}

SolvabilityReport check_solvable(const KvlSystem& system)
{
    SolvabilityReport r;
    r.rank_a = rank(system.a);
    r.rank_augmented = rank(system.a.augmented(system.b));
    r.unknowns = system.unknowns();
    r.unique = r.rank_a == r.rank_augmented && r.rank_a == r.unknowns;
    return r;
}

std::vector<Rational> solve_unique(const KvlSystem& system)
{
    const SolvabilityReport report = check_solvable(system);
    if (!report.unique) {
        const char* why = report.rank_a != report.rank_augmented ? "inconsistent" : "underdetermined";
        throw SolvabilityError(std::string("KVL system is ") + why + ": rank(A) = " + std::to_string(report.rank_a) +
                                   ", rank([A|b]) = " + std::to_string(report.rank_augmented) +
                                   ", unknowns = " + std::to_string(report.unknowns),
                               report);
    }
    const RrefResult red = rref(system.a.augmented(system.b));
    const std::size_t n = system.unknowns();
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[red.pivot_columns[i]] = red.reduced(i, n);
    return x;
}

RedundancyReport analyze_redundancy(const KvlSystem& system)
{
    const RrefResult red = rref(system.a.transposed());
    RedundancyReport out;
    out.column_sums.assign(red.reduced.cols(), Rational(0));
    for (std::size_t c = 0; c < red.reduced.cols(); ++c) {
        for (std::size_t r = 0; r < red.reduced.rows(); ++r) out.column_sums[c] += abs(red.reduced(r, c));
    }
    std::size_t p = 0;
    for (std::size_t c = 0; c < red.reduced.cols(); ++c) {
        if (p < red.pivot_columns.size() && red.pivot_columns[p] == c) {
            ++p;
            continue;
        }
        out.removable.push_back(c);
    }
    return out;
}

std::vector<std::size_t> find_redundant(const KvlSystem& system)
{
    return analyze_redundancy(system).removable;
}

KvlSystem remove_rows(const KvlSystem& system, std::span<const std::size_t> rows)
{
    KvlSystem out = system;
    out.a = system.a.without_rows(rows);
    out.b.clear();
    out.codes.clear();
    for (std::size_t k = 0; k < system.equations(); ++k) {
        if (std::find(rows.begin(), rows.end(), k) != rows.end()) continue;
        out.b.push_back(system.b[k]);
        out.codes.push_back(system.codes[k]);
    }
    return out;
}

std::vector<SignedDigitCode> sort_codes_by_zeros(std::span<const SignedDigitCode> codes)
{
    std::vector<SignedDigitCode> out(codes.begin(), codes.end());
    std::stable_sort(out.begin(), out.end(), [](const SignedDigitCode& x, const SignedDigitCode& y) {
        if (x.zero_count() != y.zero_count()) return x.zero_count() > y.zero_count();
        return canonical_less(x, y);
    });
    return out;
}

KvlSystem step_up(const KvlSystem& system)
{
    KvlSystem out = system;
    const std::size_t oc = system.unknowns() - 1;
    for (std::size_t k = 0; k < system.equations(); ++k) {
        out.a(k, oc) = -system.b[k];
        out.b[k] = -system.a(k, oc);
    }
    out.step_up = !system.step_up;
    return out;
}

std::string to_text(const KvlSystem& system)
{
    std::vector<std::vector<std::string>> cells(system.equations());
    std::size_t width = 1;
    for (std::size_t r = 0; r < system.equations(); ++r) {
        for (std::size_t c = 0; c < system.unknowns(); ++c) cells[r].push_back(to_string(system.a(r, c)));
        cells[r].push_back(to_string(system.b[r]));
        for (const auto& s : cells[r]) width = std::max(width, s.size());
    }
    std::string out;
    for (const auto& row : cells) {
        out += "[";
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c + 1 == row.size()) out += " |";
            out += " " + std::string(width - row[c].size(), ' ') + row[c];
        }
        out += " ]\n";
    }
    return out;
}

}  // namespace sccforge
