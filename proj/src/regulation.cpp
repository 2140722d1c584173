#include "sccforge/regulation.hpp"

#include "sccforge/error.hpp"

#include <numeric>

namespace sccforge {

int DitherPlan::period() const
{
    return std::accumulate(weights.begin(), weights.end(), 0);
}

Rational dither_average(const DitherPlan& plan)
{
    if (plan.ratios.size() != plan.weights.size() || plan.period() < 1) {
        throw DomainError("dither plan needs matching ratios and positive weights");
    }
    Rational sum = 0;
    for (std::size_t i = 0; i < plan.ratios.size(); ++i) sum += plan.ratios[i].value() * plan.weights[i];
    return sum / plan.period();
}

DitherPlan dither_plan(const Rational& target, int n, int max_period)
{
    if (target <= 0 || target >= 1) throw DomainError("dither target must lie in (0, 1)");
    if (max_period < 1 || max_period > max_dither_period) {
        throw DomainError("max period must lie in [1, " + std::to_string(max_dither_period) + "]");
    }
    const std::int64_t den = checked_power(2, n);
    const Rational scaled = target * den;
    BigInt floor_q;
    mpz_fdiv_q(floor_q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    const std::int64_t lo = floor_q.get_si();

    // Exact lattice hit, or no neighbour on one side.
    if (scaled == lo) return {{TargetRatio::make(lo, 2, n)}, {1}};
    if (lo == 0) return {{TargetRatio::make(1, 2, n)}, {1}};
    if (lo == den - 1) return {{TargetRatio::make(den - 1, 2, n)}, {1}};

    // The average of p slots with w on the upper ratio is (p*lo + w) / (p*den).
    Rational best_err = -1;
    int best_p = 1;
    int best_w = 0;
    for (int p = 1; p <= max_period; ++p) {
        for (int w = 0; w <= p; ++w) {
            const Rational avg = Rational(p * lo + w) / (Rational(p) * den);
            const Rational err = abs(avg - target);
            if (best_err < 0 || err < best_err) {
                best_err = err;
                best_p = p;
                best_w = w;
            }
        }
        if (best_err == 0) break;
    }

    DitherPlan plan;
    if (best_p - best_w > 0) {
        plan.ratios.push_back(TargetRatio::make(lo, 2, n));
        plan.weights.push_back(best_p - best_w);
    }
    if (best_w > 0) {
        plan.ratios.push_back(TargetRatio::make(lo + 1, 2, n));
        plan.weights.push_back(best_w);
    }
    return plan;
}

std::string to_string(const DitherPlan& plan)
{
    std::string s;
    for (std::size_t i = 0; i < plan.ratios.size(); ++i) {
        if (i) s += " + ";
        s += std::to_string(plan.weights[i]) + "x " + plan.ratios[i].to_string();
    }
    return s;
}

Rational ConversionRatio::gain() const
{
    Rational g(BigInt(std::to_string(numerator)), BigInt(std::to_string(denominator)));
    g.canonicalize();
    return g;
}

std::string ConversionRatio::to_string() const
{
    return std::to_string(numerator) + "/" + std::to_string(denominator);
}

ConversionRatio ldo_select_ratio(double vin, double vout, double dropout, int n, bool allow_step_up)
{
    if (!(vin > 0.0) || !(vout > 0.0)) throw DomainError("vin and vout must be positive");
    if (dropout < 0.0) throw DomainError("dropout must be non-negative");
    const std::int64_t den = checked_power(2, n);
    const double need = vout + dropout;
    // Tolerates the rounding in sums like 3.3 + 0.3.
    const double slack = 1e-12 * need;

    for (std::int64_t m = 1; m < den; ++m) {
        if (static_cast<double>(m) / static_cast<double>(den) * vin >= need - slack) return {m, den, false};
    }
    if (allow_step_up) {
        for (std::int64_t m = den - 1; m >= 1; --m) {
            if (static_cast<double>(den) / static_cast<double>(m) * vin >= need - slack) return {den, m, true};
        }
    }
    throw DomainError("no conversion ratio reaches " + std::to_string(need) + " V from " + std::to_string(vin) + " V");
}

double ldo_efficiency_bound(double vout, double dropout)
{
    if (!(vout > 0.0) || dropout < 0.0) throw DomainError("vout must be positive and dropout non-negative");
    return vout / (vout + dropout);
}

}  // namespace sccforge
