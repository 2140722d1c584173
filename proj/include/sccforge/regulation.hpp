#pragma once

#include "sccforge/numrep.hpp"
#include "sccforge/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sccforge {

struct DitherPlan {
    std::vector<TargetRatio> ratios;
    std::vector<int> weights;  // slots spent on each ratio per dither period

    int period() const;
};

Rational dither_average(const DitherPlan& plan);

inline constexpr int max_dither_period = 4096;

// Best plan over the two lattice points around `target`, smallest period on
// ties, then fewest slots on the upper ratio. Throws DomainError for a target
// outside (0, 1) or max_period outside [1, max_dither_period].
DitherPlan dither_plan(const Rational& target, int n, int max_period);

// "4x 3/8 + 1x 4/8"
std::string to_string(const DitherPlan& plan);

struct ConversionRatio {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;
    bool step_up = false;

    Rational gain() const;
    std::string to_string() const;  // unreduced, "3/8" or "8/4"
};

// Smallest ratio g with g * vin >= vout + dropout: step-down m/2^n first,
// then step-up 2^n/m. Throws DomainError if none qualifies.
ConversionRatio ldo_select_ratio(double vin, double vout, double dropout, int n, bool allow_step_up = true);

double ldo_efficiency_bound(double vout, double dropout);

}  // namespace sccforge
