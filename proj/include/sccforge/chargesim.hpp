#pragma once

#include "sccforge/numrep.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace sccforge {

struct BankState {
    std::vector<double> flying_caps;      // farads
    double output_cap = 0.0;              // farads
    std::vector<double> flying_voltages;  // volts, may go negative
    double output_voltage = 0.0;

    static BankState zero(std::vector<double> flying_caps, double output_cap);
};

// Throws DomainError on non-positive capacitances, size mismatch or non-finite voltages.
void validate(const BankState& state);

struct StepResult {
    BankState next_state;
    double charge = 0.0;  // pushed around the loop into the output capacitor
};

// One instantaneous charge redistribution for the topology of `code`.
StepResult step(const BankState& state, const SignedDigitCode& code, double vin);

struct TraceRecord {
    std::size_t iteration = 0;  // 1-based step count
    std::vector<double> flying_voltages;
    double output_voltage = 0.0;
    double charge = 0.0;
};

struct SimTrace {
    std::vector<TraceRecord> records;
    BankState final_state;
    bool converged = false;
    std::size_t periods = 0;
    // Steps up to and including the last one that moved any voltage by tol or more.
    std::optional<std::size_t> adjustment_iterations;
};

struct RunOptions {
    std::size_t max_periods = 500;
    // Volts. Zero selects 1e-9 * vin.
    double tol = 0.0;
};

// Applies the sequence cyclically until a whole period changes no voltage
// by tol or more, or max_periods is used up (converged = false).
SimTrace run(const BankState& initial, std::span<const SignedDigitCode> sequence, double vin,
             const RunOptions& options = {});

// (angle, |Q|) per step; step k sits on axis k mod topologies.
std::vector<std::pair<double, double>> charge_locus(const SimTrace& trace, int topologies);

// Columns: iteration,V1..Vn,Vo,Q
void write_trace_csv(std::ostream& out, const SimTrace& trace, std::size_t flying_count);
// Columns: angle_rad,abs_charge
void write_locus_csv(std::ostream& out, std::span<const std::pair<double, double>> locus);

}  // namespace sccforge
