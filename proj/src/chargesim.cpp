#include "sccforge/chargesim.hpp"

#include "sccforge/error.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sccforge {

BankState BankState::zero(std::vector<double> flying_caps, double output_cap)
{
    BankState s;
    s.flying_voltages.assign(flying_caps.size(), 0.0);
    s.flying_caps = std::move(flying_caps);
    s.output_cap = output_cap;
    return s;
}

void validate(const BankState& state)
{
    if (state.flying_caps.size() != state.flying_voltages.size()) {
        throw DomainError("flying capacitance and voltage lists differ in length");
    }
    for (double c : state.flying_caps) {
        if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("flying capacitances must be positive");
    }
    if (!(state.output_cap > 0.0) || !std::isfinite(state.output_cap)) {
        throw DomainError("output capacitance must be positive");
    }
    for (double v : state.flying_voltages) {
        if (!std::isfinite(v)) throw DomainError("flying voltages must be finite");
    }
    if (!std::isfinite(state.output_voltage)) throw DomainError("output voltage must be finite");
}

StepResult step(const BankState& state, const SignedDigitCode& code, double vin)
{
    if (code.radix != 2) throw UnsupportedError("charge redistribution is modelled for radix 2 only");
    if (static_cast<std::size_t>(code.resolution()) != state.flying_caps.size()) {
        throw DomainError("code resolution does not match the number of flying capacitors");
    }

    // Unknowns: V_1'..V_n', Vo', Q. A disengaged capacitor has A_j = 0, so its
    // row reduces to V_j' = V_j.
    const auto n = static_cast<Eigen::Index>(state.flying_caps.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 2, n + 2);
    Eigen::VectorXd rhs(n + 2);
    const Eigen::Index vo = n;
    const Eigen::Index q = n + 1;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double a = code.digits[static_cast<std::size_t>(j)];
        m(j, j) = 1.0;
        m(j, q) = a / state.flying_caps[static_cast<std::size_t>(j)];
        rhs(j) = state.flying_voltages[static_cast<std::size_t>(j)];
        m(n + 1, j) = a;
    }
    m(vo, vo) = 1.0;
    m(vo, q) = -1.0 / state.output_cap;
    rhs(vo) = state.output_voltage;
    m(n + 1, vo) = -1.0;
    rhs(n + 1) = -code.a0 * vin;

    const Eigen::VectorXd x = m.partialPivLu().solve(rhs);
    if (!x.allFinite()) throw NumericalError("singular charge-redistribution system");

    StepResult res;
    res.next_state = state;
    for (Eigen::Index j = 0; j < n; ++j) {
        // Copy disengaged voltages instead of taking the solver's round-off.
        if (code.digits[static_cast<std::size_t>(j)] != 0) res.next_state.flying_voltages[static_cast<std::size_t>(j)] = x(j);
    }
    res.next_state.output_voltage = x(vo);
    res.charge = x(q);
    return res;
}

SimTrace run(const BankState& initial, std::span<const SignedDigitCode> sequence, double vin, const RunOptions& options)
{
    if (sequence.empty()) throw DomainError("simulation needs a non-empty topology sequence");
    validate(initial);
    const double tol = options.tol > 0.0 ? options.tol : 1e-9 * std::abs(vin);

    SimTrace trace;
    BankState state = initial;
    std::size_t iteration = 0;
    std::size_t last_move = 0;
    for (std::size_t period = 0; period < options.max_periods; ++period) {
        double worst = 0.0;
        for (const auto& code : sequence) {
            StepResult r = step(state, code, vin);
            double change = std::abs(r.next_state.output_voltage - state.output_voltage);
            for (std::size_t j = 0; j < state.flying_voltages.size(); ++j) {
                change = std::max(change, std::abs(r.next_state.flying_voltages[j] - state.flying_voltages[j]));
            }
            ++iteration;
            if (change >= tol) last_move = iteration;
            worst = std::max(worst, change);
            state = std::move(r.next_state);
            trace.records.push_back({iteration, state.flying_voltages, state.output_voltage, r.charge});
        }
        trace.periods = period + 1;
        if (worst < tol) {
            trace.converged = true;
            break;
        }
    }
    trace.final_state = state;
    if (trace.converged) trace.adjustment_iterations = last_move;
    return trace;
}

std::vector<std::pair<double, double>> charge_locus(const SimTrace& trace, int topologies)
{
    if (topologies < 1) throw DomainError("charge locus needs at least one topology");
    std::vector<std::pair<double, double>> out;
    out.reserve(trace.records.size());
    for (std::size_t k = 0; k < trace.records.size(); ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % static_cast<std::size_t>(topologies)) /
                             static_cast<double>(topologies);
        out.emplace_back(angle, std::abs(trace.records[k].charge));
    }
    return out;
}

void write_trace_csv(std::ostream& out, const SimTrace& trace, std::size_t flying_count)
{
    out << "iteration";
    for (std::size_t j = 1; j <= flying_count; ++j) out << ",V" << j;
    out << ",Vo,Q\n";
    for (const auto& r : trace.records) {
        fmt::print(out, "{}", r.iteration);
        for (double v : r.flying_voltages) fmt::print(out, ",{}", v);
        fmt::print(out, ",{},{}\n", r.output_voltage, r.charge);
    }
}

void write_locus_csv(std::ostream& out, std::span<const std::pair<double, double>> locus)
{
    out << "angle_rad,abs_charge\n";
    for (const auto& [angle, q] : locus) fmt::print(out, "{},{}\n", angle, q);
}

}  // namespace sccforge
