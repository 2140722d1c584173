#pragma once

#include "sccforge/error.hpp"
#include "sccforge/numrep.hpp"
#include "sccforge/rational.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sccforge {

struct RcParams {
    double resistance = 0.0;   // ohms
    double capacitance = 0.0;  // farads

    double tau() const { return resistance * capacitance; }
};

struct VoltageCurrent {
    double voltage = 0.0;
    double current = 0.0;
};

// Capacitor at v0 charged through R from a source vs.
VoltageCurrent charging_response(double vs, double v0, const RcParams& rc, double t);

struct CapToCap {
    double v1 = 0.0;
    double v2 = 0.0;
    double current = 0.0;
};

// C1 pre-charged to vs, C2 empty, joined through R at t = 0.
CapToCap cap_to_cap_response(double vs, double c1, double c2, double resistance, double t);

// Energy lost when two capacitors whose voltages differ by dv are joined.
// Pass c2 = infinity for charging from an ideal source.
double redistribution_loss(double c1, double c2, double dv);

struct EnergyBalance {
    double delivered = 0.0;
    double stored = 0.0;
    double dissipated = 0.0;
};

// Capacitor c charged from v0 to vs by an ideal source.
EnergyBalance source_charging_energy(double c, double vs, double v0 = 0.0);

// Hyperbolic cotangent, stable near zero.
double coth(double x);

// Two-phase follower: (coth(b1/2) + coth(b2/2)) / (2 fs C). Throws DomainError for b <= 0.
double req_follower(double fs, double c, double beta1, double beta2);

// Current system singular; `removable` lists the rows to drop first.
class CurrentBalanceError : public Error {
public:
    CurrentBalanceError(const std::string& what, std::vector<std::size_t> removable)
        : Error(what), removable_(std::move(removable))
    {
    }
    const std::vector<std::size_t>& removable() const { return removable_; }

private:
    std::vector<std::size_t> removable_;
};

// Average topology currents I_k / I_o from zero net charge per flying
// capacitor and sum I_k = I_o. Must be uniquely solvable.
std::vector<Rational> current_balance(std::span<const SignedDigitCode> codes);

// Same, with the currents of `eliminated` rows forced to zero. The result
// keeps one entry per input code.
std::vector<Rational> current_balance(std::span<const SignedDigitCode> codes, std::span<const std::size_t> eliminated);

// C_k / C = 1 / (nonzero digits of code k), identical flying capacitors in series.
std::vector<Rational> slot_cap_ratios(std::span<const SignedDigitCode> codes);

struct TopologySlot {
    SignedDigitCode code;
    Rational current_ratio;
    Rational cap_ratio;
    int series_count = 0;
};

// Topologies that remain after sorting by zeros and dropping redundant rows.
struct SlotPlan {
    std::vector<SignedDigitCode> sorted;
    std::vector<std::size_t> eliminated;  // indices into `sorted`
    std::vector<TopologySlot> slots;
};

SlotPlan sorted_slot_plan(const TargetRatio& ratio);

// Slots from an explicit code order; rows found redundant are eliminated.
SlotPlan slot_plan(std::span<const SignedDigitCode> codes);

struct ReqSpec {
    double fs = 100e3;
    double capacitance = 4.7e-6;
    double r_on = 1.2;
    int switches = 4;
    // Connection interval as a fraction of T_s.
    Rational slot_fraction{1, 4};
    std::vector<TopologySlot> slots;

    double period() const { return 1.0 / fs; }
    double loop_resistance() const { return switches * r_on; }
    double slot_duration() const { return period() * to_double(slot_fraction); }
    // t / (R C) for a single capacitor.
    double beta() const { return slot_duration() / (loop_resistance() * capacitance); }
};

// Spec whose slot duration is T_s / |slots| unless `slot_fraction` is given.
ReqSpec make_req_spec(const SlotPlan& plan, double fs, double capacitance, double r_on, int switches,
                      std::optional<Rational> slot_fraction = std::nullopt);

double req_multi(const ReqSpec& spec);

// k such that req_multi -> k * R as beta -> 0.
Rational req_zero_beta_limit(const ReqSpec& spec);

double vo_under_load(double v_trg, double r_eq, double r_o);
// Throws InconsistentMeasurement unless 0 < v_o < v_trg.
double extract_req(double v_trg, double v_o, double r_o);
double efficiency(double v_o, double v_trg);

struct LoadLine {
    double v_trg = 0.0;
    double r_eq = 0.0;
};

// Least squares on R_o / V_o = R_eq / V_TRG + R_o / V_TRG.
LoadLine load_line_fit(std::span<const std::pair<double, double>> points);

struct SweepRow {
    std::string ratio;
    double r_o = 0.0;
    double v_o = 0.0;
    double r_eq = 0.0;
    double eta = 0.0;
};

std::vector<SweepRow> load_sweep(const std::string& ratio, double v_trg, double r_eq, std::span<const double> loads);

// Columns: ratio,R_o,V_o,R_eq,eta
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace sccforge
