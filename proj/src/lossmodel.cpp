#include "sccforge/lossmodel.hpp"

#include "sccforge/linsolve.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace sccforge {

VoltageCurrent charging_response(double vs, double v0, const RcParams& rc, double t)
{
    if (t < 0.0) throw DomainError("time must be non-negative");
    if (!(rc.tau() > 0.0)) throw DomainError("RC time constant must be positive");
    const double e = std::exp(-t / rc.tau());
    return {v0 * e + vs * (1.0 - e), (vs - v0) / rc.resistance * e};
}

CapToCap cap_to_cap_response(double vs, double c1, double c2, double resistance, double t)
{
    if (t < 0.0) throw DomainError("time must be non-negative");
    if (!(c1 > 0.0) || !(c2 > 0.0) || !(resistance > 0.0)) throw DomainError("C1, C2 and R must be positive");
    const double tau = resistance * c1 * c2 / (c1 + c2);
    const double e = std::exp(-t / tau);
    const double shared = c1 * vs / (c1 + c2);
    return {shared + c2 * vs / (c1 + c2) * e, shared * (1.0 - e), vs / resistance * e};
}

double redistribution_loss(double c1, double c2, double dv)
{
    if (std::isinf(c2)) return c1 * dv * dv / 2.0;
    return c1 * c2 / (c1 + c2) * dv * dv / 2.0;
}

EnergyBalance source_charging_energy(double c, double vs, double v0)
{
    return {c * vs * (vs - v0), c * (vs * vs - v0 * v0) / 2.0, c * (vs - v0) * (vs - v0) / 2.0};
}

double coth(double x)
{
    const double ax = std::abs(x);
    if (ax == 0.0) return std::copysign(std::numeric_limits<double>::infinity(), x);
    double v;
    if (ax < 1e-6) {
        v = 1.0 / ax + ax / 3.0;
    } else {
        const double e = std::exp(-2.0 * ax);
        v = (1.0 + e) / (1.0 - e);
    }
    return std::copysign(v, x);
}

double req_follower(double fs, double c, double beta1, double beta2)
{
    if (!(beta1 > 0.0) || !(beta2 > 0.0)) throw DomainError("beta must be positive");
    if (!(fs > 0.0) || !(c > 0.0)) throw DomainError("fs and C must be positive");
    return (coth(beta1 / 2.0) + coth(beta2 / 2.0)) / (2.0 * fs * c);
}

std::vector<Rational> current_balance(std::span<const SignedDigitCode> codes)
{
    if (codes.empty()) throw DomainError("current balance needs at least one code");
    const std::size_t w = codes.size();
    const std::size_t n = static_cast<std::size_t>(codes.front().resolution());

    std::vector<std::vector<Rational>> rows;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> row(w);
        bool used = false;
        for (std::size_t k = 0; k < w; ++k) {
            const int a = codes[k].digits.at(j);
            row[k] = (a > 0) - (a < 0);
            used = used || a != 0;
        }
        if (used) rows.push_back(std::move(row));
    }
    rows.emplace_back(w, Rational(1));

    RationalMatrix m(rows.size(), w);
    std::vector<Rational> rhs(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t k = 0; k < w; ++k) m(r, k) = rows[r][k];
    rhs.back() = 1;

    const std::size_t ra = rank(m);
    const std::size_t rb = rank(m.augmented(rhs));
    if (ra != w || rb != ra) {
        std::vector<std::size_t> removable = find_redundant(build_system(codes));
        std::string list;
        for (auto i : removable) list += (list.empty() ? "" : ", ") + std::to_string(i + 1);
        throw CurrentBalanceError("current system is singular (rank " + std::to_string(ra) + " for " +
                                      std::to_string(w) + " currents); eliminate rows [" + list + "]",
                                  std::move(removable));
    }
    const RrefResult red = rref(m.augmented(rhs));
    std::vector<Rational> x(w);
    for (std::size_t i = 0; i < w; ++i) x[red.pivot_columns[i]] = red.reduced(i, w);
    return x;
}

std::vector<Rational> current_balance(std::span<const SignedDigitCode> codes, std::span<const std::size_t> eliminated)
{
    std::vector<SignedDigitCode> kept;
    std::vector<std::size_t> where;
    for (std::size_t k = 0; k < codes.size(); ++k) {
        if (std::find(eliminated.begin(), eliminated.end(), k) != eliminated.end()) continue;
        kept.push_back(codes[k]);
        where.push_back(k);
    }
    const std::vector<Rational> part = current_balance(kept);
    std::vector<Rational> out(codes.size(), Rational(0));
    for (std::size_t i = 0; i < where.size(); ++i) out[where[i]] = part[i];
    return out;
}

std::vector<Rational> slot_cap_ratios(std::span<const SignedDigitCode> codes)
{
    std::vector<Rational> out;
    out.reserve(codes.size());
    for (const auto& c : codes) {
        const int s = c.nonzero_count();
        if (s == 0) throw DomainError("code {" + c.to_string() + "} connects no flying capacitor");
        out.emplace_back(1, s);
    }
    return out;
}

SlotPlan slot_plan(std::span<const SignedDigitCode> codes)
{
    SlotPlan plan;
    plan.sorted.assign(codes.begin(), codes.end());
    plan.eliminated = find_redundant(build_system(codes));

    std::vector<SignedDigitCode> kept;
    for (std::size_t k = 0; k < codes.size(); ++k) {
        if (std::find(plan.eliminated.begin(), plan.eliminated.end(), k) == plan.eliminated.end()) kept.push_back(codes[k]);
    }
    const auto currents = current_balance(kept);
    const auto caps = slot_cap_ratios(kept);
    for (std::size_t k = 0; k < kept.size(); ++k) {
        plan.slots.push_back({kept[k], currents[k], caps[k], kept[k].nonzero_count()});
    }
    return plan;
}

SlotPlan sorted_slot_plan(const TargetRatio& ratio)
{
    const CodeSet set = spawn_codes(ratio);
    const auto sorted = sort_codes_by_zeros(set.codes);
    return slot_plan(sorted);
}

ReqSpec make_req_spec(const SlotPlan& plan, double fs, double capacitance, double r_on, int switches,
                      std::optional<Rational> slot_fraction)
{
    if (!(fs > 0.0) || !(capacitance > 0.0) || !(r_on > 0.0) || switches < 1) {
        throw DomainError("fs, C, r_on and switch count must be positive");
    }
    if (plan.slots.empty()) throw DomainError("slot plan is empty");
    ReqSpec spec;
    spec.fs = fs;
    spec.capacitance = capacitance;
    spec.r_on = r_on;
    spec.switches = switches;
    spec.slots = plan.slots;
    spec.slot_fraction = slot_fraction.value_or(Rational(1) / static_cast<long>(plan.slots.size()));
    if (spec.slot_fraction <= 0 || spec.slot_fraction > 1) throw DomainError("slot duration must lie in (0, T_s]");
    return spec;
}

double req_multi(const ReqSpec& spec)
{
    const double ts = spec.period();
    const double beta = spec.beta();
    double sum = 0.0;
    for (const auto& s : spec.slots) {
        const double i = to_double(s.current_ratio);
        const double ck = spec.capacitance * to_double(s.cap_ratio);
        sum += i * i * ts / (2.0 * ck) * coth(s.series_count * beta / 2.0);
    }
    return sum;
}

Rational req_zero_beta_limit(const ReqSpec& spec)
{
    Rational sq = 0;
    for (const auto& s : spec.slots) sq += s.current_ratio * s.current_ratio;
    return sq / spec.slot_fraction;
}

double vo_under_load(double v_trg, double r_eq, double r_o)
{
    if (!(r_o > 0.0)) throw DomainError("load resistance must be positive");
    if (std::isinf(r_o)) return v_trg;
    return v_trg * r_o / (r_eq + r_o);
}

double extract_req(double v_trg, double v_o, double r_o)
{
    if (!(r_o > 0.0)) throw DomainError("load resistance must be positive");
    if (!(v_o > 0.0) || !(v_o < v_trg)) {
        throw InconsistentMeasurement(fmt::format("V_o = {} V is not inside (0, V_TRG = {} V)", v_o, v_trg));
    }
    return (v_trg / v_o - 1.0) * r_o;
}

double efficiency(double v_o, double v_trg)
{
    if (!(v_trg > 0.0)) throw DomainError("target voltage must be positive");
    return v_o / v_trg;
}

LoadLine load_line_fit(std::span<const std::pair<double, double>> points)
{
    if (points.size() < 2) throw FitError("load-line fit needs at least two points");
    const double n = static_cast<double>(points.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [r_o, v_o] : points) {
        if (!(v_o > 0.0)) throw FitError("output voltages must be positive");
        mx += r_o;
        my += r_o / v_o;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [r_o, v_o] : points) {
        sxx += (r_o - mx) * (r_o - mx);
        sxy += (r_o - mx) * (r_o / v_o - my);
    }
    if (!(sxx > 0.0)) throw FitError("load resistances must not all be equal");
    const double a = sxy / sxx;
    const double b = my - a * mx;
    if (!(a > 0.0)) throw FitError("fitted slope is not positive");
    return {1.0 / a, b / a};
}

std::vector<SweepRow> load_sweep(const std::string& ratio, double v_trg, double r_eq, std::span<const double> loads)
{
    std::vector<SweepRow> rows;
    for (double r_o : loads) {
        const double v_o = vo_under_load(v_trg, r_eq, r_o);
        rows.push_back({ratio, r_o, v_o, r_eq, efficiency(v_o, v_trg)});
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows)
{
    out << "ratio,R_o,V_o,R_eq,eta\n";
    for (const auto& r : rows) fmt::print(out, "{},{},{},{},{}\n", r.ratio, r.r_o, r.v_o, r.r_eq, r.eta);
}

}  // namespace sccforge
