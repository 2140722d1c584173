#include "reference_tables.hpp"

#include "sccforge/error.hpp"
#include "sccforge/linsolve.hpp"
#include "sccforge/lossmodel.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace sccforge;

namespace {

constexpr double fs = 100e3;
constexpr double cap = 4.7e-6;
constexpr double r_on = 1.2;
constexpr double loop_r = 4 * r_on;

std::vector<SignedDigitCode> codes_of(const std::vector<std::string>& text)
{
    std::vector<SignedDigitCode> out;
    for (const auto& t : text) out.push_back(parse_code(t, 2));
    return out;
}

std::vector<std::string> fractions(const std::vector<Rational>& xs)
{
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

ReqSpec table_spec(long m, std::optional<Rational> slot = std::nullopt)
{
    return make_req_spec(sorted_slot_plan(TargetRatio::make(m, 2, 3)), fs, cap, r_on, 4, slot);
}

// Closed-form expressions for the sorted, eliminated slot sets.
double closed_form(long m, double beta)
{
    const double ts = 1.0 / fs;
    switch (std::min(m, 8 - m)) {
    case 1: return ts / (64 * cap) * (8 * coth(beta / 2) + 4 * coth(beta) + 3 * coth(1.5 * beta));
    case 2: return ts / (8 * cap) * (coth(beta / 2) + coth(beta));
    case 3: return ts / (32 * cap) * (7 * coth(beta) + 3 * coth(1.5 * beta));
    default: return ts / (4 * cap) * coth(beta / 2);
    }
}

}  // namespace

TEST_CASE("single capacitor charging")
{
    const RcParams rc{10.0, 1e-6};
    const auto a = charging_response(5.0, 1.0, rc, 0.0);
    CHECK(a.voltage == doctest::Approx(1.0));
    CHECK(a.current == doctest::Approx(0.4));
    const auto b = charging_response(5.0, 1.0, rc, 1.0);
    CHECK(b.voltage == doctest::Approx(5.0));
    CHECK(b.current == doctest::Approx(0.0));
    const auto c = charging_response(5.0, 1.0, rc, 5 * rc.tau());
    CHECK(std::abs(c.voltage - 5.0) < 0.01 * 4.0);
    CHECK_THROWS_AS(charging_response(5.0, 1.0, rc, -1.0), DomainError);
}

TEST_CASE("capacitor to capacitor transfer")
{
    const auto inf = cap_to_cap_response(6.0, 2e-6, 1e-6, 5.0, 1.0);
    CHECK(inf.v1 == doctest::Approx(4.0));
    CHECK(inf.v2 == doctest::Approx(4.0));
    CHECK(inf.current == doctest::Approx(0.0));
    const auto eq = cap_to_cap_response(6.0, 1e-6, 1e-6, 5.0, 1.0);
    CHECK(eq.v1 == doctest::Approx(3.0));
    const auto start = cap_to_cap_response(6.0, 2e-6, 1e-6, 5.0, 0.0);
    CHECK(start.current == doctest::Approx(6.0 / 5.0));
    CHECK(start.v1 == doctest::Approx(6.0));
    CHECK(start.v2 == doctest::Approx(0.0));
    // The current is always the voltage difference over R.
    const auto mid = cap_to_cap_response(6.0, 2e-6, 1e-6, 5.0, 2e-6);
    CHECK(mid.current == doctest::Approx((mid.v1 - mid.v2) / 5.0));
}

TEST_CASE("redistribution and source-charging losses")
{
    CHECK(redistribution_loss(1e-6, 1e-6, 0.0) == 0.0);
    const double c = 2e-6;
    const double vs = 3.0;
    CHECK(redistribution_loss(c, c, vs) == doctest::Approx(c * vs * vs / 4));
    CHECK(redistribution_loss(c, c, vs) == doctest::Approx(0.5 * (c * vs * vs / 2)));
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(redistribution_loss(c, inf, vs) == doctest::Approx(c * vs * vs / 2));

    const auto e = source_charging_energy(c, vs);
    CHECK(e.dissipated == doctest::Approx(e.stored));
    CHECK(e.delivered == doctest::Approx(c * vs * vs));
    // Binary-exact operands make the bookkeeping exact.
    for (double v0 : {0.0, 0.5, 1.25}) {
        const auto x = source_charging_energy(0.5, 4.0, v0);
        CHECK(x.delivered == x.stored + x.dissipated);
    }
}

TEST_CASE("coth")
{
    for (double x : {1e-3, 0.1, 0.5, 1.0, 3.0, 10.0}) CHECK(coth(x) == doctest::Approx(1.0 / std::tanh(x)).epsilon(1e-12));
    CHECK(coth(1e-8) == doctest::Approx(1e8));
    CHECK(coth(-2.0) == doctest::Approx(-coth(2.0)));
    CHECK(coth(50.0) == 1.0);
}

TEST_CASE("follower equivalent resistance limits")
{
    const double r = 2.0;
    const double c = 1e-6;
    auto fs_for = [&](double beta) { return 1.0 / (2 * r * c * beta); };
    const double small = req_follower(fs_for(1e-3), c, 1e-3, 1e-3);
    CHECK(std::abs(small / (4 * r) - 1.0) < 0.01);
    const double large = req_follower(fs_for(20.0), c, 20.0, 20.0);
    CHECK(std::abs(large * fs_for(20.0) * c - 1.0) < 0.001);
    CHECK(req_follower(1e5, c, 0.7, 0.7) == doctest::Approx(coth(0.35) / (1e5 * c)));
    CHECK_THROWS_AS(req_follower(1e5, c, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(req_follower(1e5, c, 1.0, -1.0), DomainError);
}

TEST_CASE("current and capacitance ratios match the reference table")
{
    for (const auto& col : reftables::current_ratios) {
        CAPTURE(col.m);
        const auto plan = sorted_slot_plan(TargetRatio::make(col.m, 2, 3));
        std::vector<Rational> cur;
        std::vector<Rational> caps;
        for (const auto& s : plan.slots) {
            cur.push_back(s.current_ratio);
            caps.push_back(s.cap_ratio);
        }
        CHECK(fractions(cur) == col.currents);
        CHECK(fractions(caps) == col.caps);
    }
}

TEST_CASE("current balance on explicit code lists")
{
    const auto sorted = sort_codes_by_zeros(spawn_codes(TargetRatio::make(3, 2, 3)).codes);
    const std::vector<SignedDigitCode> four(sorted.begin(), sorted.begin() + 4);
    CHECK(fractions(current_balance(four)) == std::vector<std::string>{"1/8", "3/8", "1/4", "1/4"});
    CHECK(fractions(slot_cap_ratios(four)) == std::vector<std::string>{"1/2", "1/2", "1/2", "1/3"});

    const auto unsorted = codes_of(reftables::order_38);
    const std::vector<std::size_t> drop{3};
    CHECK(fractions(current_balance(unsorted, drop)) == std::vector<std::string>{"-1/8", "3/8", "1/2", "0", "1/4"});

    CHECK(fractions(current_balance(codes_of({"1 -1 0 0", "0 1 0 0"}))) == std::vector<std::string>{"1/2", "1/2"});
    CHECK(fractions(slot_cap_ratios(codes_of({"0 0 0 1"}))) == std::vector<std::string>{"1"});
}

TEST_CASE("current balance residuals are exactly zero")
{
    for (long m = 1; m < 16; ++m) {
        const auto plan = sorted_slot_plan(TargetRatio::make(m, 2, 4));
        Rational total = 0;
        for (const auto& s : plan.slots) total += s.current_ratio;
        CHECK(total == 1);
        for (std::size_t j = 0; j < 4; ++j) {
            Rational net = 0;
            for (const auto& s : plan.slots) net += s.current_ratio * ((s.code.digits[j] > 0) - (s.code.digits[j] < 0));
            CHECK(net == 0);
        }
    }
}

TEST_CASE("singular current systems name the rows to drop")
{
    try {
        current_balance(codes_of(reftables::order_38));
        FAIL("expected a current balance error");
    } catch (const CurrentBalanceError& e) {
        CHECK(e.removable() == std::vector<std::size_t>{3});
    }
    CHECK_THROWS_AS(slot_cap_ratios(codes_of({"1 0 0 0"})), DomainError);
}

TEST_CASE("equivalent resistance table with one slot per surviving topology")
{
    for (const auto& row : reftables::req_table) {
        CAPTURE(row.m);
        const ReqSpec spec = table_spec(row.m);
        CHECK(spec.slot_fraction == Rational(1) / static_cast<long>(spec.slots.size()));
        const double req = req_multi(spec);
        CHECK(std::abs(req - row.ohms) <= row.tolerance);
        CHECK(req == doctest::Approx(closed_form(row.m, spec.beta())).epsilon(1e-12));
        CHECK(req_zero_beta_limit(spec) == parse_rational(row.limit));
    }
}

TEST_CASE("a literal quarter-period slot changes the three- and two-slot ratios")
{
    const Rational quarter(1, 4);
    CHECK(req_multi(table_spec(2, quarter)) == doctest::Approx(7.2147).epsilon(1e-4));
    CHECK(req_zero_beta_limit(table_spec(2, quarter)) == Rational(3, 2));
    CHECK(req_multi(table_spec(4, quarter)) == doctest::Approx(9.6098).epsilon(1e-4));
    CHECK(req_zero_beta_limit(table_spec(4, quarter)) == 2);
    // The four-slot ratios are the same either way.
    CHECK(req_multi(table_spec(3, quarter)) == req_multi(table_spec(3)));
}

TEST_CASE("worked example for the unsorted 3/8 order")
{
    const SlotPlan plan = slot_plan(codes_of(reftables::order_38));
    CHECK(plan.eliminated == std::vector<std::size_t>{3});
    const ReqSpec spec = make_req_spec(plan, fs, cap, r_on, 4, Rational(1, 4));
    const double beta = spec.beta();
    const double expect = 5.0 / 64 / (fs * cap) * (3 * coth(1.5 * beta) + 4 * coth(beta));
    CHECK(req_multi(spec) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(req_multi(spec) == doctest::Approx(5.0 / 16 * loop_r * beta * (3 * coth(1.5 * beta) + 4 * coth(beta))));
    CHECK(req_zero_beta_limit(spec) == Rational(15, 8));
}

TEST_CASE("complementary ratios share the equivalent resistance")
{
    for (long m = 1; m <= 3; ++m) CHECK(req_multi(table_spec(m)) == doctest::Approx(req_multi(table_spec(8 - m))).epsilon(1e-12));
    for (long m = 1; m < 8; ++m) CHECK(req_zero_beta_limit(table_spec(m)) == req_zero_beta_limit(table_spec(8 - m)));
}

TEST_CASE("equivalent resistance decreases with C and t and stays above its limit")
{
    for (long m = 1; m < 8; ++m) {
        const auto plan = sorted_slot_plan(TargetRatio::make(m, 2, 3));
        double prev = std::numeric_limits<double>::infinity();
        for (double c : {1e-6, 2e-6, 4.7e-6, 10e-6, 47e-6}) {
            const auto spec = make_req_spec(plan, fs, c, r_on, 4);
            const double req = req_multi(spec);
            CHECK(req < prev);
            CHECK(req >= to_double(req_zero_beta_limit(spec)) * loop_r);
            prev = req;
        }
        prev = std::numeric_limits<double>::infinity();
        for (long k : {16L, 8L, 6L, 4L, 2L}) {
            const auto spec = make_req_spec(plan, fs, cap, r_on, 4, Rational(1, k));
            const double req = req_multi(spec);
            CHECK(req < prev);
            prev = req;
        }
    }
}

TEST_CASE("zero-beta limit is approached for tiny beta")
{
    const auto plan = sorted_slot_plan(TargetRatio::make(3, 2, 3));
    const auto spec = make_req_spec(plan, 1e9, 1e-3, 1.0, 4);
    REQUIRE(spec.beta() < 1e-6);
    CHECK(req_multi(spec) == doctest::Approx(to_double(req_zero_beta_limit(spec)) * spec.loop_resistance()).epsilon(1e-6));
}

TEST_CASE("load divider relations")
{
    CHECK(extract_req(4.0, 3.816, 100.0) == doctest::Approx(4.822).epsilon(0.001 / 4.822));
    CHECK(vo_under_load(4.0, 4.82, std::numeric_limits<double>::infinity()) == 4.0);
    for (double x : {0.5, 4.82, 20.0}) {
        for (double ro : {10.0, 100.0, 1e4}) CHECK(extract_req(3.0, vo_under_load(3.0, x, ro), ro) == doctest::Approx(x).epsilon(1e-12));
    }
    CHECK(efficiency(3.0, 4.0) == doctest::Approx(0.75));
    CHECK_THROWS_AS(extract_req(4.0, 4.0, 100.0), InconsistentMeasurement);
    CHECK_THROWS_AS(extract_req(4.0, 4.5, 100.0), InconsistentMeasurement);
    CHECK_THROWS_AS(extract_req(4.0, 0.0, 100.0), InconsistentMeasurement);
    CHECK_THROWS_AS(vo_under_load(4.0, 1.0, 0.0), DomainError);
}

TEST_CASE("load-line fit")
{
    std::vector<std::pair<double, double>> pts;
    for (double ro = 100; ro <= 500; ro += 100) pts.emplace_back(ro, vo_under_load(3.0, 5.43, ro));
    const auto fit = load_line_fit(pts);
    CHECK(std::abs(fit.v_trg / 3.0 - 1) < 1e-9);
    CHECK(std::abs(fit.r_eq / 5.43 - 1) < 1e-9);

    const std::vector<std::pair<double, double>> two{{100, 2.846}, {500, 2.968}};
    const auto line = load_line_fit(two);
    for (const auto& [ro, vo] : two) CHECK(vo_under_load(line.v_trg, line.r_eq, ro) == doctest::Approx(vo).epsilon(1e-12));

    const std::vector<std::pair<double, double>> flat{{100, 2.8}, {100, 2.9}};
    CHECK_THROWS_AS(load_line_fit(flat), FitError);
    CHECK_THROWS_AS(load_line_fit(std::vector<std::pair<double, double>>{{100, 2.8}}), FitError);
}

TEST_CASE("load-line fit on a simulated 3/8 sweep")
{
    const std::vector<std::pair<double, double>> pts{{100, 2.846}, {200, 2.921}, {300, 2.947}, {400, 2.959}, {500, 2.968}};
    const auto fit = load_line_fit(pts);
    CHECK(fit.v_trg == doctest::Approx(3.0).epsilon(0.005));
    CHECK(std::abs(fit.r_eq - 5.43) < 0.1);
}

TEST_CASE("sweep CSV")
{
    const std::vector<double> loads{100, 200};
    const auto rows = load_sweep("4/8", 4.0, 4.82, loads);
    std::ostringstream os;
    write_sweep_csv(os, rows);
    CHECK(os.str().rfind("ratio,R_o,V_o,R_eq,eta\n4/8,100,", 0) == 0);
    CHECK(rows[0].eta == doctest::Approx(100 / 104.82));
}
