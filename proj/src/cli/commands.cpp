#include "sccforge/cli.hpp"

#include "sccforge/chargesim.hpp"
#include "sccforge/error.hpp"
#include "sccforge/json.hpp"
#include "sccforge/linsolve.hpp"
#include "sccforge/lossmodel.hpp"
#include "sccforge/numrep.hpp"
#include "sccforge/regulation.hpp"
#include "sccforge/topology.hpp"
#include "sccforge/units.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>

namespace sccforge::cli {

namespace {

// Bad flags or values; reported with exit_usage.
class UsageError : public Error {
public:
    using Error::Error;
};

// Simulation ran out of periods; the trace has already been written.
class NotConverged : public Error {
public:
    using Error::Error;
};

enum class Format { text, csv, json };

struct Globals {
    std::string format = "text";
    std::string config;

    Format fmt() const
    {
        if (format == "csv") return Format::csv;
        if (format == "json") return Format::json;
        return Format::text;
    }
};

// "m/q" with q = radix^k. `n` > 0 rescales to that width.
TargetRatio parse_ratio_arg(const std::string& text, int radix, int n)
{
    const auto slash = text.find('/');
    if (slash == std::string::npos) throw UsageError("ratio must be written m/q, got '" + text + "'");
    Rational m;
    Rational q;
    try {
        m = parse_rational(text.substr(0, slash));
        q = parse_rational(text.substr(slash + 1));
    } catch (const DomainError&) {
        throw UsageError("malformed ratio '" + text + "'");
    }
    if (m.get_den() != 1 || q.get_den() != 1 || q < radix) {
        throw UsageError("ratio '" + text + "' needs an integer numerator and a power of " + std::to_string(radix));
    }
    int k = 0;
    BigInt rest = q.get_num();
    while (rest % radix == 0) {
        rest /= radix;
        ++k;
    }
    if (rest != 1) throw UsageError("denominator of '" + text + "' is not a power of " + std::to_string(radix));
    if (n <= 0) n = k;
    Rational scaled = m / q * Rational(checked_power(radix, n));
    if (scaled.get_den() != 1) {
        throw UsageError("ratio '" + text + "' cannot be written with resolution " + std::to_string(n));
    }
    try {
        return TargetRatio::make(scaled.get_num().get_si(), radix, n);
    } catch (const DomainError& e) {
        throw UsageError(std::string("invalid ratio: ") + e.what());
    }
}

std::vector<SignedDigitCode> parse_code_list(const std::string& text, int radix)
{
    std::vector<SignedDigitCode> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto semi = text.find(';', start);
        const std::string part = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        if (part.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_code(part, radix));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (out.empty()) throw UsageError("empty code list");
    return out;
}

std::string format_volts(double v)
{
    // Round away solver noise below the default tolerance.
    double r = std::round(v * 1e6) / 1e6;
    if (r == 0.0) r = 0.0;
    return fmt::format("{:.6g}", r);
}

std::string join_rationals(const std::vector<Rational>& xs)
{
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : " ") + to_string(x);
    return s;
}

std::string index_list(const std::vector<std::size_t>& rows)
{
    std::string s = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? ", " : "") + std::to_string(rows[i] + 1);
    return s + "]";
}

std::string solution_line(const KvlSystem& sys, const std::vector<Rational>& x)
{
    const auto labels = sys.labels();
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " " : "") + labels[i] + "=" + to_string(x[i]);
    return s;
}

struct HardwareOptions {
    std::string fs = "100kHz";
    std::string c = "4.7uF";
    std::string ron = "1.2Ohm";
    int switches = 4;
    std::string slot = "auto";

    void add(CLI::App* sub)
    {
        sub->add_option("--fs", fs, "switching frequency")->capture_default_str();
        sub->add_option("--c", c, "flying capacitance")->capture_default_str();
        sub->add_option("--ron", ron, "switch on-resistance")->capture_default_str();
        sub->add_option("--switches", switches, "switches per conduction loop")->capture_default_str();
        sub->add_option("--slot", slot, "connection interval: auto, Ts/k or a fraction of T_s")->capture_default_str();
    }

    ReqSpec spec_for(const SlotPlan& plan) const
    {
        return make_req_spec(plan, parse_si(fs), parse_si(c), parse_si(ron), switches, parse_slot_fraction(slot));
    }
};

// ---------------------------------------------------------------------------

struct CodesCmd {
    std::string ratio;
    int radix = 2;
    int n = 0;
    std::string generator = "spawn";
    bool check = false;
    bool balanced = false;
    bool sorted = false;

    int operator()(const Globals& g, std::ostream& out) const
    {
        const TargetRatio r = parse_ratio_arg(ratio, radix, n);
        if (check) {
            const CodeSet a = spawn_codes(r);
            const CodeSet b = enumerate_codes(r);
            const bool same = a.codes == b.codes;
            fmt::print(out, "{}: spawn {} codes, enumerate {} codes: {}\n", r.to_string(), a.size(), b.size(),
                       same ? "identical" : "MISMATCH");
            return same ? exit_ok : exit_failure;
        }

        std::vector<SignedDigitCode> codes;
        if (balanced) {
            codes = balanced_sequence(r);
        } else {
            const CodeSet set = generator == "enumerate" ? enumerate_codes(r) : spawn_codes(r);
            codes = sorted ? sort_codes_by_zeros(set.codes) : set.codes;
        }

        switch (g.fmt()) {
        case Format::json: {
            nlohmann::json list = nlohmann::json::array();
            for (const auto& c : codes) list.push_back(to_json(c));
            nlohmann::json j{{"schema", json_schema},
                             {"ratio", r.to_string()},
                             {"radix", r.radix()},
                             {"resolution", r.resolution()},
                             {"effective_resolution", r.effective_resolution()},
                             {"codes", list}};
            out << j.dump(2) << "\n";
            break;
        }
        case Format::csv:
            out << "a0";
            for (int j = 1; j <= r.resolution(); ++j) out << ",A" << j;
            out << "\n";
            for (const auto& c : codes) {
                out << c.a0;
                for (int d : c.digits) out << "," << d;
                out << "\n";
            }
            break;
        case Format::text:
            for (const auto& c : codes) out << c.to_string() << "\n";
            break;
        }
        return exit_ok;
    }
};

struct SolveCmd {
    std::string ratio;
    int radix = 2;
    int n = 0;
    std::string order = "canonical";
    bool stepup = false;
    bool eliminate = false;
    bool matrix = false;

    int operator()(const Globals& g, std::ostream& out) const
    {
        const TargetRatio r = parse_ratio_arg(ratio, radix, n);
        const CodeSet set = spawn_codes(r);
        const auto codes = order == "sorted" ? sort_codes_by_zeros(set.codes) : set.codes;
        KvlSystem sys = build_system(codes);
        const RedundancyReport red = analyze_redundancy(sys);
        if (eliminate) sys = remove_rows(sys, red.removable);
        if (stepup) sys = step_up(sys);
        const SolvabilityReport rep = check_solvable(sys);
        const auto x = solve_unique(sys);

        if (g.fmt() == Format::json) {
            nlohmann::json sums = nlohmann::json::array();
            for (const auto& s : red.column_sums) sums.push_back(to_fraction_string(s));
            nlohmann::json rows = nlohmann::json::array();
            for (auto i : red.removable) rows.push_back(i + 1);
            nlohmann::json sol = nlohmann::json::object();
            const auto labels = sys.labels();
            for (std::size_t i = 0; i < x.size(); ++i) sol[labels[i]] = to_fraction_string(x[i]);
            nlohmann::json j = to_json(sys);
            j["report"] = to_json(rep);
            j["solution"] = sol;
            j["column_sums"] = sums;
            j["redundant_rows"] = rows;
            j["eliminated"] = eliminate;
            out << j.dump(2) << "\n";
            return exit_ok;
        }
        if (g.fmt() == Format::csv) {
            out << "unknown,value\n";
            const auto labels = sys.labels();
            for (std::size_t i = 0; i < x.size(); ++i) out << labels[i] << "," << to_string(x[i]) << "\n";
            return exit_ok;
        }
        if (matrix) out << to_text(sys);
        fmt::print(out, "rank(A)={} rank([A|b])={} unknowns={} {}\n", rep.rank_a, rep.rank_augmented, rep.unknowns,
                   rep.unique ? "unique" : "not unique");
        fmt::print(out, "column sums: {}\n", join_rationals(red.column_sums));
        if (eliminate) fmt::print(out, "eliminated rows: {}\n", index_list(red.removable));
        fmt::print(out, "{}; redundant rows: {}\n", solution_line(sys, x), index_list(red.removable));
        return exit_ok;
    }
};

struct SimulateCmd {
    std::string ratio;
    std::string codes;
    std::string order = "canonical";
    double vin = 8.0;
    std::string caps;
    std::string cout = "470uF";
    std::string init;
    double tol = 0.0;
    std::size_t max_periods = 500;
    std::string trace;
    std::string locus;

    int operator()(const Globals& g, std::ostream& out) const
    {
        std::vector<SignedDigitCode> seq;
        if (!codes.empty()) {
            seq = parse_code_list(codes, 2);
        } else {
            if (ratio.empty()) throw UsageError("simulate needs --ratio or --codes");
            const TargetRatio r = parse_ratio_arg(ratio, 2, 0);
            if (order == "balanced") {
                seq = balanced_sequence(r);
            } else {
                const CodeSet set = spawn_codes(r);
                seq = order == "canonical" ? set.codes : sort_codes_by_zeros(set.codes);
                if (order == "eliminated") {
                    seq = remove_rows(build_system(seq), find_redundant(build_system(seq))).codes;
                } else if (order != "canonical" && order != "sorted") {
                    throw UsageError("unknown order '" + order + "'");
                }
            }
        }
        const std::size_t n = static_cast<std::size_t>(seq.front().resolution());

        std::vector<double> flying = caps.empty() ? std::vector<double>(n, 4.7e-6) : parse_si_list(caps);
        if (flying.size() != n) throw UsageError(fmt::format("--caps needs {} values", n));
        BankState state = BankState::zero(flying, parse_si(cout));
        if (!init.empty()) {
            const auto v = parse_si_list(init);
            if (v.size() != n + 1) throw UsageError(fmt::format("--init needs {} values (V1..Vn,Vo)", n + 1));
            std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n), state.flying_voltages.begin());
            state.output_voltage = v.back();
        }

        const SimTrace tr = run(state, seq, vin, RunOptions{max_periods, tol});
        if (!trace.empty()) {
            std::ofstream f(trace);
            if (!f) throw DomainError("cannot write " + trace);
            write_trace_csv(f, tr, n);
        }
        if (!locus.empty()) {
            std::ofstream f(locus);
            if (!f) throw DomainError("cannot write " + locus);
            write_locus_csv(f, charge_locus(tr, static_cast<int>(seq.size())));
        }

        const auto& fs = tr.final_state;
        if (g.fmt() == Format::json) {
            nlohmann::json j{{"schema", json_schema},
                             {"converged", tr.converged},
                             {"periods", tr.periods},
                             {"iterations", tr.records.size()},
                             {"flying_voltages", fs.flying_voltages},
                             {"output_voltage", fs.output_voltage}};
            j["adjustment_iterations"] = tr.adjustment_iterations ? nlohmann::json(*tr.adjustment_iterations) : nullptr;
            out << j.dump(2) << "\n";
        } else if (g.fmt() == Format::csv) {
            write_trace_csv(out, tr, n);
        } else {
            if (tr.converged) {
                fmt::print(out, "converged after {} periods ({} steps to adjust)\n", tr.periods, *tr.adjustment_iterations);
            } else {
                fmt::print(out, "not converged after {} periods\n", tr.periods);
            }
            std::string lim;
            for (double v : fs.flying_voltages) lim += format_volts(v) + " ";
            fmt::print(out, "limits: {}| {} V\n", lim, format_volts(fs.output_voltage));
        }
        if (!tr.converged) throw NotConverged(fmt::format("no convergence within {} periods", tr.periods));
        return exit_ok;
    }
};

struct ReqCmd {
    HardwareOptions hw;
    std::string ratio;
    int n = 3;

    int operator()(const Globals& g, std::ostream& out) const
    {
        std::vector<TargetRatio> ratios;
        if (!ratio.empty()) {
            ratios.push_back(parse_ratio_arg(ratio, 2, n));
        } else {
            const std::int64_t den = checked_power(2, n);
            for (std::int64_t m = 1; m < den; ++m) ratios.push_back(TargetRatio::make(m, 2, n));
        }

        struct Row {
            std::string ratio;
            double req;
            Rational limit;
            double limit_ohm;
            std::size_t slots;
            Rational slot;
        };
        std::vector<Row> rows;
        for (const auto& r : ratios) {
            const ReqSpec spec = hw.spec_for(sorted_slot_plan(r));
            const Rational k = req_zero_beta_limit(spec);
            rows.push_back({r.to_string(), req_multi(spec), k, to_double(k) * spec.loop_resistance(), spec.slots.size(),
                            spec.slot_fraction});
        }

        if (g.fmt() == Format::json) {
            nlohmann::json list = nlohmann::json::array();
            for (const auto& r : rows) {
                list.push_back({{"ratio", r.ratio},
                                {"R_eq", r.req},
                                {"limit_R", to_fraction_string(r.limit)},
                                {"limit_ohm", r.limit_ohm},
                                {"slots", r.slots},
                                {"slot_fraction", to_fraction_string(r.slot)}});
            }
            out << nlohmann::json{{"schema", json_schema}, {"rows", list}}.dump(2) << "\n";
        } else if (g.fmt() == Format::csv) {
            out << "ratio,R_eq,limit_R,slots,slot_fraction\n";
            for (const auto& r : rows) {
                fmt::print(out, "{},{},{},{},{}\n", r.ratio, r.req, to_string(r.limit), r.slots, to_string(r.slot));
            }
        } else {
            fmt::print(out, "{:<6} {:>10} {:>8} {:>6} {:>6}\n", "ratio", "R_eq/Ohm", "limit/R", "slots", "t/Ts");
            for (const auto& r : rows) {
                fmt::print(out, "{:<6} {:>10.4f} {:>8} {:>6} {:>6}\n", r.ratio, r.req, to_string(r.limit), r.slots,
                           to_string(r.slot));
            }
        }
        return exit_ok;
    }
};

struct DitherCmd {
    std::string target;
    int n = 3;
    int max_period = 8;

    int operator()(const Globals& g, std::ostream& out) const
    {
        Rational t;
        try {
            t = parse_rational(target);
        } catch (const DomainError&) {
            throw UsageError("malformed target '" + target + "'");
        }
        const DitherPlan plan = dither_plan(t, n, max_period);
        const Rational avg = dither_average(plan);
        if (g.fmt() == Format::json) {
            nlohmann::json j = to_json(plan);
            j["schema"] = json_schema;
            j["period"] = plan.period();
            j["average"] = to_fraction_string(avg);
            j["error"] = to_fraction_string(abs(avg - t));
            out << j.dump(2) << "\n";
        } else if (g.fmt() == Format::csv) {
            out << "ratio,weight\n";
            for (std::size_t i = 0; i < plan.ratios.size(); ++i) out << plan.ratios[i].to_string() << "," << plan.weights[i] << "\n";
        } else {
            fmt::print(out, "{} = {}\n", to_string(plan), to_string(avg));
        }
        return exit_ok;
    }
};

struct LdoCmd {
    double vin = 0.0;
    double vout = 3.3;
    double dropout = 0.3;
    int n = 3;
    bool step_down_only = false;

    int operator()(const Globals& g, std::ostream& out) const
    {
        const ConversionRatio c = ldo_select_ratio(vin, vout, dropout, n, !step_down_only);
        const double vscc = to_double(c.gain()) * vin;
        const double bound = ldo_efficiency_bound(vout, dropout);
        if (g.fmt() == Format::json) {
            out << nlohmann::json{{"schema", json_schema},
                                  {"ratio", c.to_string()},
                                  {"step_up", c.step_up},
                                  {"scc_output", vscc},
                                  {"required", vout + dropout},
                                  {"efficiency_bound", bound}}
                       .dump(2)
                << "\n";
        } else if (g.fmt() == Format::csv) {
            out << "ratio,step_up,scc_output,required,efficiency_bound\n";
            fmt::print(out, "{},{},{},{},{}\n", c.to_string(), c.step_up ? 1 : 0, vscc, vout + dropout, bound);
        } else {
            fmt::print(out, "ratio {} ({}): {:.4g} V >= {:.4g} V; LDO efficiency bound {:.6g}\n", c.to_string(),
                       c.step_up ? "step-up" : "step-down", vscc, vout + dropout, bound);
        }
        return exit_ok;
    }
};

std::string describe(const Topology& t)
{
    std::string s = std::string("source=") + (t.source_engaged ? "on" : "off");
    for (std::size_t j = 0; j < t.groups.size(); ++j) {
        const auto& gc = t.groups[j];
        s += fmt::format("  C{}:{}", j + 1, to_string(gc.mode));
        if (gc.mode != ConnectionMode::bypass) {
            s += fmt::format("({}", gc.series_count);
            if (gc.equalizer_count > 0) s += fmt::format("+{}eq", gc.equalizer_count);
            s += ")";
        }
    }
    return s;
}

struct TopologyCmd {
    std::string ratio;
    std::string code;
    int radix = 2;
    int n = 0;

    int operator()(const Globals& g, std::ostream& out) const
    {
        std::vector<SignedDigitCode> codes;
        if (!code.empty()) codes = parse_code_list(code, radix);
        else if (!ratio.empty()) codes = spawn_codes(parse_ratio_arg(ratio, radix, n)).codes;
        else throw UsageError("topology needs --ratio or --code");

        auto states = [](const SignedDigitCode& c) -> std::optional<std::string> {
            try {
                return switch_states(c).to_string();
            } catch (const UnsupportedError&) {
                return std::nullopt;
            }
        };

        if (g.fmt() == Format::json) {
            nlohmann::json list = nlohmann::json::array();
            for (const auto& c : codes) {
                nlohmann::json j = to_json(code_to_topology(c));
                j["code"] = to_json(c);
                const auto s = states(c);
                j["switches"] = s ? nlohmann::json(*s) : nullptr;
                list.push_back(j);
            }
            out << nlohmann::json{{"schema", json_schema}, {"topologies", list}}.dump(2) << "\n";
        } else if (g.fmt() == Format::csv) {
            out << "code,source,groups,switches\n";
            for (const auto& c : codes) {
                const Topology t = code_to_topology(c);
                std::string groups;
                for (const auto& gc : t.groups) groups += (groups.empty() ? "" : ";") + std::string(to_string(gc.mode));
                fmt::print(out, "{},{},{},{}\n", c.to_string(), t.source_engaged ? 1 : 0, groups, states(c).value_or(""));
            }
        } else {
            for (const auto& c : codes) {
                const auto s = states(c);
                fmt::print(out, "{:<12} {}{}\n", c.to_string(), describe(code_to_topology(c)),
                           s ? "  switches=" + *s : std::string());
            }
        }
        return exit_ok;
    }
};

struct SwitchesCmd {
    int operator()(const Globals& g, std::ostream& out) const
    {
        const auto table = switch_table();
        if (g.fmt() == Format::json) {
            nlohmann::json list = nlohmann::json::array();
            for (const auto& e : table) {
                list.push_back({{"label", e.label}, {"code", to_json(parse_code(e.code, 2))}, {"switches", e.states}});
            }
            out << nlohmann::json{{"schema", json_schema}, {"arrays", list}}.dump(2) << "\n";
        } else if (g.fmt() == Format::csv) {
            out << "label,code,switches\n";
            for (const auto& e : table) fmt::print(out, "{},{},{}\n", e.label, e.code, e.states);
        } else {
            for (const auto& e : table) fmt::print(out, "{:<7} {:<12} {}\n", e.label, e.code, e.states);
        }
        return exit_ok;
    }
};

struct SweepCmd {
    HardwareOptions hw;
    std::string ratio;
    double vin = 8.0;
    std::string loads = "100,200,300,400,500";

    int operator()(const Globals& g, std::ostream& out) const
    {
        if (ratio.empty()) throw UsageError("sweep needs --ratio");
        const TargetRatio r = parse_ratio_arg(ratio, 2, 0);
        const double req = req_multi(hw.spec_for(sorted_slot_plan(r)));
        const auto rl = parse_si_list(loads);
        const auto rows = load_sweep(r.to_string(), to_double(r.value()) * vin, req, rl);
        if (g.fmt() == Format::json) {
            nlohmann::json list = nlohmann::json::array();
            for (const auto& x : rows) list.push_back({{"R_o", x.r_o}, {"V_o", x.v_o}, {"R_eq", x.r_eq}, {"eta", x.eta}});
            out << nlohmann::json{{"schema", json_schema}, {"ratio", r.to_string()}, {"rows", list}}.dump(2) << "\n";
        } else if (g.fmt() == Format::csv) {
            write_sweep_csv(out, rows);
        } else {
            fmt::print(out, "{:<6} {:>8} {:>9} {:>9} {:>8}\n", "ratio", "R_o", "V_o", "R_eq", "eta");
            for (const auto& x : rows) {
                fmt::print(out, "{:<6} {:>8.6g} {:>9.4f} {:>9.4f} {:>8.4f}\n", x.ratio, x.r_o, x.v_o, x.r_eq, x.eta);
            }
        }
        return exit_ok;
    }
};

struct LoadlineCmd {
    std::string points;
    std::string vtrg;

    int operator()(const Globals& g, std::ostream& out) const
    {
        std::vector<std::pair<double, double>> pts;
        std::size_t start = 0;
        while (start < points.size()) {
            auto comma = points.find(',', start);
            if (comma == std::string::npos) comma = points.size();
            const std::string p = points.substr(start, comma - start);
            const auto colon = p.find(':');
            if (colon == std::string::npos) throw UsageError("points are written R_o:V_o, got '" + p + "'");
            pts.emplace_back(parse_si(p.substr(0, colon)), parse_si(p.substr(colon + 1)));
            start = comma + 1;
        }
        if (pts.empty()) throw UsageError("loadline needs --points");

        // With a known target voltage every point gives its own R_eq.
        if (!vtrg.empty()) {
            const double v = parse_si(vtrg);
            if (g.fmt() == Format::json) {
                nlohmann::json list = nlohmann::json::array();
                for (const auto& [ro, vo] : pts) list.push_back({{"R_o", ro}, {"V_o", vo}, {"R_eq", extract_req(v, vo, ro)}});
                out << nlohmann::json{{"schema", json_schema}, {"V_TRG", v}, {"rows", list}}.dump(2) << "\n";
            } else {
                out << "R_o,V_o,R_eq\n";
                for (const auto& [ro, vo] : pts) fmt::print(out, "{},{},{:.4f}\n", ro, vo, extract_req(v, vo, ro));
            }
            return exit_ok;
        }

        const LoadLine fit = load_line_fit(pts);
        if (g.fmt() == Format::json) {
            out << nlohmann::json{{"schema", json_schema}, {"V_TRG", fit.v_trg}, {"R_eq", fit.r_eq}}.dump(2) << "\n";
        } else if (g.fmt() == Format::csv) {
            fmt::print(out, "V_TRG,R_eq\n{},{}\n", fit.v_trg, fit.r_eq);
        } else {
            fmt::print(out, "V_TRG={:.6g} V R_eq={:.4f} Ohm\n", fit.v_trg, fit.r_eq);
        }
        return exit_ok;
    }
};

// Appends "--key value" for config entries whose flag is absent from args.
std::vector<std::string> inject_config(std::vector<std::string> args)
{
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].starts_with("--config=")) path = args[i].substr(9);
    }
    if (path.empty()) return args;

    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file " + path);
    const auto entries = read_key_values(f);
    const std::vector<std::string> given = args;
    for (const auto& [key, value] : entries) {
        const std::string flag = "--" + key;
        const bool present = std::any_of(given.begin(), given.end(), [&](const std::string& a) {
            return a == flag || a.starts_with(flag + "=");
        });
        if (present || key == "config") continue;
        if (value == "true") {
            args.push_back(flag);
        } else if (value != "false") {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err)
{
    Globals globals;
    CodesCmd codes;
    SolveCmd solve;
    SimulateCmd simulate;
    ReqCmd req;
    DitherCmd dither;
    LdoCmd ldo;
    TopologyCmd topology;
    SwitchesCmd switches;
    SweepCmd sweep;
    LoadlineCmd loadline;

    CLI::App app{"Design automation for multi-target switched-capacitor converters", "scc-forge"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", globals.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--config", globals.config, "flat key = value file; flags override it");

    std::function<int()> action;

    auto* c = app.add_subcommand("codes", "list the redundant codes of a ratio");
    c->add_option("--ratio", codes.ratio, "m/r^n, e.g. 3/8")->required();
    c->add_option("--radix", codes.radix)->capture_default_str();
    c->add_option("--n", codes.n, "resolution (default: from the denominator)");
    c->add_option("--generator", codes.generator)->check(CLI::IsMember({"spawn", "enumerate"}))->capture_default_str();
    c->add_flag("--check", codes.check, "cross-check spawning against enumeration");
    c->add_flag("--balanced", codes.balanced, "print the balanced 2^n sequence");
    c->add_flag("--sorted", codes.sorted, "sort by zero digits, descending");
    c->callback([&] { action = [&] { return codes(globals, out); }; });

    auto* s = app.add_subcommand("solve", "rank analysis and exact capacitor voltages");
    s->add_option("--ratio", solve.ratio)->required();
    s->add_option("--radix", solve.radix)->capture_default_str();
    s->add_option("--n", solve.n);
    s->add_option("--order", solve.order)->check(CLI::IsMember({"canonical", "sorted"}))->capture_default_str();
    s->add_flag("--stepup", solve.stepup, "solve the reciprocal step-up system");
    s->add_flag("--eliminate", solve.eliminate, "drop redundant rows before solving");
    s->add_flag("--matrix", solve.matrix, "print [A | b]");
    s->callback([&] { action = [&] { return solve(globals, out); }; });

    auto* m = app.add_subcommand("simulate", "ideal charge redistribution to convergence");
    m->add_option("--ratio", simulate.ratio);
    m->add_option("--codes", simulate.codes, "explicit sequence, codes separated by ';'");
    m->add_option("--order", simulate.order)
        ->check(CLI::IsMember({"canonical", "sorted", "eliminated", "balanced"}))
        ->capture_default_str();
    m->add_option("--vin", simulate.vin)->capture_default_str();
    m->add_option("--caps", simulate.caps, "flying capacitances, comma separated (default 4.7u each)");
    m->add_option("--cout", simulate.cout)->capture_default_str();
    m->add_option("--init", simulate.init, "initial V1..Vn,Vo");
    m->add_option("--tol", simulate.tol, "volts (default 1e-9 * vin)");
    m->add_option("--max-periods", simulate.max_periods)->capture_default_str();
    m->add_option("--trace", simulate.trace, "write the trace CSV here");
    m->add_option("--locus", simulate.locus, "write the charge locus CSV here");
    m->callback([&] { action = [&] { return simulate(globals, out); }; });

    auto* r = app.add_subcommand("req", "equivalent resistance for every ratio of a resolution");
    req.hw.add(r);
    r->add_option("--ratio", req.ratio, "a single ratio instead of all");
    r->add_option("--n", req.n)->capture_default_str();
    r->callback([&] { action = [&] { return req(globals, out); }; });

    auto* d = app.add_subcommand("dither", "two-ratio dither plan for an intermediate target");
    d->add_option("--target", dither.target, "p/q or decimal")->required();
    d->add_option("--n", dither.n)->capture_default_str();
    d->add_option("--max-period", dither.max_period)->capture_default_str();
    d->callback([&] { action = [&] { return dither(globals, out); }; });

    auto* l = app.add_subcommand("ldo", "smallest ratio that leaves LDO headroom");
    l->add_option("--vin", ldo.vin)->required();
    l->add_option("--vout", ldo.vout)->capture_default_str();
    l->add_option("--dropout", ldo.dropout)->capture_default_str();
    l->add_option("--n", ldo.n)->capture_default_str();
    l->add_flag("--step-down-only", ldo.step_down_only);
    l->callback([&] { action = [&] { return ldo(globals, out); }; });

    auto* t = app.add_subcommand("topology", "connection of every capacitor group");
    t->add_option("--ratio", topology.ratio);
    t->add_option("--code", topology.code, "codes separated by ';', a0 first");
    t->add_option("--radix", topology.radix)->capture_default_str();
    t->add_option("--n", topology.n);
    t->callback([&] { action = [&] { return topology(globals, out); }; });

    auto* w = app.add_subcommand("switches", "switch arrays of the reference board");
    w->callback([&] { action = [&] { return switches(globals, out); }; });

    auto* sw = app.add_subcommand("sweep", "model output voltage over a set of loads");
    sweep.hw.add(sw);
    sw->add_option("--ratio", sweep.ratio)->required();
    sw->add_option("--vin", sweep.vin)->capture_default_str();
    sw->add_option("--loads", sweep.loads)->capture_default_str();
    sw->callback([&] { action = [&] { return sweep(globals, out); }; });

    auto* ll = app.add_subcommand("loadline", "fit V_TRG and R_eq to load measurements");
    ll->add_option("--points", loadline.points, "R_o:V_o pairs, comma separated")->required();
    ll->add_option("--vtrg", loadline.vtrg, "known target voltage: extract R_eq per point");
    ll->callback([&] { action = [&] { return loadline(globals, out); }; });

    try {
        std::vector<std::string> args = inject_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const NotConverged& e) {
        err << "error: " << e.what() << "\n";
        return exit_not_converged;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_domain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

}  // namespace sccforge::cli
