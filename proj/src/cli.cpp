#include "rampadc/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "rampadc/adc.hpp"
#include "rampadc/analytic.hpp"
#include "rampadc/metrics.hpp"
#include "rampadc/plot.hpp"
#include "rampadc/signal_spec.hpp"

namespace rampadc::cli {

std::string format_sig12(double value) {
    if (value == 0.0) {
        return "0";
    }
    if (!std::isfinite(value)) {
        return fmt::format("{}", value);
    }
    const int magnitude = static_cast<int>(std::floor(std::log10(std::abs(value))));
    const int decimals = std::max(0, 11 - magnitude);
    return fmt::format("{:.{}f}", value, decimals);
}

namespace {

struct ConfigFlags {
    AdcConfig cfg;

    void attach(CLI::App* app) {
        app->add_option("--bits", cfg.bits, "Output bits")->capture_default_str();
        app->add_option("--clocks", cfg.clocks_per_frame, "Clock cycles per unit frame")->capture_default_str();
        app->add_option("--m", cfg.m_sample, "Sample-and-hold cycles (M)")->capture_default_str();
        app->add_option("--n", cfg.n_finalize, "Finalize cycles (N)")->capture_default_str();
        app->add_option("--k", cfg.k_count, "Cycles per counter step (K)")->capture_default_str();
        app->add_option("--sref", cfg.s_ref, "Reference (full-scale) level")->capture_default_str();
    }
};

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        throw std::runtime_error(fmt::format("cannot write '{}'", path));
    }
}

// Flags accepted by `analytic`, keyed by option name without dashes.
const std::map<int, std::pair<std::set<std::string>, std::set<std::string>>>& equation_flags() {
    static const std::set<std::string> cfg_flags{"bits", "sref", "clocks", "m", "n", "k", "l"};
    auto with_cfg = [&](std::set<std::string> extra) {
        extra.insert(cfg_flags.begin(), cfg_flags.end());
        extra.insert("in-cycles");
        return extra;
    };
    // equation -> {required, allowed}
    static const std::map<int, std::pair<std::set<std::string>, std::set<std::string>>> table{
        {1, {{"s", "bits"}, with_cfg({"s"})}},
        {3, {{"s", "bits"}, with_cfg({"s"})}},
        {5, {{"s", "slast", "bits"}, with_cfg({"s", "slast"})}},
        {8, {{"slope", "prev", "bits"}, with_cfg({"slope", "prev"})}},
        {9, {{}, with_cfg({})}},
        {12, {{"slope", "prev", "bits"}, {"slope", "prev", "bits", "sref", "m", "n", "l", "smean"}}},
        {13, {{"bits"}, {"bits", "m", "n", "l"}}},
        {14, {{"t1", "mean-tc"}, {"t0", "t1", "mean-tc"}}},
        {15, {{"ns-proposed", "ns-typical"}, {"ns-proposed", "ns-typical"}}},
        {17, {{"speedup"}, {"speedup"}}},
    };
    return table;
}

int run_analytic(int eq, const std::map<std::string, CLI::Option*>& opts, const std::map<std::string, double>& v,
                 bool in_cycles, std::ostream& out) {
    const auto& table = equation_flags();
    const auto found = table.find(eq);
    if (found == table.end()) {
        throw std::invalid_argument(fmt::format("unsupported equation {}", eq));
    }
    const auto& [required, allowed] = found->second;
    auto given = [&](const std::string& name) { return opts.at(name)->count() > 0; };
    for (const auto& [name, opt] : opts) {
        if (opt->count() > 0 && !allowed.contains(name)) {
            throw std::invalid_argument(fmt::format("--{} does not apply to equation {}", name, eq));
        }
    }
    for (const auto& name : required) {
        if (!given(name)) {
            throw std::invalid_argument(fmt::format("equation {} needs --{}", eq, name));
        }
    }

    AdcConfig cfg;
    cfg.bits = given("bits") ? static_cast<int>(v.at("bits")) : cfg.bits;
    if (given("sref")) cfg.s_ref = v.at("sref");
    if (given("clocks")) cfg.clocks_per_frame = static_cast<Cycles>(v.at("clocks"));
    if (given("k")) cfg.k_count = static_cast<Cycles>(v.at("k"));
    if (given("l")) {
        if (given("m") || given("n")) {
            throw std::invalid_argument("give either --l or --m/--n, not both");
        }
        const auto l = static_cast<Cycles>(v.at("l"));
        if (l < 2) {
            throw std::invalid_argument("--l must be at least 2 (M >= 1 and N >= 1)");
        }
        cfg.m_sample = l - 1;
        cfg.n_finalize = 1;
    }
    if (given("m")) cfg.m_sample = static_cast<Cycles>(v.at("m"));
    if (given("n")) cfg.n_finalize = static_cast<Cycles>(v.at("n"));
    cfg.validate();

    auto time_value = [&](Cycles c) {
        return in_cycles ? static_cast<double>(c) : static_cast<double>(c) / static_cast<double>(cfg.clocks_per_frame);
    };

    double result = 0.0;
    switch (eq) {
        case 1: result = time_value(analytic::typical_cycles_exact(v.at("s"), cfg)); break;
        case 3: result = time_value(analytic::typical_cycles_approx(v.at("s"), cfg)); break;
        case 5: result = time_value(analytic::proposed_cycles(v.at("s"), v.at("slast"), cfg)); break;
        case 8: result = time_value(analytic::proposed_cycles_recursive(v.at("slope"), v.at("prev"), cfg)); break;
        case 9: result = time_value(cfg.overhead()); break;
        case 12:
            result = analytic::reduction_estimate(v.at("slope"), v.at("prev"), cfg,
                                                  given("smean") ? v.at("smean") : 0.5);
            break;
        case 13: result = analytic::reduction_bound(cfg); break;
        case 14:
            result = analytic::sample_count(given("t0") ? v.at("t0") : 0.0, v.at("t1"), v.at("mean-tc"));
            break;
        case 15: result = analytic::speed_up(v.at("ns-proposed"), v.at("ns-typical")); break;
        case 17: result = analytic::reduction_percent(v.at("speedup")); break;
        default: break;
    }
    out << format_sig12(result) << '\n';
    return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ramp-counter ADC simulator: clear-to-zero vs up/down retained-register conversion"};
    app.name("rampadc");
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run one architecture over one frame");
    std::string sim_signal;
    std::string sim_arch;
    std::string sim_out;
    ConfigFlags sim_cfg;
    simulate->add_option("--signal", sim_signal, "Signal spec")->required();
    simulate->add_option("--arch", sim_arch, "typical | proposed")->required();
    simulate->add_option("--out", sim_out, "Trace CSV path");
    sim_cfg.attach(simulate);

    // bench
    auto* bench = app.add_subcommand("bench", "Four-signal typical vs proposed benchmark");
    std::string bench_ecg;
    std::string bench_out;
    int bench_beats = SyntheticEcgParams{}.beats;
    ConfigFlags bench_cfg;
    bench->add_option("--ecg", bench_ecg, "ECG table file (synthetic ECG if omitted)");
    bench->add_option("--beats", bench_beats, "Beats per frame for the synthetic ECG")->capture_default_str();
    bench->add_option("--out", bench_out, "Report JSON path (stdout if omitted)");
    bench_cfg.attach(bench);

    // analytic
    auto* analytic_cmd = app.add_subcommand("analytic", "Evaluate a closed-form timing or F.O.M. equation");
    int eq = 0;
    bool in_cycles = false;
    std::map<std::string, double> values;
    std::map<std::string, CLI::Option*> analytic_opts;
    analytic_cmd->add_option("--eq", eq, "Equation: 1 3 5 8 9 12 13 14 15 17")->required();
    analytic_opts["in-cycles"] = analytic_cmd->add_flag("--in-cycles", in_cycles, "Report times in clock cycles");
    for (const char* name : {"bits", "sref", "clocks", "m", "n", "k", "l", "s", "slast", "slope", "prev", "smean",
                             "t0", "t1", "mean-tc", "ns-proposed", "ns-typical", "speedup"}) {
        analytic_opts[name] = analytic_cmd->add_option(std::string("--") + name, values[name]);
    }

    // minclock
    auto* minclock = app.add_subcommand("minclock", "Smallest power-of-two clock rate meeting a distortion target");
    std::string mc_signal;
    std::string mc_arch;
    double mc_threshold = 2.0;
    int ladder_lo = 4;
    int ladder_hi = 20;
    ConfigFlags mc_cfg;
    minclock->add_option("--signal", mc_signal, "Signal spec")->required();
    minclock->add_option("--arch", mc_arch, "typical | proposed")->required();
    minclock->add_option("--threshold-lsb", mc_threshold, "RMSE threshold in LSB")->capture_default_str();
    minclock->add_option("--ladder-min-exp", ladder_lo, "Smallest ladder exponent")->capture_default_str();
    minclock->add_option("--ladder-max-exp", ladder_hi, "Largest ladder exponent")->capture_default_str();
    mc_cfg.attach(minclock);

    // plot
    auto* plot = app.add_subcommand("plot", "SVG of input, typical and proposed staircases");
    std::string plot_signal;
    std::string plot_out;
    ConfigFlags plot_cfg;
    plot->add_option("--signal", plot_signal, "Signal spec")->required();
    plot->add_option("--out", plot_out, "SVG path")->required();
    plot_cfg.attach(plot);

    std::vector<const char*> argv{"rampadc"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (simulate->parsed()) {
            const auto sig = parse_signal_spec(sim_signal);
            const auto trace = run_frame(sig, parse_architecture(sim_arch), sim_cfg.cfg);
            if (!sim_out.empty()) {
                write_trace_csv(sim_out, trace);
            }
            out << fmt::format("n_samples={} mean_cycles={}\n", count_samples(trace),
                               format_sig12(mean_cycles(trace)));
            return kExitOk;
        }
        if (bench->parsed()) {
            const AdcConfig& cfg = bench_cfg.cfg;
            const SignalSource ecg =
                bench_ecg.empty() ? SignalSource::synthetic_ecg(bench_beats) : load_table(bench_ecg);
            std::vector<ComparisonReport> rows{
                compare(SignalSource::dc(DcParams{}.level), cfg, "DC"),
                compare(SignalSource::sine(), cfg, "Sine"),
                compare(SignalSource::exponential(), cfg, "Exponential"),
                compare(ecg, cfg, "ECG"),
            };
            render_table(out, rows);
            const std::string json = nlohmann::json(rows).dump(2) + "\n";
            if (bench_out.empty()) {
                out << json;
            } else {
                write_text_file(bench_out, json);
            }
            return kExitOk;
        }
        if (analytic_cmd->parsed()) {
            return run_analytic(eq, analytic_opts, values, in_cycles, out);
        }
        if (minclock->parsed()) {
            const auto sig = parse_signal_spec(mc_signal);
            const auto result = min_clock_search(sig, parse_architecture(mc_arch), mc_cfg.cfg, mc_threshold,
                                                 power_of_two_ladder(ladder_lo, ladder_hi));
            out << "min_clocks=" << (result.min_clocks ? std::to_string(*result.min_clocks) : "not_found") << '\n';
            out << "clocks_per_frame,rmse_lsb\n";
            for (const auto& p : result.ladder) {
                out << p.clocks_per_frame << ',' << (p.rmse_lsb ? fmt::format("{:.17g}", *p.rmse_lsb) : "") << '\n';
            }
            if (!result.min_clocks) {
                err << "no ladder point met the distortion threshold\n";
                return kExitNotFound;
            }
            return kExitOk;
        }
        if (plot->parsed()) {
            const auto sig = parse_signal_spec(plot_signal);
            const auto typical = run_frame(sig, Architecture::typical, plot_cfg.cfg);
            const auto proposed = run_frame(sig, Architecture::proposed, plot_cfg.cfg);
            write_comparison_svg(plot_out, sig, typical, proposed);
            out << fmt::format("wrote {}\n", plot_out);
            return kExitOk;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace rampadc::cli
