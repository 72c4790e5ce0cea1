#include "rampadc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "rampadc/analytic.hpp"

namespace rampadc {

void to_json(nlohmann::json& j, const ComparisonReport& r) {
    j = nlohmann::json{
        {"signal_name", r.signal_name},
        {"ns_typical", r.ns_typical},
        {"ns_proposed", r.ns_proposed},
        {"mean_cycles_typical", r.mean_cycles_typical},
        {"mean_cycles_proposed", r.mean_cycles_proposed},
        {"speed_up", r.speed_up},
        {"reduction_percent", r.reduction_percent},
        {"rmse_typical", r.rmse_typical},
        {"rmse_proposed", r.rmse_proposed},
    };
}

void from_json(const nlohmann::json& j, ComparisonReport& r) {
    j.at("signal_name").get_to(r.signal_name);
    j.at("ns_typical").get_to(r.ns_typical);
    j.at("ns_proposed").get_to(r.ns_proposed);
    j.at("mean_cycles_typical").get_to(r.mean_cycles_typical);
    j.at("mean_cycles_proposed").get_to(r.mean_cycles_proposed);
    j.at("speed_up").get_to(r.speed_up);
    j.at("reduction_percent").get_to(r.reduction_percent);
    j.at("rmse_typical").get_to(r.rmse_typical);
    j.at("rmse_proposed").get_to(r.rmse_proposed);
}

std::int64_t count_samples(const Trace& trace) { return static_cast<std::int64_t>(trace.records.size()); }

double mean_cycles(const Trace& trace) {
    if (trace.records.empty()) {
        return 0.0;
    }
    return static_cast<double>(trace.frame_clocks_used) / static_cast<double>(trace.records.size());
}

namespace {

// Visits the readback error (in LSB) at each clock tick 0 .. clocks_per_frame - 1.
template <typename F>
void for_each_tick_error(const Trace& trace, const SignalSource& sig, Cycles from_clock, F&& f) {
    if (trace.records.empty()) {
        throw std::invalid_argument("distortion of an empty trace is undefined");
    }
    const auto& cfg = trace.config;
    const double scale = static_cast<double>(cfg.max_code()) / cfg.s_ref;
    const auto frame = static_cast<double>(cfg.clocks_per_frame);
    auto next = trace.records.begin();
    Code held = 0;
    for (Cycles tick = 0; tick < cfg.clocks_per_frame; ++tick) {
        while (next != trace.records.end() && next->end_clock <= tick) {
            held = next->output_code;
            ++next;
        }
        if (tick < from_clock) {
            continue;
        }
        const double err = dac(held, cfg) - sig.evaluate(static_cast<double>(tick) / frame);
        f(err * scale);
    }
}

}  // namespace

double distortion_rmse(const Trace& trace, const SignalSource& sig) {
    double acc = 0.0;
    for_each_tick_error(trace, sig, 0, [&](double e) { acc += e * e; });
    return std::sqrt(acc / static_cast<double>(trace.config.clocks_per_frame));
}

double max_deviation_lsb(const Trace& trace, const SignalSource& sig, Cycles from_clock) {
    double worst = 0.0;
    for_each_tick_error(trace, sig, from_clock, [&](double e) { worst = std::max(worst, std::abs(e)); });
    return worst;
}

std::vector<Cycles> power_of_two_ladder(int lo_exp, int hi_exp) {
    std::vector<Cycles> ladder;
    for (int e = lo_exp; e <= hi_exp; ++e) {
        ladder.push_back(Cycles{1} << e);
    }
    return ladder;
}

MinClockResult min_clock_search(const SignalSource& sig, Architecture arch, const AdcConfig& base,
                                double threshold_lsb, const std::vector<Cycles>& ladder) {
    if (!(threshold_lsb > 0.0)) {
        throw std::invalid_argument("distortion threshold must be positive");
    }
    if (ladder.empty()) {
        throw std::invalid_argument("clock ladder is empty");
    }
    if (!std::is_sorted(ladder.begin(), ladder.end())) {
        throw std::invalid_argument("clock ladder must be ascending");
    }
    MinClockResult result;
    for (const Cycles clocks : ladder) {
        AdcConfig cfg = base;
        cfg.clocks_per_frame = clocks;
        const Trace trace = run_frame(sig, arch, cfg);
        LadderPoint point{clocks, std::nullopt};
        if (!trace.records.empty()) {
            point.rmse_lsb = distortion_rmse(trace, sig);
            if (!result.min_clocks && *point.rmse_lsb <= threshold_lsb) {
                result.min_clocks = clocks;
            }
        }
        result.ladder.push_back(point);
    }
    return result;
}

ComparisonReport compare(const SignalSource& sig, const AdcConfig& cfg, std::string label) {
    const Trace typical = run_frame(sig, Architecture::typical, cfg);
    const Trace proposed = run_frame(sig, Architecture::proposed, cfg);

    ComparisonReport r;
    r.signal_name = label.empty() ? sig.name() : std::move(label);
    r.ns_typical = count_samples(typical);
    r.ns_proposed = count_samples(proposed);
    r.mean_cycles_typical = mean_cycles(typical);
    r.mean_cycles_proposed = mean_cycles(proposed);
    r.speed_up = analytic::speed_up(static_cast<double>(r.ns_proposed), static_cast<double>(r.ns_typical));
    r.reduction_percent = analytic::reduction_percent(r.speed_up);
    r.rmse_typical = distortion_rmse(typical, sig);
    r.rmse_proposed = distortion_rmse(proposed, sig);
    return r;
}

void render_table(std::ostream& out, const std::vector<ComparisonReport>& rows) {
    out << fmt::format("{:<12} {:>10} {:>10} {:>9} {:>10}\n", "Input", "Typical", "Proposed", "Speed-up",
                       "Reduction");
    for (const auto& r : rows) {
        out << fmt::format("{:<12} {:>10} {:>10} {:>9} {:>10}\n", r.signal_name, r.ns_typical, r.ns_proposed,
                           fmt::format("{:#.3g}", r.speed_up), fmt::format("{:#.3g}%", r.reduction_percent));
    }
}

}  // namespace rampadc
