#include "rampadc/adc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace rampadc {

void AdcConfig::validate() const {
    if (bits < 1 || bits > 30) {
        throw std::invalid_argument(fmt::format("bits must be in [1, 30], got {}", bits));
    }
    if (!(s_ref > 0.0) || !std::isfinite(s_ref)) {
        throw std::invalid_argument(fmt::format("s_ref must be positive, got {}", s_ref));
    }
    if (clocks_per_frame < 1) {
        throw std::invalid_argument(fmt::format("clocks_per_frame must be >= 1, got {}", clocks_per_frame));
    }
    if (m_sample < 1 || n_finalize < 1 || k_count < 1) {
        throw std::invalid_argument(fmt::format(
            "overhead cycles must be >= 1 (M={}, N={}, K={})", m_sample, n_finalize, k_count));
    }
}

std::string_view to_string(Architecture arch) {
    return arch == Architecture::typical ? "typical" : "proposed";
}

Architecture parse_architecture(std::string_view text) {
    if (text == "typical") {
        return Architecture::typical;
    }
    if (text == "proposed") {
        return Architecture::proposed;
    }
    throw std::invalid_argument(fmt::format("unknown architecture '{}'", text));
}

Code quantize(double s, const AdcConfig& cfg) {
    const Code top = cfg.max_code();
    if (std::isnan(s)) {
        return 0;
    }
    s = std::clamp(s, 0.0, cfg.s_ref);
    auto code = static_cast<std::int64_t>(std::floor(s * top / cfg.s_ref));
    code = std::clamp<std::int64_t>(code, 0, top);
    // Settle onto the DAC grid so quantize(dac(c)) == c despite rounding.
    auto level = [&](std::int64_t c) { return static_cast<double>(c) * cfg.s_ref / top; };
    while (code < top && level(code + 1) <= s) {
        ++code;
    }
    while (code > 0 && level(code) > s) {
        --code;
    }
    return static_cast<Code>(code);
}

double dac(Code code, const AdcConfig& cfg) {
    const Code top = cfg.max_code();
    if (code < 0 || code > top) {
        throw std::out_of_range(fmt::format("code {} outside [0, {}]", code, top));
    }
    return static_cast<double>(code) * cfg.s_ref / top;
}

Cycles conversion_cost(Architecture arch, Code start_code, Code target_code, const AdcConfig& cfg) {
    const Cycles steps = arch == Architecture::typical
                             ? static_cast<Cycles>(target_code)
                             : static_cast<Cycles>(std::abs(target_code - start_code));
    return cfg.m_sample + cfg.k_count * steps + cfg.n_finalize;
}

Trace run_frame(const SignalSource& sig, Architecture arch, const AdcConfig& cfg) {
    cfg.validate();
    Trace trace{cfg, arch, {}, 0};
    trace.records.reserve(static_cast<std::size_t>(cfg.clocks_per_frame / cfg.overhead() + 1));

    const auto frame = static_cast<double>(cfg.clocks_per_frame);
    Cycles clock = 0;
    Code reg = 0;
    for (;;) {
        const double held = sig.evaluate(static_cast<double>(clock) / frame);
        const Code target = quantize(held, cfg);
        const Code start = arch == Architecture::typical ? 0 : reg;
        const Cycles cost = conversion_cost(arch, start, target, cfg);
        if (clock + cost > cfg.clocks_per_frame) {
            break;
        }
        trace.records.push_back({static_cast<std::int64_t>(trace.records.size()), clock, clock + cost,
                                 cost, held, start, target});
        reg = target;
        clock += cost;
    }
    trace.frame_clocks_used = clock;
    return trace;
}

Code held_code_at_clock(const Trace& trace, Cycles clock) {
    const auto& recs = trace.records;
    auto it = std::upper_bound(recs.begin(), recs.end(), clock,
                               [](Cycles c, const ConversionRecord& r) { return c < r.end_clock; });
    return it == recs.begin() ? 0 : std::prev(it)->output_code;
}

double reconstruct(const Trace& trace, double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::out_of_range(fmt::format("normalized time {} outside [0, 1]", t));
    }
    if (trace.records.empty()) {
        throw std::invalid_argument("cannot reconstruct from an empty trace");
    }
    const auto frame = static_cast<double>(trace.config.clocks_per_frame);
    const auto& recs = trace.records;
    auto it = std::upper_bound(recs.begin(), recs.end(), t, [&](double x, const ConversionRecord& r) {
        return x < static_cast<double>(r.end_clock) / frame;
    });
    const Code code = it == recs.begin() ? 0 : std::prev(it)->output_code;
    return dac(code, trace.config);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << "index,start_clock,end_clock,cycles,sample_value,start_code,output_code\n";
    for (const auto& r : trace.records) {
        out << fmt::format("{},{},{},{},{:.17g},{},{}\n", r.index, r.start_clock, r.end_clock, r.cycles,
                           r.sample_value, r.start_code, r.output_code);
    }
}

void write_trace_csv(const std::string& path, const Trace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
    }
    write_trace_csv(out, trace);
    if (!out) {
        throw std::runtime_error(fmt::format("failed writing '{}'", path));
    }
}

}  // namespace rampadc
