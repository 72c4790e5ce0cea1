#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rampadc/signal.hpp"

namespace rampadc {

using Code = std::int32_t;
using Cycles = std::int64_t;

/// Hardware parameters of a ramp-counter converter. Timing is counted in
/// whole clock cycles; clocks_per_frame fixes the clock as a multiple of the
/// unit frame.
struct AdcConfig {
    int bits = 8;
    double s_ref = 1.0;
    Cycles clocks_per_frame = kDefaultClocksPerFrame;
    Cycles m_sample = 2;    // sample-and-hold cycles
    Cycles n_finalize = 1;  // output latch cycles
    Cycles k_count = 1;     // cycles per counter step

    /// Fixed overhead per conversion (M + N).
    [[nodiscard]] Cycles overhead() const { return m_sample + n_finalize; }
    [[nodiscard]] Code max_code() const { return static_cast<Code>((std::int64_t{1} << bits) - 1); }

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;

    friend bool operator==(const AdcConfig&, const AdcConfig&) = default;
};

enum class Architecture {
    typical,   // register cleared, counts up from zero every conversion
    proposed,  // up/down register retains the previous code
};

std::string_view to_string(Architecture arch);
/// Accepts "typical" or "proposed"; throws std::invalid_argument otherwise.
Architecture parse_architecture(std::string_view text);

struct ConversionRecord {
    std::int64_t index = 0;
    Cycles start_clock = 0;
    Cycles end_clock = 0;
    Cycles cycles = 0;
    double sample_value = 0.0;
    Code start_code = 0;
    Code output_code = 0;

    friend bool operator==(const ConversionRecord&, const ConversionRecord&) = default;
};

struct Trace {
    AdcConfig config;
    Architecture architecture = Architecture::typical;
    std::vector<ConversionRecord> records;
    Cycles frame_clocks_used = 0;

    friend bool operator==(const Trace&, const Trace&) = default;
};

/// Largest code whose DAC level does not exceed s (inputs clamp to [0, s_ref]).
Code quantize(double s, const AdcConfig& cfg);

/// code * s_ref / (2^bits - 1). Throws std::out_of_range for codes off the grid.
double dac(Code code, const AdcConfig& cfg);

/// Cycles spent converting toward target_code from start_code.
Cycles conversion_cost(Architecture arch, Code start_code, Code target_code, const AdcConfig& cfg);

/// Simulates one unit frame: back-to-back conversions from clock 0 with the
/// register at code 0. A conversion that would end past the frame is dropped.
Trace run_frame(const SignalSource& sig, Architecture arch, const AdcConfig& cfg);

/// Zero-order-hold readback: DAC level of the last conversion finished by t.
double reconstruct(const Trace& trace, double t);

/// Same readback indexed by an integer clock tick.
Code held_code_at_clock(const Trace& trace, Cycles clock);

void write_trace_csv(std::ostream& out, const Trace& trace);
void write_trace_csv(const std::string& path, const Trace& trace);

}  // namespace rampadc
