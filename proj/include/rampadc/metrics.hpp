#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rampadc/adc.hpp"
#include "rampadc/signal.hpp"

namespace rampadc {

/// Paired typical/proposed figures of merit for one input signal.
struct ComparisonReport {
    std::string signal_name;
    std::int64_t ns_typical = 0;
    std::int64_t ns_proposed = 0;
    double mean_cycles_typical = 0.0;
    double mean_cycles_proposed = 0.0;
    double speed_up = 0.0;
    double reduction_percent = 0.0;
    double rmse_typical = 0.0;   // LSB
    double rmse_proposed = 0.0;  // LSB
};

void to_json(nlohmann::json& j, const ComparisonReport& r);
void from_json(const nlohmann::json& j, ComparisonReport& r);

/// Completed conversions in the frame.
std::int64_t count_samples(const Trace& trace);

/// Mean cycles per completed conversion; 0 for an empty trace.
double mean_cycles(const Trace& trace);

/// RMS of the zero-order-hold readback error against the input, sampled at
/// every clock tick of the frame, in LSB units. Throws on an empty trace.
double distortion_rmse(const Trace& trace, const SignalSource& sig);

/// Largest absolute readback error over the clock ticks from `from_clock`
/// onward, in LSB units.
double max_deviation_lsb(const Trace& trace, const SignalSource& sig, Cycles from_clock = 0);

struct LadderPoint {
    Cycles clocks_per_frame = 0;
    std::optional<double> rmse_lsb;  // empty when no conversion completed
};

struct MinClockResult {
    std::optional<Cycles> min_clocks;
    std::vector<LadderPoint> ladder;
};

/// Powers of two from 2^lo_exp to 2^hi_exp inclusive.
std::vector<Cycles> power_of_two_ladder(int lo_exp = 4, int hi_exp = 20);

/// Evaluates every ladder point and reports the smallest clock rate whose
/// distortion is within threshold_lsb. `base` supplies bits and overheads;
/// its clocks_per_frame is replaced by each ladder value.
MinClockResult min_clock_search(const SignalSource& sig, Architecture arch, const AdcConfig& base,
                                double threshold_lsb, const std::vector<Cycles>& ladder);

/// Runs both architectures and fills every report field. An empty label
/// falls back to the signal's own name.
ComparisonReport compare(const SignalSource& sig, const AdcConfig& cfg, std::string label = {});

/// Table-style text rendering, F.O.M. rounded to three significant digits.
void render_table(std::ostream& out, const std::vector<ComparisonReport>& rows);

}  // namespace rampadc
