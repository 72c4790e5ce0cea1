#pragma once

#include "rampadc/adc.hpp"

/// Closed-form conversion-time and figure-of-merit model of ramp-counter
/// converters. Times are returned in two units: whole clock cycles
/// (`*_cycles`) and unit frames (`*_time`, cycles / clocks_per_frame).
///
/// Nothing here calls into the simulator; the functions serve as an
/// independent oracle for run_frame and as a standalone calculator.
namespace rampadc::analytic {

// Clear-to-zero converter, exact (2^bits - 1) grid:
//   floor(S / (S_ref / (2^bits - 1))) * K + M + N
Cycles typical_cycles_exact(double s_sample, const AdcConfig& cfg);
double typical_time_exact(double s_sample, const AdcConfig& cfg);

// Clear-to-zero converter on the 2^bits approximation, K folded to 1:
//   floor(S * 2^bits / S_ref) + L
Cycles typical_cycles_approx(double s_sample, const AdcConfig& cfg);
double typical_time_approx(double s_sample, const AdcConfig& cfg);

// Retained-register converter: floor(|S - S_last| * 2^bits / S_ref) + L.
// s_last is the DAC level of the retained code.
Cycles proposed_cycles(double s_sample, double s_last, const AdcConfig& cfg);
double proposed_time(double s_sample, double s_last, const AdcConfig& cfg);

// Same on the exact grid with the counter step K: floor(|dS| / LSB) * K + M + N.
Cycles proposed_cycles_exact(double s_sample, double s_last, const AdcConfig& cfg);
double proposed_time_exact(double s_sample, double s_last, const AdcConfig& cfg);

/// Next conversion time from the previous one when the held-value change is
/// approximated by slope * previous time. slope is in amplitude per frame and
/// prev_time in frames. Throws std::invalid_argument if prev_time < L / clocks.
Cycles proposed_cycles_recursive(double slope, double prev_time, const AdcConfig& cfg);
double proposed_time_recursive(double slope, double prev_time, const AdcConfig& cfg);

/// Lower bound shared by both architectures: L / clocks_per_frame.
double overhead_bound(const AdcConfig& cfg);

/// 1 - tc_proposed / tc_typical. Throws std::domain_error unless tc_typical > 0.
double reduction_factor(double tc_proposed, double tc_typical);

/// Floorless estimate with the typical converter assumed to sit at
/// s_mean_fraction of full scale (one half by default):
///   1 - (|slope| * prev_time * 2^bits / S_ref + L) / (s_mean_fraction * 2^bits + L)
double reduction_estimate(double slope, double prev_time, const AdcConfig& cfg,
                          double s_mean_fraction = 0.5);

/// Instantaneous form that keeps both floors and uses the held sample itself
/// in the denominator.
double reduction_instant(double slope, double prev_time, double s_sample, const AdcConfig& cfg);

/// 1 - L / 2^(bits - 1).
double reduction_bound(const AdcConfig& cfg);

/// (t1 - t0) / mean_tc. Throws std::domain_error unless t1 > t0 and mean_tc > 0.
double sample_count(double t0, double t1, double mean_tc);

/// ns_proposed / ns_typical. Throws std::domain_error unless ns_typical > 0.
double speed_up(double ns_proposed, double ns_typical);

/// Reduction factor rebuilt from collected-sample counts over the window [t0, t1].
double reduction_from_counts(double t0, double t1, double ns_proposed, double ns_typical);

/// (1 - 1 / speed_up) * 100. Throws std::domain_error unless speed_up > 0.
double reduction_percent(double speed_up);

}  // namespace rampadc::analytic
