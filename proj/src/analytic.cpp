#include "rampadc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace rampadc::analytic {

namespace {

double levels(const AdcConfig& cfg) { return std::ldexp(1.0, cfg.bits); }

double lsb(const AdcConfig& cfg) { return cfg.s_ref / (levels(cfg) - 1.0); }

double clamp_input(double s, const AdcConfig& cfg) {
    return std::isnan(s) ? 0.0 : std::clamp(s, 0.0, cfg.s_ref);
}

Cycles floor_steps(double x) { return static_cast<Cycles>(std::floor(x)); }

double to_frames(Cycles c, const AdcConfig& cfg) {
    return static_cast<double>(c) / static_cast<double>(cfg.clocks_per_frame);
}

}  // namespace

Cycles typical_cycles_exact(double s_sample, const AdcConfig& cfg) {
    cfg.validate();
    const Cycles steps = floor_steps(clamp_input(s_sample, cfg) / lsb(cfg));
    return steps * cfg.k_count + cfg.m_sample + cfg.n_finalize;
}

double typical_time_exact(double s_sample, const AdcConfig& cfg) {
    return to_frames(typical_cycles_exact(s_sample, cfg), cfg);
}

Cycles typical_cycles_approx(double s_sample, const AdcConfig& cfg) {
    cfg.validate();
    return floor_steps(clamp_input(s_sample, cfg) / cfg.s_ref * levels(cfg)) + cfg.overhead();
}

double typical_time_approx(double s_sample, const AdcConfig& cfg) {
    return to_frames(typical_cycles_approx(s_sample, cfg), cfg);
}

Cycles proposed_cycles(double s_sample, double s_last, const AdcConfig& cfg) {
    cfg.validate();
    const double diff = std::abs(clamp_input(s_sample, cfg) - clamp_input(s_last, cfg));
    return floor_steps(diff / cfg.s_ref * levels(cfg)) + cfg.overhead();
}

double proposed_time(double s_sample, double s_last, const AdcConfig& cfg) {
    return to_frames(proposed_cycles(s_sample, s_last, cfg), cfg);
}

Cycles proposed_cycles_exact(double s_sample, double s_last, const AdcConfig& cfg) {
    cfg.validate();
    const double diff = std::abs(clamp_input(s_sample, cfg) - clamp_input(s_last, cfg));
    return floor_steps(diff / lsb(cfg)) * cfg.k_count + cfg.m_sample + cfg.n_finalize;
}

double proposed_time_exact(double s_sample, double s_last, const AdcConfig& cfg) {
    return to_frames(proposed_cycles_exact(s_sample, s_last, cfg), cfg);
}

Cycles proposed_cycles_recursive(double slope, double prev_time, const AdcConfig& cfg) {
    cfg.validate();
    if (prev_time < overhead_bound(cfg)) {
        throw std::invalid_argument(fmt::format(
            "previous conversion time {} is below the overhead bound {}", prev_time, overhead_bound(cfg)));
    }
    return floor_steps(std::abs(slope) * prev_time * levels(cfg) / cfg.s_ref) + cfg.overhead();
}

double proposed_time_recursive(double slope, double prev_time, const AdcConfig& cfg) {
    return to_frames(proposed_cycles_recursive(slope, prev_time, cfg), cfg);
}

double overhead_bound(const AdcConfig& cfg) {
    cfg.validate();
    return to_frames(cfg.overhead(), cfg);
}

double reduction_factor(double tc_proposed, double tc_typical) {
    if (!(tc_typical > 0.0)) {
        throw std::domain_error("typical conversion time must be positive");
    }
    return 1.0 - tc_proposed / tc_typical;
}

double reduction_estimate(double slope, double prev_time, const AdcConfig& cfg, double s_mean_fraction) {
    cfg.validate();
    const auto l = static_cast<double>(cfg.overhead());
    const double num = std::abs(slope) * prev_time * levels(cfg) / cfg.s_ref + l;
    const double den = s_mean_fraction * levels(cfg) + l;
    return 1.0 - num / den;
}

double reduction_instant(double slope, double prev_time, double s_sample, const AdcConfig& cfg) {
    cfg.validate();
    const auto l = static_cast<double>(cfg.overhead());
    const auto num = static_cast<double>(floor_steps(std::abs(slope) * prev_time * levels(cfg) / cfg.s_ref)) + l;
    const auto den = static_cast<double>(floor_steps(clamp_input(s_sample, cfg) / cfg.s_ref * levels(cfg))) + l;
    return 1.0 - num / den;
}

double reduction_bound(const AdcConfig& cfg) {
    cfg.validate();
    return 1.0 - static_cast<double>(cfg.overhead()) / std::ldexp(1.0, cfg.bits - 1);
}

double sample_count(double t0, double t1, double mean_tc) {
    if (!(t1 > t0)) {
        throw std::domain_error("measurement window needs t1 > t0");
    }
    if (!(mean_tc > 0.0)) {
        throw std::domain_error("mean conversion time must be positive");
    }
    return (t1 - t0) / mean_tc;
}

double speed_up(double ns_proposed, double ns_typical) {
    if (!(ns_typical > 0.0)) {
        throw std::domain_error("typical sample count must be positive");
    }
    return ns_proposed / ns_typical;
}

double reduction_from_counts(double t0, double t1, double ns_proposed, double ns_typical) {
    if (!(ns_proposed > 0.0) || !(ns_typical > 0.0)) {
        throw std::domain_error("sample counts must be positive");
    }
    const double window = t1 - t0;
    return reduction_factor(window / ns_proposed, window / ns_typical);
}

double reduction_percent(double speed_up) {
    if (!(speed_up > 0.0)) {
        throw std::domain_error("speed-up must be positive");
    }
    return (1.0 - 1.0 / speed_up) * 100.0;
}

}  // namespace rampadc::analytic
