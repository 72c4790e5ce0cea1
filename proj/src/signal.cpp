#include "rampadc/signal.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace rampadc {

namespace {

void require_unit_time(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::out_of_range(fmt::format("normalized time {} outside [0, 1]", t));
    }
}

// One heartbeat on the phase interval [0, 1): amplitude, centre, width.
struct Wave {
    double amplitude;
    double centre;
    double width;
};

constexpr std::array<Wave, 5> kEcgWaves{{
    {0.12, 0.20, 0.025},   // P
    {-0.12, 0.36, 0.010},  // Q
    {1.00, 0.40, 0.012},   // R
    {-0.25, 0.44, 0.012},  // S
    {0.30, 0.65, 0.040},   // T
}};

// Sum over the neighbouring beats keeps the waveform exactly periodic in phase.
double ecg_raw(double phase) {
    double v = 0.0;
    for (const auto& w : kEcgWaves) {
        for (int shift = -1; shift <= 1; ++shift) {
            const double x = phase - w.centre + shift;
            v += w.amplitude * std::exp(-x * x / (2.0 * w.width * w.width));
        }
    }
    return v;
}

double ecg_raw_derivative(double phase) {
    double d = 0.0;
    for (const auto& w : kEcgWaves) {
        for (int shift = -1; shift <= 1; ++shift) {
            const double x = phase - w.centre + shift;
            const double s2 = w.width * w.width;
            d += -w.amplitude * x / s2 * std::exp(-x * x / (2.0 * s2));
        }
    }
    return d;
}

// Golden-section refinement of an extremum bracketed by [a, b].
template <typename F>
double refine_extremum(F f, double a, double b, bool maximize) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto better = [&](double x, double y) { return maximize ? f(x) > f(y) : f(x) < f(y); };
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    for (int i = 0; i < 100 && (b - a) > 1e-14; ++i) {
        if (better(c, d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    return f(0.5 * (a + b));
}

double ecg_phase(double t, int beats) {
    const double x = t * beats;
    return x - std::floor(x);
}

double parse_double(std::string_view field, const std::string& origin, int line_no) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
        field.remove_prefix(1);
    }
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
        field.remove_suffix(1);
    }
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (field.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw std::runtime_error(
            fmt::format("{}:{}: non-numeric field '{}'", origin, line_no, std::string(field)));
    }
    return v;
}

}  // namespace

SignalSource SignalSource::dc(double level) {
    if (!(level >= 0.0 && level <= 1.0)) {
        throw std::invalid_argument(fmt::format("dc level {} outside [0, 1]", level));
    }
    return SignalSource(DcParams{level});
}

SignalSource SignalSource::sine(double offset, double amplitude, double cycles) {
    const double lo = offset - std::abs(amplitude);
    const double hi = offset + std::abs(amplitude);
    if (!(lo >= 0.0 && hi <= 1.0)) {
        throw std::invalid_argument(
            fmt::format("sine offset={} amp={} leaves the [0, 1] range", offset, amplitude));
    }
    if (!(cycles >= 0.0) || !std::isfinite(cycles)) {
        throw std::invalid_argument(fmt::format("sine cycles must be >= 0, got {}", cycles));
    }
    return SignalSource(SineParams{offset, amplitude, cycles});
}

SignalSource SignalSource::exponential() { return SignalSource(ExponentialParams{}); }

SignalSource SignalSource::synthetic_ecg(int beats) {
    if (beats < 1) {
        throw std::invalid_argument(fmt::format("synthetic ECG needs beats >= 1, got {}", beats));
    }
    SignalSource s(SyntheticEcgParams{beats});

    constexpr int kGrid = 8192;
    int imax = 0;
    int imin = 0;
    double vmax = ecg_raw(0.0);
    double vmin = vmax;
    for (int i = 1; i < kGrid; ++i) {
        const double v = ecg_raw(static_cast<double>(i) / kGrid);
        if (v > vmax) {
            vmax = v;
            imax = i;
        }
        if (v < vmin) {
            vmin = v;
            imin = i;
        }
    }
    const double step = 1.0 / kGrid;
    s.ecg_norm_.hi = std::max(vmax, refine_extremum(ecg_raw, (imax - 1) * step, (imax + 1) * step, true));
    s.ecg_norm_.lo = std::min(vmin, refine_extremum(ecg_raw, (imin - 1) * step, (imin + 1) * step, false));
    return s;
}

SignalSource SignalSource::table(std::vector<Knot> knots) {
    if (knots.empty()) {
        throw std::invalid_argument("signal table has no knots");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i].t > knots[i - 1].t)) {
            throw std::invalid_argument(
                fmt::format("table times must be strictly increasing (knot {})", i));
        }
    }
    return SignalSource(TableParams{std::move(knots)});
}

double SignalSource::table_value(double t) const {
    const auto& k = std::get<TableParams>(params_).knots;
    if (t <= k.front().t) {
        return k.front().value;
    }
    if (t >= k.back().t) {
        return k.back().value;
    }
    auto hi = std::upper_bound(k.begin(), k.end(), t, [](double x, const Knot& kn) { return x < kn.t; });
    auto lo = hi - 1;
    const double w = (t - lo->t) / (hi->t - lo->t);
    return lo->value + w * (hi->value - lo->value);
}

double SignalSource::evaluate(double t) const {
    require_unit_time(t);
    return std::visit(
        [&](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, DcParams>) {
                return p.level;
            } else if constexpr (std::is_same_v<P, SineParams>) {
                return p.offset + p.amplitude * std::sin(2.0 * std::numbers::pi * p.cycles * t);
            } else if constexpr (std::is_same_v<P, ExponentialParams>) {
                return std::expm1(t) / (std::numbers::e - 1.0);
            } else if constexpr (std::is_same_v<P, SyntheticEcgParams>) {
                const double v = (ecg_raw(ecg_phase(t, p.beats)) - ecg_norm_.lo) /
                                 (ecg_norm_.hi - ecg_norm_.lo);
                return std::clamp(v, 0.0, 1.0);
            } else {
                return table_value(t);
            }
        },
        params_);
}

double SignalSource::slope(double t, double fd_step) const {
    require_unit_time(t);
    return std::visit(
        [&](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, DcParams>) {
                return 0.0;
            } else if constexpr (std::is_same_v<P, SineParams>) {
                const double w = 2.0 * std::numbers::pi * p.cycles;
                return p.amplitude * w * std::cos(w * t);
            } else if constexpr (std::is_same_v<P, ExponentialParams>) {
                return std::exp(t) / (std::numbers::e - 1.0);
            } else if constexpr (std::is_same_v<P, SyntheticEcgParams>) {
                const double span = ecg_norm_.hi - ecg_norm_.lo;
                const double v = (ecg_raw(ecg_phase(t, p.beats)) - ecg_norm_.lo) / span;
                if (v < 0.0 || v > 1.0) {
                    return 0.0;  // clamped region
                }
                return ecg_raw_derivative(ecg_phase(t, p.beats)) * p.beats / span;
            } else {
                if (!(fd_step > 0.0)) {
                    throw std::invalid_argument("finite-difference step must be positive");
                }
                const double h = fd_step;
                if (t - h < 0.0) {
                    return (table_value(std::min(t + h, 1.0)) - table_value(t)) / (std::min(t + h, 1.0) - t);
                }
                if (t + h > 1.0) {
                    return (table_value(t) - table_value(t - h)) / h;
                }
                return (table_value(t + h) - table_value(t - h)) / (2.0 * h);
            }
        },
        params_);
}

std::string SignalSource::name() const {
    return std::visit(
        [](const auto& p) -> std::string {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, DcParams>) {
                return "DC";
            } else if constexpr (std::is_same_v<P, SineParams>) {
                return "Sine";
            } else if constexpr (std::is_same_v<P, ExponentialParams>) {
                return "Exponential";
            } else if constexpr (std::is_same_v<P, SyntheticEcgParams>) {
                return "ECG";
            } else {
                return "Table";
            }
        },
        params_);
}

SignalSource parse_table(const std::string& text, const std::string& origin) {
    std::vector<Knot> raw;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int form = 0;  // 1: value only, 2: t,value
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto comma = line.find(',');
        const int this_form = comma == std::string::npos ? 1 : 2;
        if (form == 0) {
            form = this_form;
        } else if (form != this_form) {
            throw std::runtime_error(
                fmt::format("{}:{}: mixes `value` and `t,value` records", origin, line_no));
        }
        std::string_view sv(line);
        if (this_form == 1) {
            raw.push_back({static_cast<double>(raw.size()), parse_double(sv, origin, line_no)});
        } else {
            const double t = parse_double(sv.substr(0, comma), origin, line_no);
            const double v = parse_double(sv.substr(comma + 1), origin, line_no);
            if (!raw.empty() && !(t > raw.back().t)) {
                throw std::runtime_error(
                    fmt::format("{}:{}: timestamp {} is not increasing", origin, line_no, t));
            }
            raw.push_back({t, v});
        }
    }
    if (raw.empty()) {
        throw std::runtime_error(fmt::format("{}: signal table is empty", origin));
    }

    const double t0 = raw.front().t;
    const double t_span = raw.back().t - t0;
    const auto [vmin_it, vmax_it] = std::minmax_element(
        raw.begin(), raw.end(), [](const Knot& a, const Knot& b) { return a.value < b.value; });
    const double vmin = vmin_it->value;
    const double v_span = vmax_it->value - vmin;

    std::vector<Knot> knots;
    knots.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        double t = t_span > 0.0 ? (raw[i].t - t0) / t_span : 0.0;
        if (i + 1 == raw.size() && t_span > 0.0) {
            t = 1.0;
        }
        const double v = v_span > 0.0 ? (raw[i].value - vmin) / v_span : 0.5;
        knots.push_back({t, v});
    }
    return SignalSource::table(std::move(knots));
}

SignalSource load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open signal table '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_table(buf.str(), path.string());
}

}  // namespace rampadc
