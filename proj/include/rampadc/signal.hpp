#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace rampadc {

/// Clocks per unit frame of the reference benchmark (2^18, "256K").
inline constexpr std::int64_t kDefaultClocksPerFrame = 262144;

/// Constant input. The Table I DC level sits mid-way inside code 9 at 8 bits.
struct DcParams {
    double level = 9.5 / 255.0;
};

struct SineParams {
    double offset = 0.5;
    double amplitude = 0.5;
    double cycles = 1.0;  // periods per frame
};

/// (e^t - 1) / (e - 1): rises from 0 to full scale across the frame.
struct ExponentialParams {};

/// Periodic P-QRS-T morphology built from Gaussian bumps, min-max normalized.
struct SyntheticEcgParams {
    int beats = 8;
};

struct Knot {
    double t;
    double value;
};

struct TableParams {
    std::vector<Knot> knots;  // strictly increasing t
};

/// Deterministic input signal on the unit frame t in [0, 1].
///
/// Generator kinds are closed-form; the table kind linearly interpolates
/// between knots and clamps to the endpoint values outside the knot span.
/// Instances are immutable once built and may be shared across threads.
class SignalSource {
public:
    using Params =
        std::variant<DcParams, SineParams, ExponentialParams, SyntheticEcgParams, TableParams>;

    static SignalSource dc(double level);
    static SignalSource sine(double offset, double amplitude, double cycles);
    static SignalSource sine() { return sine(0.5, 0.5, 1.0); }
    static SignalSource exponential();
    static SignalSource synthetic_ecg(int beats);
    /// Raw table; knots are used as given (no normalization).
    static SignalSource table(std::vector<Knot> knots);

    /// Amplitude at normalized time t. Throws std::out_of_range for t outside [0, 1].
    [[nodiscard]] double evaluate(double t) const;

    /// d/dt of the signal in amplitude per frame. Generators return the analytic
    /// derivative. Tables use a central difference with the given step
    /// (one clock of the consuming configuration), one-sided at the frame edges.
    [[nodiscard]] double slope(double t, double fd_step = 1.0 / kDefaultClocksPerFrame) const;

    [[nodiscard]] bool is_generator() const {
        return !std::holds_alternative<TableParams>(params_);
    }
    [[nodiscard]] const Params& params() const { return params_; }
    [[nodiscard]] std::string name() const;

private:
    struct EcgNorm {
        double lo = 0.0;
        double hi = 1.0;
    };

    explicit SignalSource(Params p) : params_(std::move(p)) {}

    [[nodiscard]] double table_value(double t) const;

    Params params_;
    EcgNorm ecg_norm_{};
};

/// Reads a signal table file: `#` comments, blank lines skipped, each data line
/// either `value` (uniform spacing implied) or `t,value`. Times are rescaled
/// onto [0, 1] and amplitudes min-max normalized onto [0, 1]; a constant
/// table normalizes to 0.5. Throws std::runtime_error on malformed input.
SignalSource load_table(const std::filesystem::path& path);

/// Same as load_table but from in-memory text; `origin` labels error messages.
SignalSource parse_table(const std::string& text, const std::string& origin = "<memory>");

}  // namespace rampadc
