#include "rampadc/plot.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace rampadc {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 40.0;
constexpr int kCurvePoints = 2000;

struct Canvas {
    double s_ref;

    [[nodiscard]] double x(double t) const { return kMargin + t * (kWidth - 2 * kMargin); }
    [[nodiscard]] double y(double amplitude) const {
        return kHeight - kMargin - (amplitude / s_ref) * (kHeight - 2 * kMargin);
    }
    [[nodiscard]] std::string point(double t, double amplitude) const {
        return fmt::format("{:.3f},{:.3f} ", x(t), y(amplitude));
    }
};

std::string staircase(const Canvas& c, const Trace& trace) {
    const auto frame = static_cast<double>(trace.config.clocks_per_frame);
    std::string pts;
    double level = 0.0;  // power-on register
    pts += c.point(0.0, level);
    for (const auto& r : trace.records) {
        const double t = static_cast<double>(r.end_clock) / frame;
        const double next = dac(r.output_code, trace.config);
        if (next != level) {
            pts += c.point(t, level);
            pts += c.point(t, next);
            level = next;
        }
    }
    pts += c.point(1.0, level);
    pts.pop_back();
    return pts;
}

}  // namespace

void write_comparison_svg(std::ostream& out, const SignalSource& sig, const Trace& typical,
                          const Trace& proposed) {
    const Canvas c{typical.config.s_ref};

    std::string input;
    for (int i = 0; i <= kCurvePoints; ++i) {
        const double t = static_cast<double>(i) / kCurvePoints;
        input += c.point(t, std::clamp(sig.evaluate(t), 0.0, c.s_ref));
    }
    input.pop_back();

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\">\n",
        kWidth, kHeight);
    out << fmt::format("<title>{} input, {} bits, {} clocks per frame</title>\n", sig.name(), typical.config.bits,
                       typical.config.clocks_per_frame);
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // Axes: unit frame horizontally, unit amplitude vertically.
    out << fmt::format("<path d=\"M {:.3f} {:.3f} L {:.3f} {:.3f} L {:.3f} {:.3f}\" fill=\"none\" stroke=\"gray\"/>\n",
                       c.x(0.0), c.y(c.s_ref), c.x(0.0), c.y(0.0), c.x(1.0), c.y(0.0));
    out << fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" font-size=\"12\">0</text>\n", c.x(0.0) - 12, c.y(0.0) + 14);
    out << fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" font-size=\"12\">1</text>\n", c.x(1.0) - 4, c.y(0.0) + 14);
    out << fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" font-size=\"12\">1</text>\n", c.x(0.0) - 12, c.y(c.s_ref) + 4);
    out << fmt::format("<polyline id=\"input\" fill=\"none\" stroke=\"green\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                       input);
    out << fmt::format("<polyline id=\"typical\" fill=\"none\" stroke=\"red\" stroke-width=\"1\" points=\"{}\"/>\n",
                       staircase(c, typical));
    out << fmt::format("<polyline id=\"proposed\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"{}\"/>\n",
                       staircase(c, proposed));
    out << "</svg>\n";
}

void write_comparison_svg(const std::string& path, const SignalSource& sig, const Trace& typical,
                          const Trace& proposed) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
    }
    write_comparison_svg(out, sig, typical, proposed);
    if (!out) {
        throw std::runtime_error(fmt::format("failed writing '{}'", path));
    }
}

}  // namespace rampadc
