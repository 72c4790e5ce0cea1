#pragma once

#include <iosfwd>
#include <string>

#include "rampadc/adc.hpp"
#include "rampadc/signal.hpp"

namespace rampadc {

/// SVG 1.1 figure on the unit frame: input (green), typical staircase (red),
/// proposed staircase (black). Exactly three polylines.
void write_comparison_svg(std::ostream& out, const SignalSource& sig, const Trace& typical,
                          const Trace& proposed);
void write_comparison_svg(const std::string& path, const SignalSource& sig, const Trace& typical,
                          const Trace& proposed);

}  // namespace rampadc
