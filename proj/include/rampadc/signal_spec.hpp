#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "rampadc/signal.hpp"

namespace rampadc {

/// Malformed signal spec; `position` is the 1-based column of the offending text.
class SignalSpecError : public std::runtime_error {
public:
    SignalSpecError(std::size_t position, const std::string& what);
    [[nodiscard]] std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Parses the signal mini-language:
///   dc:<level>
///   sine[:offset=<o>,amp=<a>,cycles=<c>]   (missing keys take the benchmark defaults)
///   exp
///   ecg:<path>
///   ecg:synthetic[,beats=<k>]
SignalSource parse_signal_spec(std::string_view spec);

}  // namespace rampadc
