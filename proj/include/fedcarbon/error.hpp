#pragma once

#include <stdexcept>
#include <string>

namespace fedcarbon {

/// A scenario or profile that cannot drive the requested computation
/// (missing link efficiency, unknown preset, malformed file...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Training produced non-finite parameters or gradients.
struct DivergedError : std::runtime_error {
    int round;
    explicit DivergedError(int round_index)
        : std::runtime_error("training diverged (non-finite value) at round " + std::to_string(round_index)),
          round(round_index) {}
};

}
