#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace autolog {

// Error taxonomy maps onto the CLI exit codes: usage errors are handled by
// the argument parser (exit 1), DataError maps to exit 2, DivergenceError
// to exit 3.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::int64_t epoch, double learning_rate, const std::string& detail)
        : std::runtime_error("training diverged at epoch " + std::to_string(epoch) +
                             " (learning_rate=" + std::to_string(learning_rate) + "): " + detail),
          epoch_(epoch),
          learning_rate_(learning_rate) {}

    std::int64_t epoch() const { return epoch_; }
    double learning_rate() const { return learning_rate_; }

private:
    std::int64_t epoch_;
    double learning_rate_;
};

}  // namespace autolog
