#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "autolog/timeseries.hpp"

namespace autolog {

struct LagConfig {
    std::int64_t q_steps = 0;  // memory depth: lags 0..q of every regressor
};

/// Lagged regression rows over steps t in [q, step_count-1]. Row layout is
/// lag-major: x_lags[k*d + j] = x[t-k][j], y_lags[k] = y[t-k].
struct DesignMatrix {
    std::int64_t q = 0;
    std::int64_t d = 0;
    std::int64_t n_rows = 0;
    std::vector<double> x_lags;        // n_rows x (q+1)*d
    std::vector<double> y_lags;        // n_rows x (q+1)
    std::vector<std::uint8_t> targets; // lambda at the origin step
    std::vector<std::int64_t> origin_steps;

    std::int64_t x_width() const { return (q + 1) * d; }
    std::int64_t y_width() const { return q + 1; }
    /// flat parameter count: a block + b block + intercept
    std::int64_t param_count() const { return x_width() + y_width() + 1; }

    std::span<const double> x_row(std::int64_t i) const {
        return {x_lags.data() + i * x_width(), static_cast<std::size_t>(x_width())};
    }
    std::span<const double> y_row(std::int64_t i) const {
        return {y_lags.data() + i * y_width(), static_cast<std::size_t>(y_width())};
    }
};

/// Build the lagged design. Throws when the series is too short for q.
DesignMatrix build_design(const AlignedDataset& dataset, const LagConfig& lag);

}  // namespace autolog
