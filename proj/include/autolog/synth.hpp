#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "autolog/timeseries.hpp"

namespace autolog {

/// Reproducible equipment-like sensor streams with planted failures. Each
/// sensor is a slow mean-reverting AR(1) drift plus white measurement noise
/// of standard deviation noise_std; a linear precursor ramp of peak amplitude
/// precursor_strength * noise_std is added to sensor 0 over the
/// precursor_window_steps leading into each failure.
struct SynthConfig {
    std::int64_t seed = 1;
    std::int64_t duration_steps = 10080;  // one week of minutes
    std::int64_t sensor_count = 1;
    std::int64_t failure_count = 30;
    std::int64_t failure_duration_steps = 5;
    std::int64_t precursor_window_steps = 60;
    double precursor_strength = 3.0;  // in units of noise_std
    double noise_std = 1.0;
    double ar_coefficient = 0.9;  // in [0,1)

    void validate() const;
};

struct SynthData {
    std::vector<SensorSeries> sensors;
    FailureLog failures;
};

/// Deterministic for a given config. Failure starts are a seeded uniform draw
/// with minimum spacing 2 * (precursor_window + failure_duration); throws
/// when that many episodes cannot be packed into the duration.
SynthData generate(const SynthConfig& config);

}  // namespace autolog
