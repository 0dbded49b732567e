#include "autolog/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace autolog {

void SynthConfig::validate() const {
    if (duration_steps < 1 || sensor_count < 1 || failure_count < 1 ||
        failure_duration_steps < 1 || precursor_window_steps < 1) {
        throw DataError("synth: all counts must be >= 1");
    }
    if (!(noise_std > 0.0)) throw DataError("synth: noise_std must be > 0");
    if (!(ar_coefficient >= 0.0 && ar_coefficient < 1.0)) {
        throw DataError("synth: ar_coefficient must lie in [0,1)");
    }
    if (precursor_strength < 0.0) throw DataError("synth: precursor_strength must be >= 0");
}

namespace {

// marginal std of the AR(1) drift component, relative to noise_std
constexpr double kDriftScale = 0.1;

// Box-Muller on explicit 64-bit draws; std::normal_distribution is not
// reproducible across standard libraries.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double uniform01() {
        // 53-bit mantissa in [0,1)
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

    std::uint64_t integer_below(std::uint64_t bound) { return rng_() % bound; }

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

SynthData generate(const SynthConfig& config) {
    config.validate();

    const std::int64_t spacing =
        2 * (config.precursor_window_steps + config.failure_duration_steps);
    const std::int64_t lo = config.precursor_window_steps;  // room for a full ramp
    const std::int64_t hi = config.duration_steps - config.failure_duration_steps;
    const std::int64_t slack = hi - lo - (config.failure_count - 1) * spacing;
    if (slack < 0) {
        throw DataError("synth: cannot pack " + std::to_string(config.failure_count) +
                        " episodes of spacing " + std::to_string(spacing) + " into " +
                        std::to_string(config.duration_steps) + " steps");
    }

    GaussianSource rng(static_cast<std::uint64_t>(config.seed));

    // failure starts: sorted uniform offsets stretched to the minimum spacing
    std::vector<std::int64_t> offsets(config.failure_count);
    for (auto& v : offsets) {
        v = static_cast<std::int64_t>(rng.integer_below(static_cast<std::uint64_t>(slack) + 1));
    }
    std::sort(offsets.begin(), offsets.end());

    SynthData data;
    for (std::int64_t i = 0; i < config.failure_count; ++i) {
        const std::int64_t start = lo + offsets[i] + i * spacing;
        data.failures.episodes.push_back({start, start + config.failure_duration_steps - 1});
    }

    // slow mean-reverting drift plus white measurement noise; the drift is a
    // stationary AR(1) whose marginal std is kDriftScale * noise_std
    const double phi = config.ar_coefficient;
    const double drift_std = kDriftScale * config.noise_std;
    const double innov = drift_std * std::sqrt(1.0 - phi * phi);
    for (std::int64_t s = 0; s < config.sensor_count; ++s) {
        SensorSeries series;
        series.name = "sensor_" + std::to_string(s);
        series.granularity_minutes = 1;
        series.values.resize(config.duration_steps);
        double drift = drift_std * rng.gaussian();
        series.values[0] = drift + config.noise_std * rng.gaussian();
        for (std::int64_t t = 1; t < config.duration_steps; ++t) {
            drift = phi * drift + innov * rng.gaussian();
            series.values[t] = drift + config.noise_std * rng.gaussian();
        }
        data.sensors.push_back(std::move(series));
    }

    // precursor ramp on sensor 0, rising linearly to full amplitude at the
    // step before the failure starts
    const double amplitude = config.precursor_strength * config.noise_std;
    if (amplitude > 0.0) {
        const std::int64_t window = config.precursor_window_steps;
        for (const Episode& e : data.failures.episodes) {
            for (std::int64_t t = e.start_step - window; t < e.start_step; ++t) {
                const std::int64_t pos = t - (e.start_step - window) + 1;  // 1..window
                data.sensors[0].values[t] +=
                    amplitude * static_cast<double>(pos) / static_cast<double>(window);
            }
        }
    }
    return data;
}

}  // namespace autolog
