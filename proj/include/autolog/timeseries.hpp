#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "autolog/errors.hpp"

namespace autolog {

/// Half-open intervals are never used for failures: both ends are inclusive
/// step indices.
struct Episode {
    std::int64_t start_step = 0;
    std::int64_t end_step = 0;
};

/// One sensor channel: equally spaced real-valued readings.
struct SensorSeries {
    std::string name;
    std::int64_t start_epoch_seconds = 0;  // 0 when the source used bare step indices
    std::int64_t granularity_minutes = 1;
    std::vector<double> values;

    /// Throws DataError on non-finite values or non-positive granularity.
    void validate() const;
};

/// Recorded failure episodes, sorted and non-overlapping.
struct FailureLog {
    std::vector<Episode> episodes;

    void validate() const;
    std::int64_t count() const { return static_cast<std::int64_t>(episodes.size()); }
};

/// Model-ready view of the sensors plus the observed failure state y and the
/// horizon target lambda. lambda[t] = 1 iff some failure step lies in the
/// window (t, t + delta_t_steps].
struct AlignedDataset {
    std::int64_t step_count = 0;
    std::vector<std::string> sensor_names;
    std::vector<double> x;  // row-major, step_count x d
    std::vector<std::uint8_t> y_observed;
    std::vector<std::uint8_t> lambda_target;
    std::int64_t delta_t_steps = 1;
    std::int64_t granularity_minutes = 1;
    std::int64_t start_epoch_seconds = 0;

    std::int64_t d() const { return static_cast<std::int64_t>(sensor_names.size()); }
    double at(std::int64_t t, std::int64_t j) const { return x[t * d() + j]; }
};

struct FlaggedPair {
    std::int64_t i = 0;
    std::int64_t j = 0;
    double r = 0.0;
};

/// Pairwise Pearson screen. Degenerate (zero-variance) columns produce r = 0
/// and land in degenerate_pairs instead of poisoning the matrix with NaN.
struct CorrelationReport {
    std::int64_t d = 0;
    std::vector<double> matrix;  // d x d, row-major
    std::vector<FlaggedPair> flagged_pairs;
    std::vector<FlaggedPair> degenerate_pairs;

    double at(std::int64_t i, std::int64_t j) const { return matrix[i * d + j]; }
};

/// Merge sensors and failures into one labeled dataset.
/// All sensors must share start, granularity and length; every episode must
/// fit inside the series.
AlignedDataset align_and_label(const std::vector<SensorSeries>& sensors,
                               const FailureLog& failures,
                               std::int64_t delta_t_steps);

/// Append two derived columns:
///   G[t] = elapsed functioning steps since the end of the last episode that
///          ended before t (t itself when no prior episode; 0 inside an episode)
///   C[t] = number of episodes fully ended before t
/// Both are computable at time t without future knowledge.
AlignedDataset augment_g_c(const AlignedDataset& dataset, const FailureLog& failures);

CorrelationReport correlation_screen(const AlignedDataset& dataset, double threshold);

/// Maximal runs of 1s in a binary sequence, as inclusive [start,end] index pairs.
std::vector<Episode> find_runs(const std::vector<std::uint8_t>& bits);

}  // namespace autolog
