#pragma once

#include <cstdint>
#include <vector>

#include "autolog/kernels.hpp"
#include "autolog/model.hpp"

namespace autolog {

struct SmoothingConfig {
    std::int64_t window = 10;  // trailing steps averaged; 1 disables smoothing

    void validate() const;
};

struct DecisionConfig {
    double threshold = 0.9;  // strict: decision = smoothed > threshold

    void validate() const;
};

/// Per-step outputs of a fitted model over one design: raw probabilities,
/// their trailing-window means, the threshold decisions, and the maximal
/// runs of positive decisions (alarm episodes, in position space).
struct PredictionTrace {
    std::vector<std::int64_t> origin_steps;
    std::vector<double> raw_probs;
    std::vector<double> smoothed_probs;
    std::vector<std::uint8_t> decisions;
    std::vector<Episode> alarm_episodes;
};

/// One probability per design row, in design order.
std::vector<double> predict_probs(const ModelParams& params, const DesignMatrix& design,
                                  kernels::Exec exec = kernels::Exec::Parallel);

/// Trailing mean over up to `window` values; windows at the head shrink so
/// the output has the same length as the input.
std::vector<double> smooth(const std::vector<double>& raw, const SmoothingConfig& config);

/// Threshold the smoothed sequence and extract alarm episodes.
void decide(const std::vector<double>& smoothed, const DecisionConfig& config,
            std::vector<std::uint8_t>& decisions, std::vector<Episode>& alarm_episodes);

/// predict -> smooth -> decide in one pass.
PredictionTrace make_trace(const ModelParams& params, const DesignMatrix& design,
                           const SmoothingConfig& smoothing, const DecisionConfig& decision,
                           kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace autolog
