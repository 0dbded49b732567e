#pragma once

#include <cstdint>
#include <vector>

#include "autolog/inference.hpp"
#include "autolog/trainer.hpp"

namespace autolog {

/// Chronological split keyed on failure episodes, both halves re-labeled so
/// no target window crosses the boundary.
struct EvalSplit {
    AlignedDataset train;
    AlignedDataset test;
    FailureLog train_failures;
    FailureLog test_failures;  // shifted into the test half's index space
    std::int64_t train_failure_count = 0;
    std::int64_t test_failure_count = 0;
    std::int64_t boundary_step = 0;  // first step of the test half
};

struct Confusion {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;
};

struct MetricsReport {
    double accuracy = 0.0;
    double recall = 0.0;       // sensitivity
    double specificity = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    std::int64_t false_alarms = 0;  // alarm episodes overlapping no positive target step
    double imbalance_rate = 0.0;    // positives / negatives
    Confusion confusion;
};

struct FFFSCandidateScore {
    std::int64_t q = 0;
    double f1 = 0.0;
};

struct FFFSResult {
    std::int64_t chosen_q = 0;
    std::vector<FFFSCandidateScore> candidate_scores;
};

/// floor(train_fraction * episode_count) episodes go to train; the boundary
/// sits midway between the last train episode and the first test episode.
EvalSplit split_by_failures(const AlignedDataset& dataset, const FailureLog& failures,
                            double train_fraction);

/// Per-step confusion metrics plus episode-level false alarms.
/// target_episodes must be the maximal runs of 1s in `targets` (see find_runs).
MetricsReport compute_metrics(const std::vector<std::uint8_t>& decisions,
                              const std::vector<std::uint8_t>& targets,
                              const std::vector<Episode>& alarm_episodes,
                              const std::vector<Episode>& target_episodes);

/// Greedy forward scan over q candidates scored by validation F1; stops after
/// `patience` consecutive candidates without improvement. Ties break toward
/// the smaller q. Both datasets are taken raw; standardization statistics
/// come from `train` only.
FFFSResult select_q_fffs(const AlignedDataset& train, const AlignedDataset& validation,
                         const std::vector<std::int64_t>& q_candidates,
                         const TrainConfig& train_config, const SmoothingConfig& smoothing,
                         const DecisionConfig& decision, std::int64_t patience = 3);

std::vector<std::pair<double, MetricsReport>> sweep_threshold(
    const std::vector<double>& smoothed, const std::vector<std::uint8_t>& targets,
    const std::vector<double>& thresholds);

}  // namespace autolog
