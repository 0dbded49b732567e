#pragma once

#include <cstdint>
#include <vector>

#include "autolog/kernels.hpp"
#include "autolog/model.hpp"

namespace autolog {

enum class WeightingMode { None, Simple, Adaptive };

struct TrainConfig {
    WeightingMode weighting = WeightingMode::None;
    double learning_rate = 1.0;
    std::int64_t max_epochs = 12000;
    double tolerance = 1e-7;  // relative objective change, at fixed weights
    std::int64_t adaptive_update_every = 100;
    double weight_cap = 100.0;
    std::int64_t seed = 0;  // recorded for reproducibility; initialization is deterministic

    void validate() const;
};

/// Mean absolute probability error per class: e1 over rows with lambda=1,
/// e0 over rows with lambda=0. Threshold-free, so each lies in [0,1].
struct ClassErrors {
    double e0 = 0.0;
    double e1 = 0.0;
};

struct WeightTracePoint {
    std::int64_t epoch = 0;
    double w0 = 1.0;
    double w1 = 1.0;
    double e0 = 0.0;
    double e1 = 0.0;
};

struct FitResult {
    ModelParams params;
    ClassWeights final_weights;
    std::vector<WeightTracePoint> weight_trace;
    std::vector<double> objective_trace;  // mean negative weighted log-likelihood per epoch
    bool converged = false;
    std::int64_t epochs_run = 0;
};

/// Cross-frequency weights: w0 = n1/n, w1 = n0/n, so each class is weighted
/// by the other class's share and w0 + w1 = 1.
ClassWeights simple_weights(const DesignMatrix& design);

/// Multiplicative update w' = min(w * exp(e), cap); never decreases a weight.
ClassWeights adaptive_weight_update(const ClassWeights& weights, const ClassErrors& errors,
                                    double cap);

ClassErrors class_errors(const ModelParams& params, const DesignMatrix& design);

/// Full-batch gradient ascent on the weighted log-likelihood at weights held
/// fixed for the whole run. Steps use the per-row, per-unit-weight mean
/// gradient so the default learning rate is independent of dataset size and
/// of the weights' absolute scale.
FitResult fit_at_fixed_weights(const DesignMatrix& design, const ClassWeights& weights,
                               const TrainConfig& config,
                               kernels::Exec exec = kernels::Exec::Parallel);

/// Dispatch on config.weighting: none -> (1,1); simple -> frequency weights;
/// adaptive -> start from simple weights and update them every
/// adaptive_update_every epochs from the per-class errors.
FitResult fit(const DesignMatrix& design, const TrainConfig& config,
              kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace autolog
