#pragma once

#include <string>

#include "autolog/inference.hpp"
#include "autolog/trainer.hpp"

namespace autolog {

/// Everything needed to reproduce predictions from raw CSVs: the fitted
/// parameters (with standardization statistics), the inference configuration,
/// and the training metadata. Persisted as versioned JSON; doubles round-trip
/// bit-exactly.
struct ModelBundle {
    ModelParams params;
    ClassWeights final_weights;
    SmoothingConfig smoothing;
    DecisionConfig decision;

    std::string weighting_mode = "none";
    double learning_rate = 1.0;
    std::int64_t max_epochs = 12000;
    double tolerance = 1e-7;
    std::int64_t adaptive_update_every = 100;
    double weight_cap = 100.0;
    std::int64_t seed = 0;
    std::int64_t epochs_run = 0;
    bool converged = false;
    double train_fraction = 0.8;
    bool add_gc = false;
};

inline constexpr int kModelFormatVersion = 1;

void save_model(const std::string& path, const ModelBundle& bundle);
ModelBundle load_model(const std::string& path);

std::string weighting_mode_name(WeightingMode mode);
WeightingMode weighting_mode_from_name(const std::string& name);

}  // namespace autolog
