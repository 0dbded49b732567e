#pragma once

#include <vector>

#include "autolog/evaluation.hpp"
#include "autolog/model_io.hpp"
#include "autolog/standardize.hpp"
#include "autolog/synth.hpp"

namespace autolog {

/// End-to-end knobs for one training run. delta_t and q are in steps of the
/// data granularity.
struct PipelineOptions {
    std::int64_t delta_t_steps = 30;
    std::int64_t q_steps = 20;
    TrainConfig train;
    SmoothingConfig smoothing;
    DecisionConfig decision;
    double train_fraction = 0.8;
    bool add_gc = false;
};

struct TrainOutcome {
    ModelBundle bundle;
    EvalSplit split;
    FitResult fit;
};

enum class EvalSlice { Train, Test, All };

struct EvalOutcome {
    PredictionTrace trace;
    std::vector<std::uint8_t> targets;  // design targets of the evaluated slice
    MetricsReport metrics;
};

/// align -> (augment) -> split -> standardize on the train half -> design ->
/// fit; the returned bundle carries everything evaluate/predict need.
TrainOutcome train_pipeline(const std::vector<SensorSeries>& sensors, const FailureLog& failures,
                            const PipelineOptions& options);

/// Rebuild the dataset from raw series exactly as training did (same
/// augmentation, split fraction and standardization) and score the model on
/// the requested slice.
EvalOutcome evaluate_pipeline(const ModelBundle& bundle, const std::vector<SensorSeries>& sensors,
                              const FailureLog& failures, EvalSlice slice);

/// Probability trace without metrics, over the requested slice.
PredictionTrace predict_pipeline(const ModelBundle& bundle, const std::vector<SensorSeries>& sensors,
                                 const FailureLog& failures, EvalSlice slice);

}  // namespace autolog
