#include "autolog/pipeline.hpp"

namespace autolog {

TrainOutcome train_pipeline(const std::vector<SensorSeries>& sensors, const FailureLog& failures,
                            const PipelineOptions& options) {
    options.smoothing.validate();
    options.decision.validate();

    AlignedDataset dataset = align_and_label(sensors, failures, options.delta_t_steps);
    if (options.add_gc) dataset = augment_g_c(dataset, failures);

    TrainOutcome outcome;
    outcome.split = split_by_failures(dataset, failures, options.train_fraction);

    const Standardizer stats = Standardizer::fit(outcome.split.train);
    const AlignedDataset train_std = stats.apply(outcome.split.train);
    const DesignMatrix design = build_design(train_std, {options.q_steps});
    outcome.fit = fit(design, options.train);

    ModelBundle& bundle = outcome.bundle;
    bundle.params = outcome.fit.params;
    bundle.params.delta_t_steps = options.delta_t_steps;
    bundle.params.feature_names = dataset.sensor_names;
    bundle.params.feature_means = stats.means;
    bundle.params.feature_stds = stats.stds;
    bundle.final_weights = outcome.fit.final_weights;
    bundle.smoothing = options.smoothing;
    bundle.decision = options.decision;
    bundle.weighting_mode = weighting_mode_name(options.train.weighting);
    bundle.learning_rate = options.train.learning_rate;
    bundle.max_epochs = options.train.max_epochs;
    bundle.tolerance = options.train.tolerance;
    bundle.adaptive_update_every = options.train.adaptive_update_every;
    bundle.weight_cap = options.train.weight_cap;
    bundle.seed = options.train.seed;
    bundle.epochs_run = outcome.fit.epochs_run;
    bundle.converged = outcome.fit.converged;
    bundle.train_fraction = options.train_fraction;
    bundle.add_gc = options.add_gc;
    return outcome;
}

namespace {

DesignMatrix slice_design(const ModelBundle& bundle, const std::vector<SensorSeries>& sensors,
                          const FailureLog& failures, EvalSlice slice) {
    AlignedDataset dataset = align_and_label(sensors, failures, bundle.params.delta_t_steps);
    if (bundle.add_gc) dataset = augment_g_c(dataset, failures);
    if (dataset.d() != bundle.params.d) {
        throw DataError("model expects " + std::to_string(bundle.params.d) +
                        " feature columns, data provides " + std::to_string(dataset.d()));
    }

    Standardizer stats{bundle.params.feature_means, bundle.params.feature_stds};
    if (slice == EvalSlice::All) {
        return build_design(stats.apply(dataset), {bundle.params.q});
    }
    const EvalSplit split = split_by_failures(dataset, failures, bundle.train_fraction);
    const AlignedDataset& half = slice == EvalSlice::Train ? split.train : split.test;
    return build_design(stats.apply(half), {bundle.params.q});
}

}  // namespace

EvalOutcome evaluate_pipeline(const ModelBundle& bundle, const std::vector<SensorSeries>& sensors,
                              const FailureLog& failures, EvalSlice slice) {
    const DesignMatrix design = slice_design(bundle, sensors, failures, slice);
    EvalOutcome out;
    out.trace = make_trace(bundle.params, design, bundle.smoothing, bundle.decision);
    out.targets = design.targets;
    out.metrics = compute_metrics(out.trace.decisions, design.targets, out.trace.alarm_episodes,
                                  find_runs(design.targets));
    return out;
}

PredictionTrace predict_pipeline(const ModelBundle& bundle, const std::vector<SensorSeries>& sensors,
                                 const FailureLog& failures, EvalSlice slice) {
    const DesignMatrix design = slice_design(bundle, sensors, failures, slice);
    return make_trace(bundle.params, design, bundle.smoothing, bundle.decision);
}

}  // namespace autolog
