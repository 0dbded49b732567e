#include "autolog/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "autolog/standardize.hpp"

namespace autolog {

namespace {

// Re-label one chronological slice [lo, hi) of the full timeline using only
// the episodes that fall inside it.
AlignedDataset slice_and_relabel(const AlignedDataset& full, std::int64_t lo, std::int64_t hi,
                                 const FailureLog& slice_failures) {
    const std::int64_t d = full.d();
    AlignedDataset out;
    out.step_count = hi - lo;
    out.sensor_names = full.sensor_names;
    out.delta_t_steps = full.delta_t_steps;
    out.granularity_minutes = full.granularity_minutes;
    out.start_epoch_seconds = full.start_epoch_seconds + lo * full.granularity_minutes * 60;
    out.x.assign(full.x.begin() + lo * d, full.x.begin() + hi * d);

    out.y_observed.assign(out.step_count, 0);
    for (const Episode& e : slice_failures.episodes) {
        for (std::int64_t t = e.start_step; t <= e.end_step; ++t) out.y_observed[t] = 1;
    }
    out.lambda_target.assign(out.step_count, 0);
    std::int64_t next_fail = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t t = out.step_count - 1; t >= 0; --t) {
        if (t + 1 < out.step_count && out.y_observed[t + 1]) next_fail = t + 1;
        out.lambda_target[t] =
            (next_fail != std::numeric_limits<std::int64_t>::max() && next_fail <= t + out.delta_t_steps)
                ? 1
                : 0;
    }
    return out;
}

}  // namespace

EvalSplit split_by_failures(const AlignedDataset& dataset, const FailureLog& failures,
                            double train_fraction) {
    failures.validate();
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw DataError("split_by_failures: train_fraction must lie in (0,1)");
    }
    const std::int64_t m = failures.count();
    if (m < 2) throw DataError("split_by_failures: need at least 2 failure episodes, have " +
                               std::to_string(m));
    const std::int64_t k = static_cast<std::int64_t>(std::floor(train_fraction * static_cast<double>(m)));
    if (k == 0 || k == m) {
        throw DataError("split_by_failures: infeasible split, would leave a half without failures (k=" +
                        std::to_string(k) + " of " + std::to_string(m) + ")");
    }

    const std::int64_t last_train_end = failures.episodes[k - 1].end_step;
    const std::int64_t first_test_start = failures.episodes[k].start_step;
    const std::int64_t boundary = (last_train_end + first_test_start + 1) / 2;

    EvalSplit split;
    split.boundary_step = boundary;
    split.train_failure_count = k;
    split.test_failure_count = m - k;
    for (std::int64_t i = 0; i < k; ++i) split.train_failures.episodes.push_back(failures.episodes[i]);
    for (std::int64_t i = k; i < m; ++i) {
        const Episode& e = failures.episodes[i];
        split.test_failures.episodes.push_back({e.start_step - boundary, e.end_step - boundary});
    }
    split.train = slice_and_relabel(dataset, 0, boundary, split.train_failures);
    split.test = slice_and_relabel(dataset, boundary, dataset.step_count, split.test_failures);
    return split;
}

MetricsReport compute_metrics(const std::vector<std::uint8_t>& decisions,
                              const std::vector<std::uint8_t>& targets,
                              const std::vector<Episode>& alarm_episodes,
                              const std::vector<Episode>& target_episodes) {
    if (decisions.size() != targets.size()) {
        throw DataError("compute_metrics: decisions and targets differ in length");
    }
    const std::int64_t n = static_cast<std::int64_t>(decisions.size());

    std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
#pragma omp parallel for schedule(static) reduction(+ : tp, fp, tn, fn)
    for (std::int64_t i = 0; i < n; ++i) {
        if (decisions[i] && targets[i]) {
            ++tp;
        } else if (decisions[i] && !targets[i]) {
            ++fp;
        } else if (!decisions[i] && targets[i]) {
            ++fn;
        } else {
            ++tn;
        }
    }
    const Confusion c{tp, fp, tn, fn};

    MetricsReport r;
    r.confusion = c;
    const auto ratio = [](std::int64_t num, std::int64_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    r.accuracy = ratio(c.tp + c.tn, n);
    r.recall = ratio(c.tp, c.tp + c.fn);
    r.specificity = ratio(c.tn, c.tn + c.fp);
    r.precision = ratio(c.tp, c.tp + c.fp);
    r.f1 = (r.precision + r.recall) > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
                                          : 0.0;

    const std::int64_t positives = c.tp + c.fn;
    const std::int64_t negatives = c.tn + c.fp;
    r.imbalance_rate = negatives == 0 ? std::numeric_limits<double>::infinity()
                                      : static_cast<double>(positives) / static_cast<double>(negatives);

    // An alarm episode is false when it overlaps no positively labeled step.
    for (const Episode& alarm : alarm_episodes) {
        bool overlaps = false;
        for (const Episode& target : target_episodes) {
            if (alarm.start_step <= target.end_step && target.start_step <= alarm.end_step) {
                overlaps = true;
                break;
            }
        }
        if (!overlaps) ++r.false_alarms;
    }
    return r;
}

FFFSResult select_q_fffs(const AlignedDataset& train, const AlignedDataset& validation,
                         const std::vector<std::int64_t>& q_candidates,
                         const TrainConfig& train_config, const SmoothingConfig& smoothing,
                         const DecisionConfig& decision, std::int64_t patience) {
    if (q_candidates.empty()) throw DataError("select_q_fffs: no candidates");

    const Standardizer stats = Standardizer::fit(train);
    const AlignedDataset train_std = stats.apply(train);
    const AlignedDataset val_std = stats.apply(validation);

    FFFSResult result;
    bool have_best = false;
    double best_f1 = -1.0;
    std::int64_t stale = 0;
    bool any_feasible = false;

    for (const std::int64_t q : q_candidates) {
        if (q < 0 || q >= train.step_count || q >= validation.step_count) continue;
        any_feasible = true;

        const DesignMatrix train_design = build_design(train_std, {q});
        const DesignMatrix val_design = build_design(val_std, {q});
        const FitResult fitres = fit(train_design, train_config);
        const PredictionTrace trace = make_trace(fitres.params, val_design, smoothing, decision);
        const MetricsReport metrics = compute_metrics(trace.decisions, val_design.targets,
                                                      trace.alarm_episodes,
                                                      find_runs(val_design.targets));
        result.candidate_scores.push_back({q, metrics.f1});

        const bool improves = !have_best || metrics.f1 > best_f1 ||
                              (metrics.f1 == best_f1 && q < result.chosen_q);
        if (!have_best || metrics.f1 > best_f1) {
            stale = 0;
        } else {
            ++stale;
        }
        if (improves) {
            best_f1 = std::max(best_f1, metrics.f1);
            result.chosen_q = q;
            have_best = true;
        }
        if (stale >= patience) break;
    }

    if (!any_feasible) throw DataError("select_q_fffs: no feasible candidate for the data length");
    return result;
}

std::vector<std::pair<double, MetricsReport>> sweep_threshold(
    const std::vector<double>& smoothed, const std::vector<std::uint8_t>& targets,
    const std::vector<double>& thresholds) {
    if (smoothed.size() != targets.size()) {
        throw DataError("sweep_threshold: sequence length mismatch");
    }
    const std::vector<Episode> target_episodes = find_runs(targets);
    std::vector<std::pair<double, MetricsReport>> out;
    out.reserve(thresholds.size());
    for (const double thr : thresholds) {
        DecisionConfig cfg{thr};
        std::vector<std::uint8_t> decisions;
        std::vector<Episode> alarms;
        decide(smoothed, cfg, decisions, alarms);
        out.emplace_back(thr, compute_metrics(decisions, targets, alarms, target_episodes));
    }
    return out;
}

}  // namespace autolog
