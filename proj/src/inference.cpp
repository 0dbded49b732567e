#include "autolog/inference.hpp"

namespace autolog {

void SmoothingConfig::validate() const {
    if (window < 1) throw DataError("smoothing window must be >= 1");
}

void DecisionConfig::validate() const {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw DataError("decision threshold must lie in (0,1)");
    }
}

std::vector<double> predict_probs(const ModelParams& params, const DesignMatrix& design,
                                  kernels::Exec exec) {
    if (params.q != design.q || params.d != design.d) {
        throw DataError("predict_probs: model/design dimension mismatch");
    }
    std::vector<double> probs(design.n_rows, 0.0);
    kernels::predict(design, params.to_flat(), probs, exec);
    return probs;
}

std::vector<double> smooth(const std::vector<double>& raw, const SmoothingConfig& config) {
    config.validate();
    if (raw.empty()) throw DataError("smooth: empty probability sequence");
    const std::int64_t n = static_cast<std::int64_t>(raw.size());
    std::vector<double> out(n, 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t lo = std::max<std::int64_t>(0, i - config.window + 1);
        double sum = 0.0;
        for (std::int64_t k = lo; k <= i; ++k) sum += raw[k];
        out[i] = sum / static_cast<double>(i - lo + 1);
    }
    return out;
}

void decide(const std::vector<double>& smoothed, const DecisionConfig& config,
            std::vector<std::uint8_t>& decisions, std::vector<Episode>& alarm_episodes) {
    config.validate();
    decisions.assign(smoothed.size(), 0);
    for (std::size_t i = 0; i < smoothed.size(); ++i) {
        decisions[i] = smoothed[i] > config.threshold ? 1 : 0;
    }
    alarm_episodes = find_runs(decisions);
}

PredictionTrace make_trace(const ModelParams& params, const DesignMatrix& design,
                           const SmoothingConfig& smoothing, const DecisionConfig& decision,
                           kernels::Exec exec) {
    PredictionTrace trace;
    trace.origin_steps = design.origin_steps;
    trace.raw_probs = predict_probs(params, design, exec);
    trace.smoothed_probs = smooth(trace.raw_probs, smoothing);
    decide(trace.smoothed_probs, decision, trace.decisions, trace.alarm_episodes);
    return trace;
}

}  // namespace autolog
