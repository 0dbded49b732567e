#include "autolog/trainer.hpp"

#include <algorithm>
#include <cmath>

namespace autolog {

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0)) throw DataError("learning_rate must be > 0");
    if (max_epochs < 1) throw DataError("max_epochs must be >= 1");
    if (!(tolerance >= 0.0)) throw DataError("tolerance must be >= 0");
    if (adaptive_update_every < 1) throw DataError("adaptive_update_every must be >= 1");
    if (!(weight_cap >= 1.0)) throw DataError("weight_cap must be >= 1");
}

namespace {

struct ClassCounts {
    std::int64_t n0 = 0;
    std::int64_t n1 = 0;
};

ClassCounts count_classes(const DesignMatrix& design) {
    ClassCounts c;
    for (std::int64_t i = 0; i < design.n_rows; ++i) {
        if (design.targets[i]) {
            ++c.n1;
        } else {
            ++c.n0;
        }
    }
    return c;
}

ClassErrors class_errors_from_probs(const DesignMatrix& design, const std::vector<double>& probs) {
    double sum0 = 0.0, sum1 = 0.0;
    std::int64_t n0 = 0, n1 = 0;
    for (std::int64_t i = 0; i < design.n_rows; ++i) {
        if (design.targets[i]) {
            sum1 += 1.0 - probs[i];
            ++n1;
        } else {
            sum0 += probs[i];
            ++n0;
        }
    }
    if (n0 == 0 || n1 == 0) {
        throw DataError("class_errors: design contains a single class");
    }
    return {sum0 / static_cast<double>(n0), sum1 / static_cast<double>(n1)};
}

// Shared gradient-ascent loop. `update_weights` runs at the start of eligible
// epochs and returns true when it changed the weights (which invalidates the
// cached objective value).
template <typename WeightUpdater>
FitResult run_gradient_ascent(const DesignMatrix& design, ClassWeights weights,
                              const TrainConfig& config, kernels::Exec exec,
                              WeightUpdater update_weights) {
    const std::int64_t n = design.n_rows;
    const std::int64_t p = design.param_count();
    std::vector<double> theta(p, 0.0);  // p = 0.5 start
    std::vector<double> grad(p, 0.0);

    FitResult result;
    result.objective_trace.reserve(config.max_epochs);

    auto mean_loss = [&](const std::vector<double>& th, const ClassWeights& w) {
        return -kernels::weighted_log_likelihood(design, th, w, exec) / static_cast<double>(n);
    };

    double loss_prev = mean_loss(theta, weights);
    bool loss_prev_valid = true;

    for (std::int64_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        if (update_weights(epoch, theta, weights, result.weight_trace)) {
            loss_prev_valid = false;
        }
        if (!loss_prev_valid) {
            loss_prev = mean_loss(theta, weights);
            loss_prev_valid = true;
        }

        kernels::gradient(design, theta, weights, grad, exec);
        const double scale = config.learning_rate /
                             (static_cast<double>(n) * 0.5 * (weights.w0 + weights.w1));
        for (std::int64_t k = 0; k < p; ++k) theta[k] += scale * grad[k];

        const double loss = mean_loss(theta, weights);
        result.objective_trace.push_back(loss);
        result.epochs_run = epoch;

        if (!std::isfinite(loss)) {
            throw DivergenceError(epoch, config.learning_rate, "objective became non-finite");
        }
        const double ref = std::max(1.0, std::abs(loss_prev));
        if (loss - loss_prev > 1e-9 * ref) {
            throw DivergenceError(epoch, config.learning_rate,
                                  "objective increased at fixed weights");
        }
        if (std::abs(loss - loss_prev) < config.tolerance * ref) {
            result.converged = true;
            loss_prev = loss;
            break;
        }
        loss_prev = loss;
    }

    result.params = ModelParams::from_flat(theta, design.q, design.d);
    result.final_weights = weights;
    return result;
}

}  // namespace

ClassWeights simple_weights(const DesignMatrix& design) {
    const ClassCounts c = count_classes(design);
    if (c.n0 == 0 || c.n1 == 0) {
        throw DataError("simple_weights: design contains a single class (n0=" +
                        std::to_string(c.n0) + ", n1=" + std::to_string(c.n1) + ")");
    }
    const double n = static_cast<double>(c.n0 + c.n1);
    return {static_cast<double>(c.n1) / n, static_cast<double>(c.n0) / n};
}

ClassWeights adaptive_weight_update(const ClassWeights& weights, const ClassErrors& errors,
                                    double cap) {
    weights.validate();
    if (errors.e0 < 0.0 || errors.e0 > 1.0 || errors.e1 < 0.0 || errors.e1 > 1.0) {
        throw DataError("adaptive_weight_update: class errors must lie in [0,1]");
    }
    return {std::min(weights.w0 * std::exp(errors.e0), cap),
            std::min(weights.w1 * std::exp(errors.e1), cap)};
}

ClassErrors class_errors(const ModelParams& params, const DesignMatrix& design) {
    std::vector<double> probs(design.n_rows, 0.0);
    kernels::predict(design, params.to_flat(), probs, kernels::Exec::Parallel);
    return class_errors_from_probs(design, probs);
}

FitResult fit_at_fixed_weights(const DesignMatrix& design, const ClassWeights& weights,
                               const TrainConfig& config, kernels::Exec exec) {
    config.validate();
    weights.validate();
    if (design.n_rows == 0) throw DataError("fit: empty design");
    return run_gradient_ascent(design, weights, config, exec,
                               [](std::int64_t, const std::vector<double>&, ClassWeights&,
                                  std::vector<WeightTracePoint>&) { return false; });
}

FitResult fit(const DesignMatrix& design, const TrainConfig& config, kernels::Exec exec) {
    config.validate();
    if (design.n_rows == 0) throw DataError("fit: empty design");

    if (config.weighting != WeightingMode::Adaptive) {
        const ClassWeights w = config.weighting == WeightingMode::None ? ClassWeights{1.0, 1.0}
                                                                       : simple_weights(design);
        FitResult result = fit_at_fixed_weights(design, w, config, exec);
        result.weight_trace.insert(result.weight_trace.begin(), {0, w.w0, w.w1, 0.0, 0.0});
        return result;
    }

    // adaptive: start from the simple weights, then grow each weight by the
    // exponential of its class's current mean probability error
    const ClassWeights start = simple_weights(design);
    auto updater = [&](std::int64_t epoch, const std::vector<double>& theta, ClassWeights& w,
                       std::vector<WeightTracePoint>& trace) {
        if (epoch == 1) {
            trace.push_back({0, w.w0, w.w1, 0.0, 0.0});
            return false;
        }
        if ((epoch - 1) % config.adaptive_update_every != 0) return false;
        std::vector<double> probs(design.n_rows, 0.0);
        kernels::predict(design, theta, probs, exec);
        const ClassErrors errs = class_errors_from_probs(design, probs);
        w = adaptive_weight_update(w, errs, config.weight_cap);
        trace.push_back({epoch, w.w0, w.w1, errs.e0, errs.e1});
        return true;
    };
    return run_gradient_ascent(design, start, config, exec, updater);
}

}  // namespace autolog
