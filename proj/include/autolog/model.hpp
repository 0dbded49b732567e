#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "autolog/design.hpp"

namespace autolog {

/// Per-class likelihood weights. (1,1) reduces to the unweighted model.
struct ClassWeights {
    double w0 = 1.0;
    double w1 = 1.0;

    void validate() const;
};

/// Fitted autologistic parameters plus the metadata needed to reproduce
/// predictions on raw data: lag depth, horizon, and the per-column
/// standardization applied before fitting.
struct ModelParams {
    std::int64_t q = 0;
    std::int64_t d = 0;
    std::vector<double> a;  // (q+1) x d, lag-major; a[k*d+j] multiplies x[t-k][j]
    std::vector<double> b;  // q+1; b[k] multiplies y[t-k]
    double c = 0.0;
    std::int64_t delta_t_steps = 1;
    std::vector<std::string> feature_names;
    std::vector<double> feature_means;  // size d; identity transform when empty
    std::vector<double> feature_stds;

    std::int64_t param_count() const { return (q + 1) * d + (q + 1) + 1; }

    /// flat layout [a..., b..., c], matching gradient order
    std::vector<double> to_flat() const;
    static ModelParams from_flat(std::span<const double> theta, std::int64_t q, std::int64_t d);
};

/// Probabilities are clamped into [kProbEps, 1 - kProbEps] so log terms stay
/// finite even when the logit saturates.
inline constexpr double kProbEps = 1e-12;

/// Numerically stable logistic of z, clamped away from {0,1}.
double sigmoid_clamped(double z);

/// p for one design row. Throws on dimension mismatch.
double probability(const ModelParams& params, const DesignMatrix& design, std::int64_t row);

/// Sum over rows of lambda*w1*log(p) + (1-lambda)*w0*log(1-p).
double weighted_log_likelihood(const ModelParams& params, const DesignMatrix& design,
                               const ClassWeights& weights);

/// Exact gradient of weighted_log_likelihood in flat [a, b, c] order.
std::vector<double> gradient(const ModelParams& params, const DesignMatrix& design,
                             const ClassWeights& weights);

}  // namespace autolog
