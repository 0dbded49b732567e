#include "autolog/model.hpp"

#include <algorithm>
#include <cmath>

#include "autolog/kernels.hpp"

namespace autolog {

void ClassWeights::validate() const {
    if (!(w0 > 0.0) || !(w1 > 0.0) || !std::isfinite(w0) || !std::isfinite(w1)) {
        throw DataError("class weights must be strictly positive and finite");
    }
}

std::vector<double> ModelParams::to_flat() const {
    std::vector<double> theta;
    theta.reserve(param_count());
    theta.insert(theta.end(), a.begin(), a.end());
    theta.insert(theta.end(), b.begin(), b.end());
    theta.push_back(c);
    return theta;
}

ModelParams ModelParams::from_flat(std::span<const double> theta, std::int64_t q, std::int64_t d) {
    ModelParams p;
    p.q = q;
    p.d = d;
    const std::int64_t xw = (q + 1) * d;
    const std::int64_t yw = q + 1;
    if (static_cast<std::int64_t>(theta.size()) != xw + yw + 1) {
        throw DataError("from_flat: parameter vector has wrong length");
    }
    p.a.assign(theta.begin(), theta.begin() + xw);
    p.b.assign(theta.begin() + xw, theta.begin() + xw + yw);
    p.c = theta[xw + yw];
    return p;
}

double sigmoid_clamped(double z) {
    double p;
    if (z >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-z));
    } else {
        const double e = std::exp(z);
        p = e / (1.0 + e);
    }
    return std::clamp(p, kProbEps, 1.0 - kProbEps);
}

namespace {

void check_dims(const ModelParams& params, const DesignMatrix& design) {
    if (params.q != design.q || params.d != design.d) {
        throw DataError("model/design dimension mismatch: model (q=" + std::to_string(params.q) +
                        ", d=" + std::to_string(params.d) + "), design (q=" + std::to_string(design.q) +
                        ", d=" + std::to_string(design.d) + ")");
    }
    if (static_cast<std::int64_t>(params.a.size()) != (params.q + 1) * params.d ||
        static_cast<std::int64_t>(params.b.size()) != params.q + 1) {
        throw DataError("model parameter blocks have inconsistent sizes");
    }
}

}  // namespace

double probability(const ModelParams& params, const DesignMatrix& design, std::int64_t row) {
    check_dims(params, design);
    if (row < 0 || row >= design.n_rows) throw DataError("probability: row index out of range");
    const auto theta = params.to_flat();
    double out = 0.0;
    std::span<double> span_out(&out, 1);
    // reuse the batch kernel on a single-row view
    DesignMatrix one;
    one.q = design.q;
    one.d = design.d;
    one.n_rows = 1;
    one.x_lags.assign(design.x_row(row).begin(), design.x_row(row).end());
    one.y_lags.assign(design.y_row(row).begin(), design.y_row(row).end());
    one.targets = {design.targets[row]};
    one.origin_steps = {design.origin_steps[row]};
    kernels::predict(one, theta, span_out, kernels::Exec::Serial);
    return out;
}

double weighted_log_likelihood(const ModelParams& params, const DesignMatrix& design,
                               const ClassWeights& weights) {
    check_dims(params, design);
    weights.validate();
    if (design.n_rows == 0) throw DataError("weighted_log_likelihood: empty design");
    return kernels::weighted_log_likelihood(design, params.to_flat(), weights,
                                            kernels::Exec::Parallel);
}

std::vector<double> gradient(const ModelParams& params, const DesignMatrix& design,
                             const ClassWeights& weights) {
    check_dims(params, design);
    weights.validate();
    std::vector<double> out(params.param_count(), 0.0);
    kernels::gradient(design, params.to_flat(), weights, out, kernels::Exec::Parallel);
    return out;
}

}  // namespace autolog
