#include "autolog/design.hpp"

namespace autolog {

DesignMatrix build_design(const AlignedDataset& dataset, const LagConfig& lag) {
    if (lag.q_steps < 0) throw DataError("build_design: q_steps must be >= 0");
    const std::int64_t q = lag.q_steps;
    const std::int64_t d = dataset.d();
    const std::int64_t n = dataset.step_count;
    if (n <= q) {
        throw DataError("build_design: insufficient history, step_count " + std::to_string(n) +
                        " <= q " + std::to_string(q));
    }

    DesignMatrix dm;
    dm.q = q;
    dm.d = d;
    dm.n_rows = n - q;
    dm.x_lags.resize(dm.n_rows * dm.x_width());
    dm.y_lags.resize(dm.n_rows * dm.y_width());
    dm.targets.resize(dm.n_rows);
    dm.origin_steps.resize(dm.n_rows);

    for (std::int64_t i = 0; i < dm.n_rows; ++i) {
        const std::int64_t t = q + i;
        double* xr = dm.x_lags.data() + i * dm.x_width();
        double* yr = dm.y_lags.data() + i * dm.y_width();
        for (std::int64_t k = 0; k <= q; ++k) {
            for (std::int64_t j = 0; j < d; ++j) {
                xr[k * d + j] = dataset.x[(t - k) * d + j];
            }
            yr[k] = static_cast<double>(dataset.y_observed[t - k]);
        }
        dm.targets[i] = dataset.lambda_target[t];
        dm.origin_steps[i] = t;
    }
    return dm;
}

}  // namespace autolog
