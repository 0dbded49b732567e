#include "autolog/kernels.hpp"

#include <cmath>

namespace autolog::kernels {

namespace {

inline double row_logit(const DesignMatrix& dm, std::span<const double> theta, std::int64_t i) {
    const std::int64_t xw = dm.x_width();
    const std::int64_t yw = dm.y_width();
    const double* xr = dm.x_lags.data() + i * xw;
    const double* yr = dm.y_lags.data() + i * yw;
    double z = theta[xw + yw];  // intercept
    for (std::int64_t k = 0; k < xw; ++k) z += theta[k] * xr[k];
    for (std::int64_t k = 0; k < yw; ++k) z += theta[xw + k] * yr[k];
    return z;
}

inline double row_ll_term(const DesignMatrix& dm, std::span<const double> theta,
                          const ClassWeights& w, std::int64_t i) {
    const double p = sigmoid_clamped(row_logit(dm, theta, i));
    return dm.targets[i] ? w.w1 * std::log(p) : w.w0 * std::log1p(-p);
}

// d/dz of the row's weighted log-likelihood term
inline double row_coef(const DesignMatrix& dm, std::span<const double> theta,
                       const ClassWeights& w, std::int64_t i) {
    const double p = sigmoid_clamped(row_logit(dm, theta, i));
    return dm.targets[i] ? w.w1 * (1.0 - p) : -w.w0 * p;
}

inline void accumulate_grad_row(const DesignMatrix& dm, std::span<const double> theta,
                                const ClassWeights& w, std::int64_t i, double* acc) {
    const std::int64_t xw = dm.x_width();
    const std::int64_t yw = dm.y_width();
    const double coef = row_coef(dm, theta, w, i);
    const double* xr = dm.x_lags.data() + i * xw;
    const double* yr = dm.y_lags.data() + i * yw;
    for (std::int64_t k = 0; k < xw; ++k) acc[k] += coef * xr[k];
    for (std::int64_t k = 0; k < yw; ++k) acc[xw + k] += coef * yr[k];
    acc[xw + yw] += coef;
}

inline std::int64_t block_count(std::int64_t n) { return (n + kBlockRows - 1) / kBlockRows; }

}  // namespace

void predict(const DesignMatrix& design, std::span<const double> theta,
             std::span<double> out, Exec exec) {
    const std::int64_t n = design.n_rows;
    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < n; ++i) out[i] = sigmoid_clamped(row_logit(design, theta, i));
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        out[i] = sigmoid_clamped(row_logit(design, theta, i));
    }
}

double weighted_log_likelihood(const DesignMatrix& design, std::span<const double> theta,
                               const ClassWeights& weights, Exec exec) {
    const std::int64_t n = design.n_rows;
    if (exec == Exec::Serial) {
        double total = 0.0;
        for (std::int64_t i = 0; i < n; ++i) total += row_ll_term(design, theta, weights, i);
        return total;
    }

    const std::int64_t nb = block_count(n);
    std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nb; ++b) {
        const std::int64_t lo = b * kBlockRows;
        const std::int64_t hi = std::min(lo + kBlockRows, n);
        double acc = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) acc += row_ll_term(design, theta, weights, i);
        partial[b] = acc;
    }
    double total = 0.0;
    for (std::int64_t b = 0; b < nb; ++b) total += partial[b];  // fixed order
    return total;
}

void gradient(const DesignMatrix& design, std::span<const double> theta,
              const ClassWeights& weights, std::span<double> out, Exec exec) {
    const std::int64_t n = design.n_rows;
    const std::int64_t p = design.param_count();
    std::fill(out.begin(), out.end(), 0.0);

    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < n; ++i) {
            accumulate_grad_row(design, theta, weights, i, out.data());
        }
        return;
    }

    const std::int64_t nb = block_count(n);
    std::vector<double> partial(nb * p, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nb; ++b) {
        const std::int64_t lo = b * kBlockRows;
        const std::int64_t hi = std::min(lo + kBlockRows, n);
        double* acc = partial.data() + b * p;
        for (std::int64_t i = lo; i < hi; ++i) {
            accumulate_grad_row(design, theta, weights, i, acc);
        }
    }
    for (std::int64_t b = 0; b < nb; ++b) {
        const double* acc = partial.data() + b * p;
        for (std::int64_t k = 0; k < p; ++k) out[k] += acc[k];
    }
}

std::vector<double> pearson_matrix(const AlignedDataset& dataset,
                                   std::vector<std::uint8_t>& degenerate, Exec exec) {
    const std::int64_t d = dataset.d();
    const std::int64_t n = dataset.step_count;
    std::vector<double> mean(d, 0.0), ss(d, 0.0);
    for (std::int64_t t = 0; t < n; ++t) {
        for (std::int64_t j = 0; j < d; ++j) mean[j] += dataset.x[t * d + j];
    }
    for (std::int64_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(n);
    for (std::int64_t t = 0; t < n; ++t) {
        for (std::int64_t j = 0; j < d; ++j) {
            const double c = dataset.x[t * d + j] - mean[j];
            ss[j] += c * c;
        }
    }
    degenerate.assign(d, 0);
    for (std::int64_t j = 0; j < d; ++j) {
        if (ss[j] <= 0.0) degenerate[j] = 1;
    }

    std::vector<double> m(d * d, 0.0);
    const std::int64_t pairs = d * (d - 1) / 2;

    auto pair_corr = [&](std::int64_t i, std::int64_t j) -> double {
        if (degenerate[i] || degenerate[j]) return 0.0;
        double cross = 0.0;
        for (std::int64_t t = 0; t < n; ++t) {
            cross += (dataset.x[t * d + i] - mean[i]) * (dataset.x[t * d + j] - mean[j]);
        }
        return cross / std::sqrt(ss[i] * ss[j]);
    };

    if (exec == Exec::Serial) {
        std::int64_t idx = 0;
        for (std::int64_t i = 0; i < d; ++i) {
            for (std::int64_t j = i + 1; j < d; ++j, ++idx) {
                const double r = pair_corr(i, j);
                m[i * d + j] = r;
                m[j * d + i] = r;
            }
        }
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < pairs; ++k) {
            // unrank k -> (i, j), i < j
            std::int64_t i = 0;
            std::int64_t rem = k;
            while (rem >= d - 1 - i) {
                rem -= d - 1 - i;
                ++i;
            }
            const std::int64_t j = i + 1 + rem;
            const double r = pair_corr(i, j);
            m[i * d + j] = r;
            m[j * d + i] = r;
        }
    }

    for (std::int64_t j = 0; j < d; ++j) {
        m[j * d + j] = degenerate[j] ? 0.0 : 1.0;
    }
    return m;
}

}  // namespace autolog::kernels
