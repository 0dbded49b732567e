#include "autolog/standardize.hpp"

#include <cmath>

namespace autolog {

Standardizer Standardizer::fit(const AlignedDataset& dataset) {
    const std::int64_t n = dataset.step_count;
    const std::int64_t d = dataset.d();
    if (n < 1) throw DataError("standardizer: empty dataset");

    Standardizer s;
    s.means.assign(d, 0.0);
    s.stds.assign(d, 1.0);
    for (std::int64_t t = 0; t < n; ++t) {
        for (std::int64_t j = 0; j < d; ++j) s.means[j] += dataset.x[t * d + j];
    }
    for (std::int64_t j = 0; j < d; ++j) s.means[j] /= static_cast<double>(n);
    std::vector<double> ss(d, 0.0);
    for (std::int64_t t = 0; t < n; ++t) {
        for (std::int64_t j = 0; j < d; ++j) {
            const double c = dataset.x[t * d + j] - s.means[j];
            ss[j] += c * c;
        }
    }
    for (std::int64_t j = 0; j < d; ++j) {
        const double var = ss[j] / static_cast<double>(n);
        s.stds[j] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    return s;
}

AlignedDataset Standardizer::apply(const AlignedDataset& dataset) const {
    const std::int64_t d = dataset.d();
    if (static_cast<std::int64_t>(means.size()) != d || static_cast<std::int64_t>(stds.size()) != d) {
        throw DataError("standardizer: column count mismatch (have " + std::to_string(means.size()) +
                        " stats, dataset has " + std::to_string(d) + " columns)");
    }
    AlignedDataset out = dataset;
    for (std::int64_t t = 0; t < dataset.step_count; ++t) {
        for (std::int64_t j = 0; j < d; ++j) {
            out.x[t * d + j] = (dataset.x[t * d + j] - means[j]) / stds[j];
        }
    }
    return out;
}

}  // namespace autolog
