#pragma once

#include <cstdint>
#include <vector>

#include "autolog/timeseries.hpp"

namespace autolog {

/// Per-column zero-mean unit-variance transform. Statistics must come from
/// training data only; constant columns keep std 1 so the transform stays
/// total.
struct Standardizer {
    std::vector<double> means;
    std::vector<double> stds;

    static Standardizer fit(const AlignedDataset& dataset);
    AlignedDataset apply(const AlignedDataset& dataset) const;
};

}  // namespace autolog
