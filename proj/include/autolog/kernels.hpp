#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "autolog/design.hpp"
#include "autolog/model.hpp"

namespace autolog::kernels {

/// Serial is the reference path; Parallel partitions rows into fixed blocks,
/// accumulates per-block partials with OpenMP, and reduces them in block
/// order, so results are bit-identical for any thread count.
enum class Exec { Serial, Parallel };

inline constexpr std::int64_t kBlockRows = 2048;

/// One probability per design row, in row order.
void predict(const DesignMatrix& design, std::span<const double> theta,
             std::span<double> out, Exec exec);

double weighted_log_likelihood(const DesignMatrix& design, std::span<const double> theta,
                               const ClassWeights& weights, Exec exec);

/// Gradient of the weighted log-likelihood, flat [a, b, c] layout.
void gradient(const DesignMatrix& design, std::span<const double> theta,
              const ClassWeights& weights, std::span<double> out, Exec exec);

/// Full Pearson matrix (d x d, row-major). degenerate[j] marks zero-variance
/// columns; their off-diagonal entries (and diagonal) are 0.
std::vector<double> pearson_matrix(const AlignedDataset& dataset,
                                   std::vector<std::uint8_t>& degenerate, Exec exec);

}  // namespace autolog::kernels
