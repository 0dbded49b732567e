#include "autolog/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "autolog/kernels.hpp"

namespace autolog {

void SensorSeries::validate() const {
    if (granularity_minutes <= 0) {
        throw DataError("sensor '" + name + "': granularity must be positive");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw DataError("sensor '" + name + "': non-finite value at step " + std::to_string(i));
        }
    }
}

void FailureLog::validate() const {
    std::int64_t prev_end = -1;
    for (std::size_t i = 0; i < episodes.size(); ++i) {
        const Episode& e = episodes[i];
        if (e.start_step < 0 || e.end_step < e.start_step) {
            throw DataError("failure episode " + std::to_string(i) + " has invalid bounds [" +
                            std::to_string(e.start_step) + "," + std::to_string(e.end_step) + "]");
        }
        if (e.start_step <= prev_end) {
            throw DataError("failure episodes must be sorted and non-overlapping (episode " +
                            std::to_string(i) + ")");
        }
        prev_end = e.end_step;
    }
}

namespace {

// lambda[t] = 1 iff a failure step exists in (t, t + delta_t]. Scans from the
// right keeping the index of the next failure step.
std::vector<std::uint8_t> label_horizon(const std::vector<std::uint8_t>& y, std::int64_t delta_t) {
    const std::int64_t n = static_cast<std::int64_t>(y.size());
    std::vector<std::uint8_t> lambda(n, 0);
    std::int64_t next_fail = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t t = n - 1; t >= 0; --t) {
        if (t + 1 < n && y[t + 1]) next_fail = t + 1;
        lambda[t] = (next_fail != std::numeric_limits<std::int64_t>::max() && next_fail <= t + delta_t) ? 1 : 0;
    }
    return lambda;
}

}  // namespace

AlignedDataset align_and_label(const std::vector<SensorSeries>& sensors,
                               const FailureLog& failures,
                               std::int64_t delta_t_steps) {
    if (sensors.empty()) {
        throw DataError("align_and_label: need at least one sensor series");
    }
    if (delta_t_steps < 1) {
        throw DataError("align_and_label: delta_t_steps must be >= 1");
    }
    failures.validate();

    const SensorSeries& first = sensors.front();
    const std::int64_t n = static_cast<std::int64_t>(first.values.size());
    for (const SensorSeries& s : sensors) {
        s.validate();
        if (static_cast<std::int64_t>(s.values.size()) != n) {
            throw DataError("align_and_label: sensor '" + s.name + "' has length " +
                            std::to_string(s.values.size()) + ", expected " + std::to_string(n));
        }
        if (s.granularity_minutes != first.granularity_minutes || s.start_epoch_seconds != first.start_epoch_seconds) {
            throw DataError("align_and_label: sensor '" + s.name + "' is not aligned with '" + first.name + "'");
        }
    }
    for (const Episode& e : failures.episodes) {
        if (e.end_step >= n) {
            throw DataError("align_and_label: failure episode [" + std::to_string(e.start_step) + "," +
                            std::to_string(e.end_step) + "] exceeds series length " + std::to_string(n));
        }
    }

    AlignedDataset ds;
    ds.step_count = n;
    ds.delta_t_steps = delta_t_steps;
    ds.granularity_minutes = first.granularity_minutes;
    ds.start_epoch_seconds = first.start_epoch_seconds;
    ds.sensor_names.reserve(sensors.size());
    for (const SensorSeries& s : sensors) ds.sensor_names.push_back(s.name);

    const std::int64_t d = ds.d();
    ds.x.resize(static_cast<std::size_t>(n) * d);
    for (std::int64_t t = 0; t < n; ++t) {
        for (std::int64_t j = 0; j < d; ++j) {
            ds.x[t * d + j] = sensors[j].values[t];
        }
    }

    ds.y_observed.assign(n, 0);
    for (const Episode& e : failures.episodes) {
        for (std::int64_t t = e.start_step; t <= e.end_step; ++t) ds.y_observed[t] = 1;
    }
    ds.lambda_target = label_horizon(ds.y_observed, delta_t_steps);
    return ds;
}

AlignedDataset augment_g_c(const AlignedDataset& dataset, const FailureLog& failures) {
    failures.validate();
    for (const Episode& e : failures.episodes) {
        if (e.end_step >= dataset.step_count) {
            throw DataError("augment_g_c: failure log does not match the dataset timeline");
        }
    }

    const std::int64_t n = dataset.step_count;
    const std::int64_t d = dataset.d();
    std::vector<double> g(n, 0.0), cnt(n, 0.0);

    std::size_t next_ep = 0;                // first episode not yet ended before t
    std::int64_t last_end = -1;             // end of the newest fully ended episode
    std::int64_t ended = 0;
    for (std::int64_t t = 0; t < n; ++t) {
        while (next_ep < failures.episodes.size() && failures.episodes[next_ep].end_step < t) {
            last_end = failures.episodes[next_ep].end_step;
            ++ended;
            ++next_ep;
        }
        const bool inside = next_ep < failures.episodes.size() &&
                            failures.episodes[next_ep].start_step <= t &&
                            t <= failures.episodes[next_ep].end_step;
        cnt[t] = static_cast<double>(ended);
        if (inside) {
            g[t] = 0.0;
        } else if (last_end < 0) {
            g[t] = static_cast<double>(t);
        } else {
            g[t] = static_cast<double>(t - last_end - 1);
        }
    }

    AlignedDataset out = dataset;
    out.sensor_names.push_back("G");
    out.sensor_names.push_back("C");
    out.x.resize(static_cast<std::size_t>(n) * (d + 2));
    // rebuild row-major layout with the two new columns
    for (std::int64_t t = n - 1; t >= 0; --t) {
        for (std::int64_t j = d - 1; j >= 0; --j) {
            out.x[t * (d + 2) + j] = dataset.x[t * d + j];
        }
        out.x[t * (d + 2) + d] = g[t];
        out.x[t * (d + 2) + d + 1] = cnt[t];
    }
    return out;
}

CorrelationReport correlation_screen(const AlignedDataset& dataset, double threshold) {
    if (dataset.d() < 1) throw DataError("correlation_screen: dataset has no sensors");
    if (dataset.step_count < 2) throw DataError("correlation_screen: need at least 2 steps");
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw DataError("correlation_screen: threshold must lie in (0,1]");
    }

    CorrelationReport report;
    report.d = dataset.d();
    std::vector<std::uint8_t> degenerate;
    report.matrix = kernels::pearson_matrix(dataset, degenerate, kernels::Exec::Parallel);

    for (std::int64_t i = 0; i < report.d; ++i) {
        for (std::int64_t j = i + 1; j < report.d; ++j) {
            const double r = report.at(i, j);
            if (degenerate[i] || degenerate[j]) {
                report.degenerate_pairs.push_back({i, j, 0.0});
            } else if (std::abs(r) >= threshold) {
                report.flagged_pairs.push_back({i, j, r});
            }
        }
    }
    return report;
}

std::vector<Episode> find_runs(const std::vector<std::uint8_t>& bits) {
    std::vector<Episode> runs;
    const std::int64_t n = static_cast<std::int64_t>(bits.size());
    std::int64_t start = -1;
    for (std::int64_t i = 0; i < n; ++i) {
        if (bits[i] && start < 0) start = i;
        if (!bits[i] && start >= 0) {
            runs.push_back({start, i - 1});
            start = -1;
        }
    }
    if (start >= 0) runs.push_back({start, n - 1});
    return runs;
}

}  // namespace autolog
