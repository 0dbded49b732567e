// Timing comparison of the serial reference kernels against the OpenMP
// blocked kernels on a synthetic-scale design.
//
// Usage: bench_kernels [rows] [d] [q] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include <omp.h>

#include "autolog/kernels.hpp"

using namespace autolog;

namespace {

DesignMatrix random_design(std::int64_t n, std::int64_t d, std::int64_t q, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    DesignMatrix dm;
    dm.q = q;
    dm.d = d;
    dm.n_rows = n;
    dm.x_lags.resize(n * dm.x_width());
    dm.y_lags.resize(n * dm.y_width());
    dm.targets.resize(n);
    dm.origin_steps.resize(n);
    for (auto& v : dm.x_lags) v = unif(rng);
    for (auto& v : dm.y_lags) v = (rng() & 1) ? 1.0 : 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        dm.targets[i] = static_cast<std::uint8_t>(rng() & 1);
        dm.origin_steps[i] = i;
    }
    return dm;
}

template <typename Fn>
double time_best_of(Fn&& fn, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 200000;
    const std::int64_t d = argc > 2 ? std::atoll(argv[2]) : 8;
    const std::int64_t q = argc > 3 ? std::atoll(argv[3]) : 10;
    const int repeats = argc > 4 ? std::atoi(argv[4]) : 5;

    const DesignMatrix dm = random_design(n, d, q, 42);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-0.2, 0.2);
    std::vector<double> theta(dm.param_count());
    for (auto& v : theta) v = unif(rng);
    const ClassWeights w{0.7, 1.9};

    std::vector<double> probs(n), grad(dm.param_count());
    std::printf("rows=%lld d=%lld q=%lld params=%lld threads=%d (best of %d)\n",
                static_cast<long long>(n), static_cast<long long>(d), static_cast<long long>(q),
                static_cast<long long>(dm.param_count()), omp_get_max_threads(), repeats);
    std::printf("%-22s %12s %12s %9s\n", "kernel", "serial (ms)", "openmp (ms)", "speedup");

    const auto report = [&](const char* name, double ts, double tp) {
        std::printf("%-22s %12.2f %12.2f %8.2fx\n", name, ts, tp, ts / tp);
    };

    report("predict",
           time_best_of([&] { kernels::predict(dm, theta, probs, kernels::Exec::Serial); }, repeats),
           time_best_of([&] { kernels::predict(dm, theta, probs, kernels::Exec::Parallel); }, repeats));
    report("log_likelihood",
           time_best_of([&] { (void)kernels::weighted_log_likelihood(dm, theta, w, kernels::Exec::Serial); }, repeats),
           time_best_of([&] { (void)kernels::weighted_log_likelihood(dm, theta, w, kernels::Exec::Parallel); }, repeats));
    report("gradient",
           time_best_of([&] { kernels::gradient(dm, theta, w, grad, kernels::Exec::Serial); }, repeats),
           time_best_of([&] { kernels::gradient(dm, theta, w, grad, kernels::Exec::Parallel); }, repeats));

    AlignedDataset ds;
    ds.step_count = n;
    for (std::int64_t j = 0; j < 16; ++j) ds.sensor_names.push_back("s" + std::to_string(j));
    ds.x.resize(n * 16);
    for (auto& v : ds.x) v = unif(rng);
    ds.y_observed.assign(n, 0);
    ds.lambda_target.assign(n, 0);
    std::vector<std::uint8_t> degenerate;
    report("pearson (16 cols)",
           time_best_of([&] { (void)kernels::pearson_matrix(ds, degenerate, kernels::Exec::Serial); }, repeats),
           time_best_of([&] { (void)kernels::pearson_matrix(ds, degenerate, kernels::Exec::Parallel); }, repeats));
    return 0;
}
