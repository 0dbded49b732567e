#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "autolog/timeseries.hpp"

using namespace autolog;

namespace {

SensorSeries make_series(const std::string& name, std::vector<double> values) {
    SensorSeries s;
    s.name = name;
    s.values = std::move(values);
    return s;
}

std::vector<SensorSeries> constant_sensors(std::int64_t n, double value = 0.0) {
    return {make_series("s0", std::vector<double>(n, value))};
}

// direct restatement of the labeling window, used as the oracle
std::uint8_t lambda_brute(const std::vector<std::uint8_t>& y, std::int64_t t, std::int64_t delta_t) {
    const std::int64_t n = static_cast<std::int64_t>(y.size());
    for (std::int64_t s = t + 1; s <= t + delta_t && s < n; ++s) {
        if (y[s]) return 1;
    }
    return 0;
}

}  // namespace

TEST_CASE("align_and_label window examples") {
    FailureLog failures{{{100, 102}}};
    const AlignedDataset ds = align_and_label(constant_sensors(200), failures, 10);

    CHECK(ds.step_count == 200);
    CHECK(ds.lambda_target[95] == 1);  // step 100 in (95,105]
    CHECK(ds.lambda_target[89] == 0);  // no failure step in (89,99]
    CHECK(ds.y_observed[99] == 0);
    CHECK(ds.y_observed[100] == 1);
    CHECK(ds.y_observed[101] == 1);
    CHECK(ds.y_observed[102] == 1);
    CHECK(ds.y_observed[103] == 0);
}

TEST_CASE("align_and_label with no episodes") {
    const AlignedDataset ds = align_and_label(constant_sensors(50), FailureLog{}, 5);
    for (std::int64_t t = 0; t < 50; ++t) {
        CHECK(ds.y_observed[t] == 0);
        CHECK(ds.lambda_target[t] == 0);
    }
}

TEST_CASE("align_and_label rejects bad input") {
    CHECK_THROWS_AS(align_and_label({}, FailureLog{}, 1), DataError);
    CHECK_THROWS_AS(align_and_label(constant_sensors(10), FailureLog{}, 0), DataError);

    std::vector<SensorSeries> mismatched = {make_series("a", {1, 2, 3}), make_series("b", {1, 2})};
    CHECK_THROWS_AS(align_and_label(mismatched, FailureLog{}, 1), DataError);

    FailureLog beyond{{{5, 20}}};
    CHECK_THROWS_AS(align_and_label(constant_sensors(10), beyond, 1), DataError);

    std::vector<SensorSeries> nonfinite = {make_series("a", {1.0, std::nan(""), 3.0})};
    CHECK_THROWS_AS(align_and_label(nonfinite, FailureLog{}, 1), DataError);

    FailureLog unsorted{{{10, 12}, {5, 6}}};
    CHECK_THROWS_AS(align_and_label(constant_sensors(20), unsorted, 1), DataError);
}

TEST_CASE("labeling window property on random episode layouts") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t n = 50 + static_cast<std::int64_t>(rng() % 451);
        FailureLog failures;
        std::int64_t cursor = static_cast<std::int64_t>(rng() % 20);
        while (cursor < n) {
            const std::int64_t len = 1 + static_cast<std::int64_t>(rng() % 5);
            const std::int64_t end = std::min(cursor + len - 1, n - 1);
            failures.episodes.push_back({cursor, end});
            cursor = end + 2 + static_cast<std::int64_t>(rng() % 40);
        }
        const std::int64_t delta_t = 1 + static_cast<std::int64_t>(rng() % 30);
        const AlignedDataset ds = align_and_label(constant_sensors(n), failures, delta_t);
        for (std::int64_t t = 0; t < n; ++t) {
            REQUIRE(ds.lambda_target[t] == lambda_brute(ds.y_observed, t, delta_t));
        }
    }
}

TEST_CASE("augment_g_c examples") {
    SUBCASE("single one-step episode") {
        FailureLog failures{{{10, 10}}};
        const AlignedDataset ds = augment_g_c(align_and_label(constant_sensors(30), failures, 5), failures);
        const std::int64_t g_col = ds.d() - 2;
        const std::int64_t c_col = ds.d() - 1;
        CHECK(ds.at(15, g_col) == doctest::Approx(4.0));
        CHECK(ds.at(15, c_col) == doctest::Approx(1.0));
        CHECK(ds.at(7, g_col) == doctest::Approx(7.0));  // counts from series start
        CHECK(ds.at(7, c_col) == doctest::Approx(0.0));
        CHECK(ds.at(10, g_col) == doctest::Approx(0.0));  // inside the episode
        CHECK(ds.at(11, g_col) == doctest::Approx(0.0));  // first step after the end
    }
    SUBCASE("two episodes") {
        FailureLog failures{{{10, 10}, {20, 21}}};
        const AlignedDataset ds = augment_g_c(align_and_label(constant_sensors(30), failures, 5), failures);
        const std::int64_t c_col = ds.d() - 1;
        CHECK(ds.at(25, c_col) == doctest::Approx(2.0));
        CHECK(ds.at(20, c_col) == doctest::Approx(1.0));  // only ended episodes count
    }
}

TEST_CASE("augment_g_c keeps original columns and appends names") {
    std::mt19937_64 rng(7);
    std::vector<double> values(40);
    for (auto& v : values) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    FailureLog failures{{{12, 13}, {30, 31}}};
    const AlignedDataset base = align_and_label({make_series("a", values)}, failures, 4);
    const AlignedDataset aug = augment_g_c(base, failures);

    REQUIRE(aug.d() == 3);
    CHECK(aug.sensor_names[1] == "G");
    CHECK(aug.sensor_names[2] == "C");
    for (std::int64_t t = 0; t < base.step_count; ++t) {
        CHECK(aug.at(t, 0) == base.at(t, 0));
        CHECK(aug.y_observed[t] == base.y_observed[t]);
        CHECK(aug.lambda_target[t] == base.lambda_target[t]);
    }
}

TEST_CASE("G resets after each episode end and C increments by one") {
    FailureLog failures{{{5, 7}, {15, 15}, {28, 30}}};
    const AlignedDataset ds = augment_g_c(align_and_label(constant_sensors(40), failures, 3), failures);
    const std::int64_t g_col = ds.d() - 2;
    const std::int64_t c_col = ds.d() - 1;

    for (const Episode& e : failures.episodes) {
        if (e.end_step + 1 < ds.step_count) {
            CHECK(ds.at(e.end_step + 1, g_col) == doctest::Approx(0.0));
            CHECK(ds.at(e.end_step + 1, c_col) == ds.at(e.end_step, c_col) + 1.0);
        }
    }
    // C non-decreasing, G increases by 1 between episodes
    for (std::int64_t t = 1; t < ds.step_count; ++t) {
        CHECK(ds.at(t, c_col) >= ds.at(t - 1, c_col));
        const bool inside_or_after_end =
            ds.y_observed[t] || (t > 0 && ds.y_observed[t - 1]);
        if (!inside_or_after_end && ds.at(t - 1, g_col) >= 0.0) {
            CHECK(ds.at(t, g_col) == ds.at(t - 1, g_col) + 1.0);
        }
    }
}

TEST_CASE("correlation screen flags exact and inverse copies") {
    std::mt19937_64 rng(99);
    std::vector<double> v(500);
    for (auto& x : v) x = std::normal_distribution<double>(0, 1)(rng);
    std::vector<double> neg(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];

    std::vector<SensorSeries> sensors = {make_series("a", v), make_series("copy", v),
                                         make_series("neg", neg)};
    const AlignedDataset ds = align_and_label(sensors, FailureLog{}, 1);
    const CorrelationReport report = correlation_screen(ds, 0.95);

    CHECK(report.at(0, 1) == doctest::Approx(1.0));
    CHECK(report.at(0, 2) == doctest::Approx(-1.0));
    REQUIRE(report.flagged_pairs.size() == 3);  // all three pairs are perfectly tied
    CHECK(report.degenerate_pairs.empty());
}

TEST_CASE("independent white noise stays unflagged") {
    std::mt19937_64 rng(2024);
    std::vector<double> a(10000), b(10000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = std::normal_distribution<double>(0, 1)(rng);
        b[i] = std::normal_distribution<double>(0, 1)(rng);
    }
    const AlignedDataset ds =
        align_and_label({make_series("a", a), make_series("b", b)}, FailureLog{}, 1);
    const CorrelationReport report = correlation_screen(ds, 0.95);
    CHECK(std::abs(report.at(0, 1)) < 0.05);
    CHECK(report.flagged_pairs.empty());
}

TEST_CASE("correlation matrix is symmetric with unit diagonal") {
    std::mt19937_64 rng(5);
    std::vector<SensorSeries> sensors;
    for (int j = 0; j < 5; ++j) {
        std::vector<double> v(200);
        for (auto& x : v) x = std::normal_distribution<double>(0, 1)(rng);
        sensors.push_back(make_series("s" + std::to_string(j), v));
    }
    const AlignedDataset ds = align_and_label(sensors, FailureLog{}, 1);
    const CorrelationReport report = correlation_screen(ds, 0.5);
    for (std::int64_t i = 0; i < report.d; ++i) {
        CHECK(report.at(i, i) == doctest::Approx(1.0));
        for (std::int64_t j = 0; j < report.d; ++j) {
            CHECK(report.at(i, j) == report.at(j, i));
            CHECK(report.at(i, j) <= 1.0 + 1e-12);
            CHECK(report.at(i, j) >= -1.0 - 1e-12);
        }
    }
}

TEST_CASE("degenerate columns are reported, not NaN") {
    std::vector<SensorSeries> sensors = {make_series("flat", std::vector<double>(100, 3.5)),
                                         make_series("ramp", [] {
                                             std::vector<double> v(100);
                                             for (int i = 0; i < 100; ++i) v[i] = i;
                                             return v;
                                         }())};
    const AlignedDataset ds = align_and_label(sensors, FailureLog{}, 1);
    const CorrelationReport report = correlation_screen(ds, 0.9);
    CHECK(report.at(0, 1) == 0.0);
    CHECK(report.at(0, 0) == 0.0);  // degenerate diagonal stays 0
    CHECK(report.at(1, 1) == 1.0);
    REQUIRE(report.degenerate_pairs.size() == 1);
    CHECK(report.flagged_pairs.empty());
}

TEST_CASE("find_runs extracts maximal runs") {
    CHECK(find_runs({}).empty());
    CHECK(find_runs({0, 0, 0}).empty());
    const auto runs = find_runs({1, 1, 0, 1, 0, 0, 1, 1, 1});
    REQUIRE(runs.size() == 3);
    CHECK(runs[0].start_step == 0);
    CHECK(runs[0].end_step == 1);
    CHECK(runs[1].start_step == 3);
    CHECK(runs[1].end_step == 3);
    CHECK(runs[2].start_step == 6);
    CHECK(runs[2].end_step == 8);
}
