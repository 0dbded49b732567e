#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "autolog/model.hpp"

using namespace autolog;

namespace {

DesignMatrix random_design(std::int64_t n, std::int64_t d, std::int64_t q, std::mt19937_64& rng,
                           double positive_rate = 0.4) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    DesignMatrix dm;
    dm.q = q;
    dm.d = d;
    dm.n_rows = n;
    dm.x_lags.resize(n * dm.x_width());
    dm.y_lags.resize(n * dm.y_width());
    dm.targets.resize(n);
    dm.origin_steps.resize(n);
    for (auto& v : dm.x_lags) v = gauss(rng);
    for (auto& v : dm.y_lags) v = unif(rng) < 0.3 ? 1.0 : 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        dm.targets[i] = unif(rng) < positive_rate ? 1 : 0;
        dm.origin_steps[i] = i;
    }
    return dm;
}

ModelParams random_params(std::int64_t d, std::int64_t q, std::mt19937_64& rng, double scale = 0.5) {
    std::uniform_real_distribution<double> unif(-scale, scale);
    ModelParams p;
    p.q = q;
    p.d = d;
    p.a.resize((q + 1) * d);
    p.b.resize(q + 1);
    for (auto& v : p.a) v = unif(rng);
    for (auto& v : p.b) v = unif(rng);
    p.c = unif(rng);
    return p;
}

// independent reference for the unweighted log-likelihood, written straight
// from the Bernoulli form
double loglik_reference(const ModelParams& params, const DesignMatrix& dm) {
    double total = 0.0;
    for (std::int64_t i = 0; i < dm.n_rows; ++i) {
        double z = params.c;
        for (std::int64_t k = 0; k <= dm.q; ++k) {
            for (std::int64_t j = 0; j < dm.d; ++j) {
                z += params.a[k * dm.d + j] * dm.x_row(i)[k * dm.d + j];
            }
            z += params.b[k] * dm.y_row(i)[k];
        }
        double p = 1.0 / (1.0 + std::exp(-z));
        p = std::min(std::max(p, kProbEps), 1.0 - kProbEps);
        const double lam = dm.targets[i] ? 1.0 : 0.0;
        total += lam * std::log(p) + (1.0 - lam) * std::log(1.0 - p);
    }
    return total;
}

}  // namespace

TEST_CASE("probability closed forms") {
    std::mt19937_64 rng(1);
    const DesignMatrix dm = random_design(10, 2, 1, rng);

    SUBCASE("all-zero parameters give 0.5") {
        ModelParams p = random_params(2, 1, rng, 0.0);
        for (std::int64_t i = 0; i < dm.n_rows; ++i) {
            CHECK(probability(p, dm, i) == doctest::Approx(0.5));
        }
    }
    SUBCASE("intercept ln 3 gives 0.75") {
        ModelParams p = random_params(2, 1, rng, 0.0);
        p.c = std::log(3.0);
        CHECK(probability(p, dm, 0) == doctest::Approx(0.75));
    }
    SUBCASE("single regressor evaluates the logistic directly") {
        DesignMatrix one;
        one.q = 0;
        one.d = 1;
        one.n_rows = 1;
        one.x_lags = {2.0};
        one.y_lags = {0.0};
        one.targets = {1};
        one.origin_steps = {0};
        ModelParams p;
        p.q = 0;
        p.d = 1;
        p.a = {1.0};
        p.b = {0.0};
        p.c = 0.0;
        CHECK(probability(p, one, 0) == doctest::Approx(0.880797).epsilon(1e-5));
    }
}

TEST_CASE("probability is clamped and monotone in the logit") {
    DesignMatrix one;
    one.q = 0;
    one.d = 1;
    one.n_rows = 1;
    one.x_lags = {1.0};
    one.y_lags = {0.0};
    one.targets = {0};
    one.origin_steps = {0};
    ModelParams p;
    p.q = 0;
    p.d = 1;
    p.a = {2000.0};  // saturates hard
    p.b = {0.0};
    p.c = 0.0;

    const double hi = probability(p, one, 0);
    CHECK(hi < 1.0);
    CHECK(hi >= 1.0 - kProbEps - 1e-15);
    p.a = {-2000.0};
    const double lo = probability(p, one, 0);
    CHECK(lo > 0.0);
    CHECK(lo <= kProbEps * (1 + 1e-9));

    // strictly increasing away from the clamp, non-decreasing through it
    double prev = -1.0;
    for (double z = -25.0; z <= 25.0; z += 0.5) {
        const double value = sigmoid_clamped(z);
        CHECK(value > prev);
        prev = value;
    }
    prev = 0.0;
    for (double z = -100.0; z <= 100.0; z += 1.0) {
        const double value = sigmoid_clamped(z);
        CHECK(value >= prev);
        prev = value;
    }
}

TEST_CASE("weighted log-likelihood single-row values") {
    DesignMatrix one;
    one.q = 0;
    one.d = 1;
    one.n_rows = 1;
    one.x_lags = {0.0};
    one.y_lags = {0.0};
    one.targets = {1};
    one.origin_steps = {0};
    ModelParams p;
    p.q = 0;
    p.d = 1;
    p.a = {0.0};
    p.b = {0.0};
    p.c = 0.0;  // p = 0.5

    CHECK(weighted_log_likelihood(p, one, {1.0, 1.0}) == doctest::Approx(std::log(0.5)));
    CHECK(weighted_log_likelihood(p, one, {1.0, 2.0}) == doctest::Approx(2.0 * std::log(0.5)));
}

TEST_CASE("weights (1,1) reduce to the unweighted log-likelihood") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const std::int64_t d = 1 + static_cast<std::int64_t>(rng() % 4);
        const std::int64_t q = static_cast<std::int64_t>(rng() % 3);
        const DesignMatrix dm = random_design(5 + static_cast<std::int64_t>(rng() % 60), d, q, rng);
        const ModelParams p = random_params(d, q, rng);
        const double weighted = weighted_log_likelihood(p, dm, {1.0, 1.0});
        const double reference = loglik_reference(p, dm);
        REQUIRE(std::abs(weighted - reference) <= 1e-12 * std::max(1.0, std::abs(reference)));
    }
}

TEST_CASE("analytic gradient matches central finite differences") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const DesignMatrix dm = random_design(50, 3, 2, rng);
        ModelParams p = random_params(3, 2, rng);
        std::uniform_real_distribution<double> wdist(0.2, 3.0);
        const ClassWeights w{wdist(rng), wdist(rng)};

        const std::vector<double> grad = gradient(p, dm, w);
        std::vector<double> theta = p.to_flat();
        for (std::size_t k = 0; k < theta.size(); ++k) {
            const double h = 1e-6 * (1.0 + std::abs(theta[k]));
            std::vector<double> plus = theta, minus = theta;
            plus[k] += h;
            minus[k] -= h;
            const ModelParams pp = ModelParams::from_flat(plus, p.q, p.d);
            const ModelParams pm = ModelParams::from_flat(minus, p.q, p.d);
            const double fd =
                (weighted_log_likelihood(pp, dm, w) - weighted_log_likelihood(pm, dm, w)) / (2 * h);
            const double rel = std::abs(grad[k] - fd) / std::max({1.0, std::abs(grad[k]), std::abs(fd)});
            REQUIRE(rel <= 1e-6);
        }
    }
}

TEST_CASE("gradient hand evaluation at zero parameters") {
    DesignMatrix one;
    one.q = 0;
    one.d = 1;
    one.n_rows = 1;
    one.x_lags = {1.0};
    one.y_lags = {1.0};
    one.targets = {1};
    one.origin_steps = {0};
    ModelParams p = ModelParams::from_flat(std::vector<double>{0.0, 0.0, 0.0}, 0, 1);

    // coef = w1 * (1 - p) = 0.5; gradient = coef * (x, y, 1)
    const std::vector<double> g = gradient(p, one, {1.0, 1.0});
    REQUIRE(g.size() == 3);
    CHECK(g[0] == doctest::Approx(0.5));
    CHECK(g[1] == doctest::Approx(0.5));
    CHECK(g[2] == doctest::Approx(0.5));
}

TEST_CASE("negative weighted log-likelihood is convex") {
    std::mt19937_64 rng(11);
    const DesignMatrix dm = random_design(80, 2, 1, rng);
    std::uniform_real_distribution<double> wdist(0.3, 2.0);
    const ClassWeights w{wdist(rng), wdist(rng)};
    for (int trial = 0; trial < 30; ++trial) {
        const ModelParams p1 = random_params(2, 1, rng, 1.5);
        const ModelParams p2 = random_params(2, 1, rng, 1.5);
        std::vector<double> mid_flat = p1.to_flat();
        const std::vector<double> flat2 = p2.to_flat();
        for (std::size_t k = 0; k < mid_flat.size(); ++k) mid_flat[k] = 0.5 * (mid_flat[k] + flat2[k]);
        const ModelParams mid = ModelParams::from_flat(mid_flat, 1, 2);

        const double f1 = -weighted_log_likelihood(p1, dm, w);
        const double f2 = -weighted_log_likelihood(p2, dm, w);
        const double fm = -weighted_log_likelihood(mid, dm, w);
        CHECK(fm <= 0.5 * (f1 + f2) + 1e-9);
    }
}

TEST_CASE("scaling both weights scales likelihood and gradient by k") {
    std::mt19937_64 rng(13);
    const DesignMatrix dm = random_design(60, 2, 1, rng);
    const ModelParams p = random_params(2, 1, rng);
    const ClassWeights w{0.4, 1.7};
    const double k = 3.25;
    const ClassWeights wk{w.w0 * k, w.w1 * k};

    const double base = weighted_log_likelihood(p, dm, w);
    CHECK(weighted_log_likelihood(p, dm, wk) == doctest::Approx(k * base).epsilon(1e-12));

    const std::vector<double> g = gradient(p, dm, w);
    const std::vector<double> gk = gradient(p, dm, wk);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(gk[i] == doctest::Approx(k * g[i]).epsilon(1e-12));
    }
}

TEST_CASE("dimension mismatches are rejected") {
    std::mt19937_64 rng(3);
    const DesignMatrix dm = random_design(10, 2, 1, rng);
    const ModelParams wrong = random_params(3, 1, rng);
    CHECK_THROWS_AS(weighted_log_likelihood(wrong, dm, {1, 1}), DataError);
    CHECK_THROWS_AS(gradient(wrong, dm, {1, 1}), DataError);
    CHECK_THROWS_AS(probability(wrong, dm, 0), DataError);

    DesignMatrix empty;
    empty.q = 1;
    empty.d = 2;
    const ModelParams ok = random_params(2, 1, rng);
    CHECK_THROWS_AS(weighted_log_likelihood(ok, empty, {1, 1}), DataError);

    CHECK_THROWS_AS(weighted_log_likelihood(ok, dm, {0.0, 1.0}), DataError);
    CHECK_THROWS_AS(weighted_log_likelihood(ok, dm, {1.0, -2.0}), DataError);
}
