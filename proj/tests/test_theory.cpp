// Theory engine checks. Every pinned constant below was derived by hand
// from the defining recurrences before the implementation existed, so these
// tests are independent of the code paths they exercise:
//   - single-type closed form 4/(d(d+1)(d+2)) and its telescoping mass
//   - two-type pinned values at zeta = (1/2, 1/2)
//   - unit-rate independent-edges values built on E(e^-lambda) = 1/e
//   - Poisson weights against antiderivative/closed-form oracles
//   - the splitting identity linking the joint table to the total-degree law
//   - the general solver against both specialized recurrences
//   - characteristic exponents with exact rational/quadratic roots
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "mtpa/errors.hpp"
#include "mtpa/special_functions.hpp"
#include "mtpa/theory.hpp"

using namespace mtpa;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

} // namespace

TEST_CASE("theory: single-type closed form values and telescoping mass") {
    CHECK(close(closed_form_ba_tree(1), 2.0 / 3.0, 1e-15));
    CHECK(close(closed_form_ba_tree(2), 1.0 / 6.0, 1e-15));
    CHECK(close(closed_form_ba_tree(3), 1.0 / 15.0, 1e-15));
    CHECK_THROWS_AS(closed_form_ba_tree(0), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_ba_tree(-3), std::invalid_argument);

    // sum_{d=1}^{K} 4/(d(d+1)(d+2)) = 1 - 2/((K+1)(K+2))
    double mass = 0.0;
    const int K = 100000;
    for (int d = 1; d <= K; ++d) mass += closed_form_ba_tree(d);
    double expected = 1.0 - 2.0 / (static_cast<double>(K + 1) * (K + 2));
    CHECK(close(mass, expected, 1e-9));
}

TEST_CASE("theory: batch recurrence reproduces the single-type closed form") {
    BaTheory theory(BatchDistribution::constant(1), {1.0});
    CHECK(theory.value(GeneralizedDegree{0}) == 0.0);
    for (int d = 1; d <= 300; ++d)
        CHECK(close(theory.value(GeneralizedDegree{d}), closed_form_ba_tree(d), 1e-12));
}

TEST_CASE("theory: two-type batch values at even proportions") {
    BaTheory theory(BatchDistribution::constant(1), {0.5, 0.5});
    CHECK(theory.value(GeneralizedDegree{0, 0}) == 0.0);
    CHECK(close(theory.value(GeneralizedDegree{1, 0}), 1.0 / 3.0, 1e-12));
    CHECK(close(theory.value(GeneralizedDegree{0, 1}), 1.0 / 3.0, 1e-12));
    // Single-edge newborns never mix types: a vertex only ever gains edges
    // of types it already carries, so off-axis degrees have zero mass.
    CHECK(theory.value(GeneralizedDegree{1, 1}) == 0.0);
    CHECK(theory.value(GeneralizedDegree{2, 3}) == 0.0);
    // On-axis mass halves the single-type closed form.
    CHECK(close(theory.value(GeneralizedDegree{2, 0}), 0.5 * closed_form_ba_tree(2), 1e-12));
    CHECK(close(theory.value(GeneralizedDegree{0, 7}), 0.5 * closed_form_ba_tree(7), 1e-12));
}

TEST_CASE("theory: two-edge batches do mix types") {
    auto batch = BatchDistribution::categorical({{1, 0.5}, {2, 0.5}});
    BaTheory theory(batch, {0.5, 0.5});
    // x((1,1)) = (2/4) P(M=2) 2!/(1!1!) (1/2)(1/2) = 1/8
    CHECK(close(theory.value(GeneralizedDegree{1, 1}), 0.125, 1e-12));
    // x((1,0)) = (2/3) P(M=1) zeta_1 = 1/6
    CHECK(close(theory.value(GeneralizedDegree{1, 0}), 1.0 / 6.0, 1e-12));
}

TEST_CASE("theory: independent-edges pinned values at unit rate") {
    const double inv_e = std::exp(-1.0);
    IeTheory two(RateDistribution::constant(1.0), {0.5, 0.5});
    CHECK(close(two.value(GeneralizedDegree{0, 0}), inv_e, 1e-12));
    CHECK(close(two.value(GeneralizedDegree{1, 0}), inv_e / 3.0, 1e-12));
    CHECK(close(two.value(GeneralizedDegree{0, 1}), inv_e / 3.0, 1e-12));

    IeTheory one(RateDistribution::constant(1.0), {1.0});
    CHECK(close(one.value(GeneralizedDegree{0}), inv_e, 1e-12));
    CHECK(close(one.value(GeneralizedDegree{1}), 2.0 * inv_e / 3.0, 1e-12));
    // x(2) = (x(1) + 2 (1/2!) E(lambda^2 e^-lambda)) / 4 = 5/(12 e)
    CHECK(close(one.value(GeneralizedDegree{2}), 5.0 * inv_e / 12.0, 1e-12));
}

TEST_CASE("theory: poisson weights against closed-form oracles") {
    // Constant rate: mu^D e^-mu.
    CHECK(close(poisson_weight(RateDistribution::constant(2.0), 3), 8.0 * std::exp(-2.0), 1e-12));
    CHECK(close(poisson_weight(RateDistribution::constant(1.0), 0), std::exp(-1.0), 1e-15));
    // Exponential rate (gamma with shape 1): E(e^-lambda) = 1/2.
    CHECK(close(poisson_weight(RateDistribution::gamma(1.0, 1.0), 0), 0.5, 1e-12));
    // Gamma(2, 1/2), D = 1: Gamma(3)/Gamma(2) * (1/2) / (3/2)^3 = 8/27.
    CHECK(close(poisson_weight(RateDistribution::gamma(2.0, 0.5), 1), 8.0 / 27.0, 1e-12));
    // Uniform(1/2, 3/2), D = 2: the antiderivative of x^2 e^-x gives
    // E = 3.25 e^-0.5 - 7.25 e^-1.5.
    double expected = 3.25 * std::exp(-0.5) - 7.25 * std::exp(-1.5);
    CHECK(close(poisson_weight(RateDistribution::uniform(0.5, 1.5), 2), expected, 1e-12));
    CHECK_THROWS_AS(poisson_weight(RateDistribution::constant(1.0), -1), std::invalid_argument);
}

TEST_CASE("theory: batch marginal recurrence boundary cases and pinned prefix") {
    auto m1 = BatchDistribution::constant(1);
    auto x = marginal_x_ba(m1, 1.0, 300);
    CHECK(x[0] == 0.0);
    CHECK(close(x[1], 2.0 / 3.0, 1e-12));
    CHECK(close(x[2], 1.0 / 6.0, 1e-12));
    CHECK(close(x[3], 1.0 / 15.0, 1e-12));
    for (int l = 1; l <= 300; ++l)
        CHECK(close(x[static_cast<std::size_t>(l)], closed_form_ba_tree(l), 1e-12));

    auto m2 = BatchDistribution::constant(2);
    auto y = marginal_x_ba(m2, 0.5, 4);
    CHECK(close(y[0], 0.25, 1e-12));  // E[(1 - zeta)^M]

    auto z = marginal_x_ba(m1, 0.0, 5);
    CHECK(close(z[0], 1.0, 1e-12));
    for (int l = 1; l <= 5; ++l) CHECK(z[static_cast<std::size_t>(l)] == 0.0);

    CHECK_THROWS_AS(marginal_x_ba(BatchDistribution::shifted_poisson(2.0), 0.5, 10), ConfigError);
    CHECK_THROWS_AS(marginal_x_ba(m1, 1.5, 10), ConfigError);
}

TEST_CASE("theory: independent-edges marginal recurrence pinned prefix") {
    auto rate = RateDistribution::constant(1.0);
    const double inv_e = std::exp(-1.0);
    auto x = marginal_x_ie(rate, 1.0, 10);
    CHECK(close(x[0], inv_e, 1e-12));
    CHECK(close(x[1], 2.0 * inv_e / 3.0, 1e-12));
    CHECK(close(x[2], 5.0 * inv_e / 12.0, 1e-12));

    auto y = marginal_x_ie(rate, 0.5, 3);
    CHECK(close(y[0], std::exp(-0.5), 1e-12));

    auto z = marginal_x_ie(rate, 0.0, 5);
    CHECK(close(z[0], 1.0, 1e-12));
    for (int l = 1; l <= 5; ++l) CHECK(z[static_cast<std::size_t>(l)] == 0.0);
}

TEST_CASE("theory: splitting identity ties joint tables to the total-degree law") {
    // z_D = (D-1)/(D+2) z_{D-1} + 2/(D+2) P(M=D) must equal the sum of the
    // joint values over {|d| = D}, for every zeta.
    struct Config {
        BatchDistribution batch;
        std::vector<double> zeta;
    };
    std::vector<Config> configs;
    configs.push_back({BatchDistribution::constant(1), {0.7, 0.3}});
    configs.push_back({BatchDistribution::categorical({{1, 0.25}, {2, 0.5}, {4, 0.25}}),
                       {0.2, 0.8}});
    configs.push_back({BatchDistribution::categorical({{1, 0.5}, {3, 0.5}}),
                       {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}});

    for (auto& config : configs) {
        const int cap = 50;
        BaTheory theory(config.batch, config.zeta);
        TheoryTable table = theory.table(cap);
        std::vector<double> level_sum(cap + 1, 0.0);
        for (const auto& [d, value] : table.values)
            level_sum[static_cast<std::size_t>(d.total())] += value;
        double z = 0.0;
        for (int D = 0; D <= cap; ++D) {
            z = ((D - 1.0) * z + 2.0 * config.batch.pmf(D)) / (D + 2.0);
            CHECK(close(level_sum[static_cast<std::size_t>(D)], z, 1e-10));
        }
    }
}

TEST_CASE("theory: general solver agrees with both specializations") {
    const int cap = 20;

    auto batch = BatchDistribution::categorical({{1, 0.5}, {2, 0.5}});
    std::vector<double> zeta{0.6, 0.4};
    BaTheory ba(batch, zeta);
    LimitSolver ba_general(
        2, [](const GeneralizedDegree& d) { return d.total() / 2.0; },
        [](int k, const GeneralizedDegree& reduced) { return reduced[static_cast<std::size_t>(k)] / 2.0; },
        [&batch, &zeta](const GeneralizedDegree& d) {
            // Independent route to the newborn term: pmf times the exact
            // multinomial weight, assembled in log space.
            double pmf = batch.pmf(d.total());
            if (pmf == 0.0) return 0.0;
            double log_term = log_factorial(d.total());
            for (std::size_t k = 0; k < zeta.size(); ++k) {
                if (d[k] == 0) continue;
                if (zeta[k] == 0.0) return 0.0;
                log_term += d[k] * std::log(zeta[k]) - log_factorial(d[k]);
            }
            return pmf * std::exp(log_term);
        });
    for (const GeneralizedDegree& d : enumerate_degrees(2, cap))
        CHECK(close(ba_general.value(d), ba.value(d), 1e-12));

    auto rate = RateDistribution::gamma(2.0, 0.5);
    std::vector<double> zeta_hat{0.25, 0.75};
    IeTheory ie(rate, zeta_hat);
    LimitSolver ie_general(
        2, [](const GeneralizedDegree& d) { return d.total() / 2.0; },
        [](int k, const GeneralizedDegree& reduced) { return reduced[static_cast<std::size_t>(k)] / 2.0; },
        [&rate, &zeta_hat](const GeneralizedDegree& d) {
            double log_term = 0.0;
            for (std::size_t k = 0; k < zeta_hat.size(); ++k) {
                if (d[k] == 0) continue;
                if (zeta_hat[k] == 0.0) return 0.0;
                log_term += d[k] * std::log(zeta_hat[k]) - log_factorial(d[k]);
            }
            return poisson_weight(rate, d.total()) * std::exp(log_term);
        });
    for (const GeneralizedDegree& d : enumerate_degrees(2, cap))
        CHECK(close(ie_general.value(d), ie.value(d), 1e-12));
}

TEST_CASE("theory: characteristic exponent with exact and quadratic roots") {
    auto simple = characteristic_exponent({{1, 1.0}}, {{1, -3.0}});
    CHECK(simple.q == 1.0);
    CHECK(simple.gamma == -3.0);

    // 0.5 q + 0.25 q^2 = 1 has the positive root sqrt(5) - 1.
    auto quadratic = characteristic_exponent({{1, 0.5}, {2, 0.25}}, {{1, 1.0}, {2, 1.0}});
    CHECK(close(quadratic.q, std::sqrt(5.0) - 1.0, 5e-12));
    // gamma = (q + q^2) / (0.5 q + 0.5 q^2) = 2 for any root.
    CHECK(close(quadratic.gamma, 2.0, 1e-9));

    // Root above 1: 0.5 q = 1.
    auto doubling = characteristic_exponent({{1, 0.5}}, {{1, 4.0}});
    CHECK(close(doubling.q, 2.0, 1e-11));
    CHECK(close(doubling.gamma, 4.0 * 2.0 / (0.5 * 2.0), 1e-9));

    CHECK_THROWS_AS(characteristic_exponent({}, {}), ConfigError);
    CHECK_THROWS_AS(characteristic_exponent({{2, 1.0}}, {}), ConfigError);       // gcd 2
    CHECK_THROWS_AS(characteristic_exponent({{1, -0.5}}, {}), ConfigError);      // negative
    CHECK_THROWS_AS(characteristic_exponent({{0, 1.0}}, {}), ConfigError);       // lag 0
    CHECK_THROWS_AS(characteristic_exponent({{1, 0.0}}, {}), ConfigError);       // all zero
}

TEST_CASE("theory: degree enumeration is by total then lexicographic") {
    auto degrees = enumerate_degrees(2, 2);
    std::vector<GeneralizedDegree> expected{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
    REQUIRE(degrees.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(degrees[i] == expected[i]);
    CHECK_THROWS_AS(enumerate_degrees(6, 300), ConfigError);  // table would explode
}

TEST_CASE("theory: table mass is bounded and nondecreasing in the cap") {
    BaTheory ba(BatchDistribution::constant(1), {1.0});
    TheoryTable t300 = ba.table(300);
    CHECK(t300.partial_mass >= 0.999);
    CHECK(t300.partial_mass <= 1.0 + 1e-9);
    CHECK(ba.table(50).partial_mass <= ba.table(100).partial_mass);
    CHECK(ba.table(100).partial_mass <= t300.partial_mass);

    IeTheory ie(RateDistribution::constant(1.0), {1.0});
    TheoryTable ie_table = ie.table(60);
    CHECK(ie_table.partial_mass >= 0.99);
    CHECK(ie_table.partial_mass <= 1.0 + 1e-9);
    for (const auto& [d, value] : ie_table.values) CHECK(value >= 0.0);
}

TEST_CASE("theory: proportion inputs are validated") {
    CHECK_THROWS_AS(BaTheory(BatchDistribution::constant(1), {0.5, 0.4}), ConfigError);
    CHECK_THROWS_AS(BaTheory(BatchDistribution::constant(1), {-0.1, 1.1}), ConfigError);
    CHECK_THROWS_AS(BaTheory(BatchDistribution::constant(1), {}), ConfigError);
    CHECK_THROWS_AS(IeTheory(RateDistribution::constant(1.0), {0.7}), ConfigError);
    BaTheory ok(BatchDistribution::constant(1), {0.5, 0.5});
    CHECK_THROWS_AS(ok.value(GeneralizedDegree{1}), std::invalid_argument);
}
