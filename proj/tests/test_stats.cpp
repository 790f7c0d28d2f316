#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "mtpa/models.hpp"
#include "mtpa/rng.hpp"
#include "mtpa/special_functions.hpp"
#include "mtpa/stats.hpp"

using mtpa::BatchDistribution;
using mtpa::DegreeCensus;
using mtpa::GeneralizedDegree;
using mtpa::InitialConfig;
using mtpa::ModelSpec;
using mtpa::RngStream;
using mtpa::TheoryTable;

TEST_CASE("special functions: quadrature, tails, and beta cdf match references") {
    SUBCASE("gauss-legendre integrates polynomials exactly") {
        const auto& quad = mtpa::gauss_legendre(8);
        double mass = 0.0, x4 = 0.0;
        for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
            mass += quad.weights[i];
            x4 += quad.weights[i] * std::pow(quad.nodes[i], 4);
        }
        CHECK(mass == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(x4 == doctest::Approx(2.0 / 5.0).epsilon(1e-14));
    }
    SUBCASE("kolmogorov tail at the classic 5% critical value") {
        CHECK(mtpa::kolmogorov_sf(1.358) == doctest::Approx(0.0505).epsilon(0.02));
        CHECK(mtpa::kolmogorov_sf(0.2) > 0.999);
        CHECK(mtpa::kolmogorov_sf(3.0) < 1e-7);
    }
    SUBCASE("chi-square tail against closed forms") {
        // two degrees of freedom is exponential
        CHECK(mtpa::chi_square_sf(4.0, 2) == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
        // one degree of freedom is a folded normal
        CHECK(mtpa::chi_square_sf(1.0, 1) ==
              doctest::Approx(std::erfc(1.0 / std::sqrt(2.0))).epsilon(1e-10));
        CHECK(mtpa::chi_square_sf(0.0, 5) == doctest::Approx(1.0));
    }
    SUBCASE("integer beta cdf closed forms") {
        for (double x : {0.1, 0.25, 0.5, 0.9}) {
            CHECK(mtpa::beta_cdf_integer(x, 1, 1) == doctest::Approx(x).epsilon(1e-12));
            CHECK(mtpa::beta_cdf_integer(x, 2, 1) == doctest::Approx(x * x).epsilon(1e-12));
            CHECK(mtpa::beta_cdf_integer(x, 1, 2) ==
                  doctest::Approx(2.0 * x - x * x).epsilon(1e-12));
        }
        CHECK(mtpa::beta_cdf_integer(0.0, 3, 2) == 0.0);
        CHECK(mtpa::beta_cdf_integer(1.0, 3, 2) == 1.0);
    }
}

TEST_CASE("stats: distribution distances are symmetric with exact hand values") {
    std::map<GeneralizedDegree, double> a{{GeneralizedDegree{1}, 0.5}};
    std::map<GeneralizedDegree, double> b{{GeneralizedDegree{1}, 0.25},
                                          {GeneralizedDegree{2}, 0.1}};
    auto ab = mtpa::distribution_distances(a, b);
    auto ba = mtpa::distribution_distances(b, a);
    CHECK(ab.sup == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(ab.tv == doctest::Approx(0.175).epsilon(1e-15));
    CHECK(ab.sup == ba.sup);
    CHECK(ab.tv == ba.tv);

    auto self = mtpa::distribution_distances(b, b);
    CHECK(self.sup == 0.0);
    CHECK(self.tv == 0.0);
}

TEST_CASE("stats: compare reports hand-computed distances and ignored mass") {
    // Census: 100 vertices, 60 of degree 1, 25 of degree 2, 15 above cap 5.
    DegreeCensus census;
    census.cap = 5;
    census.vertex_total = 100;
    census.overflow = 15;
    census.counts[GeneralizedDegree{1}] = 60;
    census.counts[GeneralizedDegree{2}] = 25;

    // Theory side: x(d) = 4 / (d (d+1) (d+2)) tabulated to the same cap.
    TheoryTable table;
    table.type_count = 1;
    table.cap = 5;
    table.zeta = {1.0};
    table.values[GeneralizedDegree{0}] = 0.0;
    for (int d = 1; d <= 5; ++d)
        table.values[GeneralizedDegree{d}] = mtpa::closed_form_ba_tree(d);
    for (const auto& [d, v] : table.values) table.partial_mass += v;

    auto report = mtpa::compare(census, table);
    CHECK(report.cap == 5);
    CHECK(report.vertex_total == 100);
    // largest pointwise gap is at d = 2: |0.25 - 1/6| = 1/12
    CHECK(report.sup_distance == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    // half the sum of |0.6 - 2/3|, |0.25 - 1/6|, 1/15, 1/30, 2/105
    CHECK(report.tv_partial == doctest::Approx(113.0 / 840.0).epsilon(1e-12));
    CHECK(report.ignored_mass_empirical == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(report.ignored_mass_theory ==
          doctest::Approx(1.0 - table.partial_mass).epsilon(1e-12));
    CHECK(report.zeta == std::vector<double>{1.0});

    SUBCASE("shape mismatches are rejected") {
        TheoryTable wrong_cap = table;
        wrong_cap.cap = 6;
        CHECK_THROWS_AS(mtpa::compare(census, wrong_cap), std::invalid_argument);

        DegreeCensus two_types;
        two_types.cap = 5;
        two_types.vertex_total = 1;
        two_types.counts[GeneralizedDegree{1, 0}] = 1;
        CHECK_THROWS_AS(mtpa::compare(two_types, table), std::invalid_argument);
    }
    SUBCASE("census against its own proportions is at distance zero") {
        TheoryTable self;
        self.type_count = 1;
        self.cap = 5;
        for (const auto& [d, c] : census.counts)
            self.values[d] = static_cast<double>(c) / 100.0;
        self.partial_mass = 0.85;
        auto zero = mtpa::compare(census, self);
        CHECK(zero.sup_distance == 0.0);
        CHECK(zero.tv_partial == 0.0);
    }
}

TEST_CASE("stats: tail fit is exact on synthetic power laws") {
    std::vector<std::pair<double, double>> series;
    for (int l = 1; l <= 500; ++l)
        series.emplace_back(l, 7.0 * std::pow(static_cast<double>(l), -3.0));
    auto fit = mtpa::fit_tail_exponent(series, 100, 400);
    CHECK(fit.points == 301);
    CHECK(fit.slope == doctest::Approx(-3.0).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-9));
    CHECK(fit.slope_std_error < 1e-9);

    SUBCASE("constant series has slope zero") {
        std::vector<std::pair<double, double>> flat;
        for (int l = 1; l <= 200; ++l) flat.emplace_back(l, 0.125);
        auto f = mtpa::fit_tail_exponent(flat, 10, 150);
        CHECK(f.slope == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("error cases") {
        CHECK_THROWS_AS(mtpa::fit_tail_exponent(series, 100, 105), std::invalid_argument);
        CHECK_THROWS_AS(mtpa::fit_tail_exponent(series, 400, 100), std::invalid_argument);
        auto bad = series;
        bad[199].second = 0.0;
        CHECK_THROWS_AS(mtpa::fit_tail_exponent(bad, 100, 400), std::invalid_argument);
    }
}

TEST_CASE("stats: KS test accepts matching samples and rejects mismatches") {
    RngStream rng(71, 0);
    SUBCASE("uniform samples against Beta(1,1)") {
        std::vector<double> samples;
        for (int i = 0; i < 500; ++i) samples.push_back(rng.uniform01());
        auto result = mtpa::ks_test_beta(samples, 1, 1);
        CHECK(result.samples == 500);
        CHECK(result.p_value > 0.01);
    }
    SUBCASE("max of two uniforms is Beta(2,1)") {
        std::vector<double> samples;
        for (int i = 0; i < 500; ++i) samples.push_back(std::max(rng.uniform01(), rng.uniform01()));
        CHECK(mtpa::ks_test_beta(samples, 2, 1).p_value > 0.01);
        // and it is decisively not uniform
        CHECK(mtpa::ks_test_beta(samples, 1, 1).p_value < 1e-6);
    }
    SUBCASE("degenerate sample at 0.5") {
        std::vector<double> samples(200, 0.5);
        auto result = mtpa::ks_test_beta(samples, 1, 1);
        CHECK(result.statistic == doctest::Approx(0.5).epsilon(0.01));
        CHECK(result.p_value < 1e-10);
    }
    SUBCASE("too few samples") {
        std::vector<double> samples(49, 0.5);
        CHECK_THROWS_AS(mtpa::ks_test_beta(samples, 1, 1), std::invalid_argument);
    }
}

TEST_CASE("stats: dirichlet marginal test distinguishes the right Beta") {
    RngStream rng(73, 0);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 400; ++i) {
        double z = rng.uniform01();
        rows.push_back({z, 1.0 - z});
    }
    auto uniform_fit = mtpa::dirichlet_marginal_test(rows, {1, 1});
    REQUIRE(uniform_fit.size() == 2);
    CHECK(uniform_fit[0].p_value > 0.01);
    CHECK(uniform_fit[1].p_value > 0.01);

    // the same data is far from the Beta(2,1) marginal of a (2,1) seed
    auto wrong_seed = mtpa::dirichlet_marginal_test(rows, {2, 1});
    CHECK(wrong_seed[0].p_value < 1e-4);

    SUBCASE("input validation") {
        CHECK_THROWS_AS(mtpa::dirichlet_marginal_test({{0.5, 0.5}}, {1, 1}),
                        std::invalid_argument);
        CHECK_THROWS_AS(mtpa::dirichlet_marginal_test(rows, {1, 0}), std::invalid_argument);
        auto ragged = rows;
        ragged[7] = {1.0};
        CHECK_THROWS_AS(mtpa::dirichlet_marginal_test(ragged, {1, 1}), std::invalid_argument);
    }
}

TEST_CASE("stats: ensembles are deterministic and parallelism-independent") {
    auto spec = ModelSpec::ba(2, BatchDistribution::constant(1), InitialConfig::parallel_pair(2),
                              83, 400);
    mtpa::EnsembleOptions serial;
    serial.parallelism = 1;
    mtpa::EnsembleOptions wide;
    wide.parallelism = 8;

    auto a = mtpa::ensemble_run(spec, 16, serial);
    auto b = mtpa::ensemble_run(spec, 16, wide);
    REQUIRE(a.replicas.size() == 16);
    REQUIRE(b.replicas.size() == 16);
    for (std::size_t r = 0; r < 16; ++r) {
        CHECK(a.replicas[r].replica == static_cast<int>(r));
        CHECK(a.replicas[r].zeta == b.replicas[r].zeta);
        CHECK(a.replicas[r].edges_per_step == b.replicas[r].edges_per_step);
    }
    CHECK(a.zeta_mean == b.zeta_mean);

    SUBCASE("one replica equals a single grow call on stream (seed, 0)") {
        auto single = mtpa::ensemble_run(spec, 1, serial);
        auto direct = mtpa::grow(spec, 0);
        CHECK(single.replicas[0].zeta == direct.snapshots.back().zeta);
    }
    SUBCASE("ensemble mean of the type share stays at its starting value") {
        auto big = mtpa::ensemble_run(spec, 64, wide);
        // parallel seed starts at zeta_0 = 1/2; optional stopping keeps the
        // replica mean there up to monte-carlo noise
        CHECK(std::abs(big.zeta_mean[0] - 0.5) <= 3.0 * big.zeta_std_error[0]);
    }
    SUBCASE("compare cap attaches per-replica reports") {
        mtpa::EnsembleOptions with_compare = wide;
        with_compare.compare_cap = 6;
        auto c = mtpa::ensemble_run(spec, 8, with_compare);
        for (const auto& r : c.replicas) {
            REQUIRE(r.comparison.has_value());
            CHECK(r.comparison->cap == 6);
            CHECK(r.comparison->sup_distance < 0.2);
            CHECK(r.comparison->zeta == r.zeta);
        }
        // without the flag no comparison is computed
        CHECK_FALSE(a.replicas[0].comparison.has_value());
    }
    SUBCASE("replica count is validated") {
        CHECK_THROWS_AS(mtpa::ensemble_run(spec, 0, serial), std::invalid_argument);
    }
}
