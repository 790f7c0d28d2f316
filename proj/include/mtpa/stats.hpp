#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mtpa/graph.hpp"
#include "mtpa/model_spec.hpp"
#include "mtpa/theory.hpp"

namespace mtpa {

// Distances between an empirical degree census and a theory table over the
// union of their tabulated supports (missing entries read as 0). The two
// sides must have the same cap and type count. tv_partial is the total
// variation restricted to that support, always <= 1; the mass each side
// leaves out of the comparison is reported separately.
struct ComparisonReport {
    int cap = 0;
    std::int64_t vertex_total = 0;
    double sup_distance = 0.0;
    double tv_partial = 0.0;
    double ignored_mass_empirical = 0.0;  // census overflow share
    double ignored_mass_theory = 0.0;     // 1 - partial_mass
    std::vector<double> zeta;             // from the theory side
};

ComparisonReport compare(const DegreeCensus& census, const TheoryTable& theory);

// Symmetric core of compare(): sup and half-L1 distance between two
// finitely supported nonnegative functions.
struct DistancePair {
    double sup = 0.0;
    double tv = 0.0;
};
DistancePair distribution_distances(const std::map<GeneralizedDegree, double>& a,
                                    const std::map<GeneralizedDegree, double>& b);

// OLS fit of log(value) against log(l) over points with l in
// [l_min, l_max]. Requires at least 10 points in range, all with positive
// values.
struct TailFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_std_error = 0.0;
    int points = 0;
};
TailFit fit_tail_exponent(const std::vector<std::pair<double, double>>& series,
                          double l_min, double l_max);

// Two-sided KS test against Beta(a, b) with positive integer parameters;
// p-value from the asymptotic Kolmogorov law. Requires >= 50 samples.
struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
    std::size_t samples = 0;
};
KsResult ks_test_beta(std::vector<double> samples, int a, int b);

// Per-type KS tests of replica edge-type proportions against the Beta
// marginals with parameters (e_k, sum_j e_j - e_k) read off the seed
// graph's per-type edge counts.
std::vector<KsResult> dirichlet_marginal_test(const std::vector<std::vector<double>>& zeta_rows,
                                              const std::vector<std::int64_t>& initial_type_counts);

struct ReplicaSummary {
    int replica = 0;
    std::vector<double> zeta;
    double edges_per_step = 0.0;
    std::optional<ComparisonReport> comparison;
};

struct EnsembleResult {
    std::vector<ReplicaSummary> replicas;
    std::vector<double> zeta_mean;
    std::vector<double> zeta_std_error;
    double edges_per_step_mean = 0.0;
};

struct EnsembleOptions {
    int parallelism = 1;
    // When >= 0, each replica's final census is compared against the
    // model's theory table evaluated at that replica's realized zeta,
    // tabulated up to this cap.
    int compare_cap = -1;
};

// Runs `replicas` independent growths of the spec; replica r draws from
// rng stream (spec.seed, r), so results are bit-identical for any
// parallelism level and scheduling order. A failing replica aborts the
// ensemble with an error naming the replica.
EnsembleResult ensemble_run(const ModelSpec& spec, int replicas,
                            const EnsembleOptions& options = {});

} // namespace mtpa
