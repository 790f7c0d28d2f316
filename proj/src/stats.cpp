#include "mtpa/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mtpa/models.hpp"
#include "mtpa/special_functions.hpp"

namespace mtpa {

DistancePair distribution_distances(const std::map<GeneralizedDegree, double>& a,
                                    const std::map<GeneralizedDegree, double>& b) {
    DistancePair out;
    double l1 = 0.0;
    auto account = [&out, &l1](double pa, double pb) {
        double diff = std::abs(pa - pb);
        out.sup = std::max(out.sup, diff);
        l1 += diff;
    };
    for (const auto& [d, pa] : a) {
        auto it = b.find(d);
        account(pa, it == b.end() ? 0.0 : it->second);
    }
    for (const auto& [d, pb] : b)
        if (a.find(d) == a.end()) account(0.0, pb);
    out.tv = 0.5 * l1;
    return out;
}

ComparisonReport compare(const DegreeCensus& census, const TheoryTable& theory) {
    if (census.cap != theory.cap)
        throw std::invalid_argument("compare: census cap " + std::to_string(census.cap) +
                                    " != theory cap " + std::to_string(theory.cap));
    if (!census.counts.empty() &&
        census.counts.begin()->first.type_count() != static_cast<std::size_t>(theory.type_count))
        throw std::invalid_argument("compare: census and theory have different type counts");
    if (census.vertex_total <= 0)
        throw std::invalid_argument("compare: census has no vertices");

    std::map<GeneralizedDegree, double> empirical;
    for (const auto& [d, count] : census.counts)
        empirical.emplace(d, static_cast<double>(count) / static_cast<double>(census.vertex_total));

    DistancePair distances = distribution_distances(empirical, theory.values);
    ComparisonReport report;
    report.cap = census.cap;
    report.vertex_total = census.vertex_total;
    report.sup_distance = distances.sup;
    report.tv_partial = distances.tv;
    report.ignored_mass_empirical =
        static_cast<double>(census.overflow) / static_cast<double>(census.vertex_total);
    report.ignored_mass_theory = std::max(0.0, 1.0 - theory.partial_mass);
    report.zeta = theory.zeta;
    return report;
}

TailFit fit_tail_exponent(const std::vector<std::pair<double, double>>& series,
                          double l_min, double l_max) {
    if (!(l_min > 0.0) || !(l_max > l_min))
        throw std::invalid_argument("fit_tail_exponent: need 0 < l_min < l_max");
    std::vector<std::pair<double, double>> logs;
    for (const auto& [l, value] : series) {
        if (l < l_min || l > l_max) continue;
        if (!(value > 0.0))
            throw std::invalid_argument("fit_tail_exponent: nonpositive value at l = " +
                                        std::to_string(l));
        logs.emplace_back(std::log(l), std::log(value));
    }
    if (logs.size() < 10)
        throw std::invalid_argument("fit_tail_exponent: need at least 10 points in range, got " +
                                    std::to_string(logs.size()));

    const double n = static_cast<double>(logs.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : logs) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    TailFit fit;
    fit.points = static_cast<int>(logs.size());
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (const auto& [x, y] : logs) {
        double r = y - (fit.intercept + fit.slope * x);
        rss += r * r;
    }
    fit.slope_std_error = std::sqrt(rss / (n - 2.0) / sxx);
    return fit;
}

KsResult ks_test_beta(std::vector<double> samples, int a, int b) {
    if (samples.size() < 50)
        throw std::invalid_argument("ks_test_beta: need at least 50 samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d_stat = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double cdf = beta_cdf_integer(samples[i], a, b);
        double lower = cdf - static_cast<double>(i) / n;
        double upper = static_cast<double>(i + 1) / n - cdf;
        d_stat = std::max({d_stat, lower, upper});
    }
    KsResult result;
    result.statistic = d_stat;
    result.p_value = kolmogorov_sf(std::sqrt(n) * d_stat);
    result.samples = samples.size();
    return result;
}

std::vector<KsResult> dirichlet_marginal_test(const std::vector<std::vector<double>>& zeta_rows,
                                              const std::vector<std::int64_t>& initial_type_counts) {
    if (zeta_rows.size() < 50)
        throw std::invalid_argument("dirichlet_marginal_test: need at least 50 replicas");
    const std::size_t types = initial_type_counts.size();
    if (types < 1)
        throw std::invalid_argument("dirichlet_marginal_test: empty type counts");
    std::int64_t total = 0;
    for (std::int64_t c : initial_type_counts) {
        if (c < 1)
            throw std::invalid_argument("dirichlet_marginal_test: type counts must be >= 1");
        total += c;
    }
    for (const auto& row : zeta_rows)
        if (row.size() != types)
            throw std::invalid_argument("dirichlet_marginal_test: row width != type count");

    std::vector<KsResult> results;
    results.reserve(types);
    for (std::size_t k = 0; k < types; ++k) {
        std::vector<double> samples;
        samples.reserve(zeta_rows.size());
        for (const auto& row : zeta_rows) samples.push_back(row[k]);
        results.push_back(ks_test_beta(std::move(samples),
                                       static_cast<int>(initial_type_counts[k]),
                                       static_cast<int>(total - initial_type_counts[k])));
    }
    return results;
}

EnsembleResult ensemble_run(const ModelSpec& spec, int replicas, const EnsembleOptions& options) {
    if (replicas < 1) throw std::invalid_argument("ensemble_run: replicas must be >= 1");
    if (options.parallelism < 1)
        throw std::invalid_argument("ensemble_run: parallelism must be >= 1");
    ModelSpec checked = spec;
    checked.validate();

    EnsembleResult result;
    result.replicas.resize(static_cast<std::size_t>(replicas));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(replicas));
    std::atomic<int> next{0};

    auto worker = [&]() {
        for (;;) {
            int r = next.fetch_add(1);
            if (r >= replicas) return;
            try {
                Trajectory t = grow(checked, static_cast<std::uint64_t>(r));
                ReplicaSummary& summary = result.replicas[static_cast<std::size_t>(r)];
                summary.replica = r;
                summary.zeta = t.graph.edge_type_proportions();
                summary.edges_per_step = t.edges_per_step;
                if (options.compare_cap >= 0) {
                    DegreeCensus census = t.graph.degree_census(options.compare_cap);
                    TheoryTable table =
                        checked.kind == ModelKind::BA
                            ? BaTheory(*checked.batch, summary.zeta).table(options.compare_cap)
                            : IeTheory(*checked.rate, summary.zeta).table(options.compare_cap);
                    summary.comparison = compare(census, table);
                }
            } catch (...) {
                failures[static_cast<std::size_t>(r)] = std::current_exception();
            }
        }
    };

    int threads = std::min(options.parallelism, replicas);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (int r = 0; r < replicas; ++r) {
        if (!failures[static_cast<std::size_t>(r)]) continue;
        try {
            std::rethrow_exception(failures[static_cast<std::size_t>(r)]);
        } catch (const std::exception& e) {
            throw std::runtime_error("ensemble replica " + std::to_string(r) +
                                     " failed: " + e.what());
        }
    }

    const std::size_t types = static_cast<std::size_t>(checked.type_count);
    result.zeta_mean.assign(types, 0.0);
    result.zeta_std_error.assign(types, 0.0);
    for (const auto& summary : result.replicas) {
        for (std::size_t k = 0; k < types; ++k) result.zeta_mean[k] += summary.zeta[k];
        result.edges_per_step_mean += summary.edges_per_step;
    }
    const double R = static_cast<double>(replicas);
    for (std::size_t k = 0; k < types; ++k) result.zeta_mean[k] /= R;
    result.edges_per_step_mean /= R;
    if (replicas > 1) {
        for (const auto& summary : result.replicas)
            for (std::size_t k = 0; k < types; ++k) {
                double dev = summary.zeta[k] - result.zeta_mean[k];
                result.zeta_std_error[k] += dev * dev;
            }
        for (std::size_t k = 0; k < types; ++k)
            result.zeta_std_error[k] = std::sqrt(result.zeta_std_error[k] / (R - 1.0) / R);
    }
    return result;
}

} // namespace mtpa
