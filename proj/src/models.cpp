#include "mtpa/models.hpp"

#include <algorithm>
#include <stdexcept>

#include "mtpa/errors.hpp"

namespace mtpa {

void ModelSpec::validate() {
    if (type_count < 1) throw ConfigError("types must be >= 1");
    if (steps < 0) throw ConfigError("steps must be >= 0");
    if (kind == ModelKind::BA) {
        if (!batch) throw ConfigError("BA model requires a batch distribution");
        if (rate) throw ConfigError("BA model does not take a rate distribution");
    } else {
        if (!rate) throw ConfigError("IE model requires a rate distribution");
        if (batch) throw ConfigError("IE model does not take a batch distribution");
    }
    initial.validate(type_count);
    if (census_cap < 0) throw ConfigError("census cap must be >= 0");
    for (long s : census_schedule)
        if (s < 1 || s > steps)
            throw ConfigError("census schedule entry " + std::to_string(s) +
                              " outside [1, steps]");
    std::sort(census_schedule.begin(), census_schedule.end());
    census_schedule.erase(std::unique(census_schedule.begin(), census_schedule.end()),
                          census_schedule.end());
}

ModelSpec ModelSpec::ba(int type_count, BatchDistribution batch, InitialConfig initial,
                        std::uint64_t seed, long steps) {
    ModelSpec spec;
    spec.kind = ModelKind::BA;
    spec.type_count = type_count;
    spec.batch = std::move(batch);
    spec.initial = std::move(initial);
    spec.seed = seed;
    spec.steps = steps;
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::ie(int type_count, RateDistribution rate, InitialConfig initial,
                        std::uint64_t seed, long steps) {
    ModelSpec spec;
    spec.kind = ModelKind::IE;
    spec.type_count = type_count;
    spec.rate = std::move(rate);
    spec.initial = std::move(initial);
    spec.seed = seed;
    spec.steps = steps;
    spec.validate();
    return spec;
}

NewVertexBundle ba_step(const MultiTypeGraph& graph, int m, RngStream& rng) {
    if (m < 1) throw std::invalid_argument("ba_step: batch size must be >= 1");
    auto global = graph.endpoints();
    if (global.empty()) throw std::invalid_argument("ba_step: graph has no edges");
    const int types = graph.type_count();
    NewVertexBundle bundle;
    bundle.edges.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        VertexId w = global[rng.uniform_index(global.size())];
        // Type choice by exact integer inversion of the endpoint's frozen
        // per-type degree proportions.
        int type = 0;
        if (types > 1) {
            std::uint64_t u = rng.uniform_index(
                static_cast<std::uint64_t>(graph.total_degree_of(w)));
            for (int k = 0; k < types; ++k) {
                std::uint64_t dk = static_cast<std::uint64_t>(graph.degree_of(w, k));
                if (u < dk) {
                    type = k;
                    break;
                }
                u -= dk;
            }
        }
        bundle.edges.push_back({w, type});
    }
    return bundle;
}

NewVertexBundle ie_step(const MultiTypeGraph& graph, double lambda, RngStream& rng) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("ie_step: lambda must be >= 0");
    const std::int64_t total_edges = graph.edge_count();
    if (total_edges == 0) throw std::invalid_argument("ie_step: graph has no edges");
    NewVertexBundle bundle;
    for (int k = 0; k < graph.type_count(); ++k) {
        double mean = lambda * static_cast<double>(graph.edge_type_counts()[k]) /
                      static_cast<double>(total_edges);
        long delta = rng.poisson(mean);
        auto pool = graph.endpoints(k);
        for (long i = 0; i < delta; ++i) {
            VertexId w = pool[rng.uniform_index(pool.size())];
            bundle.edges.push_back({w, k});
        }
    }
    return bundle;
}

Trajectory grow(const ModelSpec& spec, RngStream& rng, const GrowOverrides& overrides) {
    ModelSpec checked = spec;
    checked.validate();
    MultiTypeGraph graph(checked.initial, checked.type_count);

    std::vector<long> schedule = checked.census_schedule;
    if (schedule.empty() && checked.steps > 0) schedule.push_back(checked.steps);

    Trajectory trajectory{{}, std::move(graph), 0.0};
    std::size_t next_snapshot = 0;
    for (long step = 1; step <= checked.steps; ++step) {
        NewVertexBundle bundle;
        if (checked.kind == ModelKind::BA) {
            int m = overrides.batch_at ? overrides.batch_at(step) : checked.batch->sample(rng);
            bundle = ba_step(trajectory.graph, m, rng);
        } else {
            double lambda =
                overrides.rate_at ? overrides.rate_at(step) : checked.rate->sample(rng);
            bundle = ie_step(trajectory.graph, lambda, rng);
        }
        trajectory.graph.apply_step(bundle);
        if (next_snapshot < schedule.size() && schedule[next_snapshot] == step) {
            trajectory.snapshots.push_back({step,
                                            trajectory.graph.degree_census(checked.census_cap),
                                            trajectory.graph.edge_type_proportions(),
                                            trajectory.graph.edge_type_counts()});
            ++next_snapshot;
        }
    }
    trajectory.edges_per_step =
        checked.steps > 0
            ? static_cast<double>(trajectory.graph.edge_count()) / static_cast<double>(checked.steps)
            : 0.0;
    return trajectory;
}

Trajectory grow(const ModelSpec& spec, std::uint64_t stream) {
    RngStream rng(spec.seed, stream);
    return grow(spec, rng);
}

} // namespace mtpa
