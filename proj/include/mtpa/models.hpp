#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mtpa/graph.hpp"
#include "mtpa/model_spec.hpp"
#include "mtpa/rng.hpp"

namespace mtpa {

// One BA step against the frozen graph: m edges, each with its existing
// endpoint drawn uniformly from the global endpoint array of G_{n-1} (i.e.
// proportionally to total degree) and its type drawn from that endpoint's
// frozen per-type degree proportions. The graph is not modified; apply the
// returned bundle to advance.
NewVertexBundle ba_step(const MultiTypeGraph& graph, int m, RngStream& rng);

// One IE step against the frozen graph: per type k an independent
// Poisson(lambda * |E^(k)| / |E|) number of edges, each with its existing
// endpoint drawn uniformly from the frozen type-k endpoint array. May
// return an empty bundle; such newborns stay isolated.
NewVertexBundle ie_step(const MultiTypeGraph& graph, double lambda, RngStream& rng);

// Per-step overrides for non-identically-distributed growth; step is the
// 1-based index of the step being generated. When set, the corresponding
// distribution in the spec is ignored.
struct GrowOverrides {
    std::function<int(long)> batch_at;
    std::function<double(long)> rate_at;
};

struct CensusSnapshot {
    long step;
    DegreeCensus census;
    std::vector<double> zeta;
    std::vector<std::int64_t> edge_type_counts;
};

struct Trajectory {
    std::vector<CensusSnapshot> snapshots;
    MultiTypeGraph graph;       // final state
    double edges_per_step;      // |E_n| / n
};

// Grow a graph for spec.steps steps, snapshotting the census at each step
// in the schedule (default: final step only). Fully deterministic given
// the rng stream.
Trajectory grow(const ModelSpec& spec, RngStream& rng, const GrowOverrides& overrides = {});

// Convenience: grow with the stream (spec.seed, stream).
Trajectory grow(const ModelSpec& spec, std::uint64_t stream = 0);

} // namespace mtpa
