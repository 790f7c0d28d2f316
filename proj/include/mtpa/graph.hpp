#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mtpa/degree.hpp"

namespace mtpa {

using VertexId = std::uint32_t;

// One edge of the seed graph. Endpoints are 0-based vertex ids, type is a
// 0-based type index (config files and CSV headers use 1-based type labels).
struct InitialEdge {
    VertexId a;
    VertexId b;
    int type;
};

// Seed multigraph G_0. Must have s >= 2 vertices, no self-loops, and at
// least one edge of every type.
struct InitialConfig {
    int vertex_count = 0;
    std::vector<InitialEdge> edges;

    // Default seed: two vertices joined by N parallel edges, one per type.
    static InitialConfig parallel_pair(int type_count);

    // Path seed: N+1 vertices, edge i of type i along the path; a tree with
    // exactly one edge per type.
    static InitialConfig path(int type_count);

    // Throws ConfigError on violation of any invariant.
    void validate(int type_count) const;
};

// The edges a single growth step attaches to the newborn vertex. Each entry
// is (existing endpoint, 0-based type); the other endpoint is the newborn.
// May be empty (the newborn stays isolated).
struct BundleEdge {
    VertexId endpoint;
    int type;
};

struct NewVertexBundle {
    std::vector<BundleEdge> edges;
};

// Census of generalized degrees: counts for every degree with total <= cap,
// plus a pooled overflow count for the rest. Proportions are count over
// vertex_total.
struct DegreeCensus {
    static constexpr int kDefaultCap = 256;

    std::map<GeneralizedDegree, std::int64_t> counts;
    std::int64_t overflow = 0;
    std::int64_t vertex_total = 0;
    int cap = kDefaultCap;

    double proportion(const GeneralizedDegree& d) const {
        auto it = counts.find(d);
        if (it == counts.end()) return 0.0;
        return static_cast<double>(it->second) / static_cast<double>(vertex_total);
    }
};

// Growing N-type multigraph. State per the growth law: per-vertex
// generalized degrees, one endpoint array per type (vertex v appears
// deg^(k)(v) times in array k), the global endpoint array (v appears deg(v)
// times), and per-type edge counts. Adjacency is deliberately not stored;
// nothing downstream needs neighbor queries and the endpoint arrays are the
// sampling structure the growth law is defined on.
class MultiTypeGraph {
public:
    MultiTypeGraph(const InitialConfig& config, int type_count);

    // Restore from serialized parts; validates all cross-invariants.
    static MultiTypeGraph from_parts(int type_count,
                                     int initial_vertex_count,
                                     std::vector<std::vector<int>> vertex_degrees,
                                     std::vector<std::vector<VertexId>> type_endpoints,
                                     std::vector<VertexId> global_endpoints);

    // Adds vertex s + n with the bundle's edges and advances n by one. All
    // bundle endpoints must already exist. Degrees and endpoint arrays are
    // updated together so the handshake identity holds after every step.
    void apply_step(const NewVertexBundle& bundle);

    long step() const { return step_; }                       // n
    int type_count() const { return type_count_; }            // N
    int initial_vertex_count() const { return initial_vertex_count_; }
    std::size_t vertex_count() const;                         // s + n

    int degree_of(VertexId v, int type) const;
    int total_degree_of(VertexId v) const;
    GeneralizedDegree degree(VertexId v) const;

    std::span<const VertexId> endpoints() const { return global_endpoints_; }
    std::span<const VertexId> endpoints(int type) const { return type_endpoints_[type]; }

    const std::vector<std::int64_t>& edge_type_counts() const { return edge_type_counts_; }
    std::int64_t edge_count() const;                          // |E_n|

    // zeta_n: per-type share of the edge set. Throws if the graph has no
    // edges (unreachable from a valid InitialConfig).
    std::vector<double> edge_type_proportions() const;

    DegreeCensus degree_census(int cap = DegreeCensus::kDefaultCap) const;

    // Census of total degrees D; marginalizes the generalized census.
    // Degrees above cap pool under key cap + 1.
    std::map<int, std::int64_t> total_degree_census(int cap = DegreeCensus::kDefaultCap) const;

private:
    MultiTypeGraph() = default;

    int type_count_ = 0;
    int initial_vertex_count_ = 0;
    long step_ = 0;
    std::vector<std::int32_t> degrees_;        // flat, vertex-major, N per vertex
    std::vector<std::int32_t> total_degrees_;
    std::vector<std::vector<VertexId>> type_endpoints_;
    std::vector<VertexId> global_endpoints_;
    std::vector<std::int64_t> edge_type_counts_;

    void add_vertex_slot();
};

} // namespace mtpa
