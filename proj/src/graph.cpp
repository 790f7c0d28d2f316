#include "mtpa/graph.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "mtpa/errors.hpp"

namespace mtpa {

InitialConfig InitialConfig::parallel_pair(int type_count) {
    InitialConfig config;
    config.vertex_count = 2;
    for (int k = 0; k < type_count; ++k)
        config.edges.push_back({0, 1, k});
    return config;
}

InitialConfig InitialConfig::path(int type_count) {
    InitialConfig config;
    config.vertex_count = type_count + 1;
    for (int k = 0; k < type_count; ++k)
        config.edges.push_back({static_cast<VertexId>(k), static_cast<VertexId>(k + 1), k});
    return config;
}

void InitialConfig::validate(int type_count) const {
    if (type_count < 1)
        throw ConfigError("initial config: type count must be >= 1");
    if (vertex_count < 2)
        throw ConfigError("initial config: need at least 2 vertices");
    std::vector<std::int64_t> per_type(type_count, 0);
    for (const auto& e : edges) {
        if (e.a == e.b)
            throw ConfigError("initial config: self-loop at vertex " + std::to_string(e.a));
        if (e.a >= static_cast<VertexId>(vertex_count) || e.b >= static_cast<VertexId>(vertex_count))
            throw ConfigError("initial config: edge endpoint out of range");
        if (e.type < 0 || e.type >= type_count)
            throw ConfigError("initial config: edge type out of range");
        ++per_type[e.type];
    }
    for (int k = 0; k < type_count; ++k)
        if (per_type[k] == 0)
            throw ConfigError("initial config: no edge of type " + std::to_string(k + 1));
}

MultiTypeGraph::MultiTypeGraph(const InitialConfig& config, int type_count) {
    config.validate(type_count);
    type_count_ = type_count;
    initial_vertex_count_ = config.vertex_count;
    type_endpoints_.resize(type_count);
    edge_type_counts_.assign(type_count, 0);
    for (int v = 0; v < config.vertex_count; ++v)
        add_vertex_slot();
    for (const auto& e : config.edges) {
        degrees_[e.a * type_count_ + e.type] += 1;
        degrees_[e.b * type_count_ + e.type] += 1;
        total_degrees_[e.a] += 1;
        total_degrees_[e.b] += 1;
        type_endpoints_[e.type].push_back(e.a);
        type_endpoints_[e.type].push_back(e.b);
        global_endpoints_.push_back(e.a);
        global_endpoints_.push_back(e.b);
        edge_type_counts_[e.type] += 1;
    }
}

MultiTypeGraph MultiTypeGraph::from_parts(int type_count,
                                          int initial_vertex_count,
                                          std::vector<std::vector<int>> vertex_degrees,
                                          std::vector<std::vector<VertexId>> type_endpoints,
                                          std::vector<VertexId> global_endpoints) {
    if (type_count < 1)
        throw std::invalid_argument("from_parts: type count must be >= 1");
    const std::size_t vertices = vertex_degrees.size();
    if (initial_vertex_count < 2 || static_cast<std::size_t>(initial_vertex_count) > vertices)
        throw std::invalid_argument("from_parts: bad initial vertex count");
    if (type_endpoints.size() != static_cast<std::size_t>(type_count))
        throw std::invalid_argument("from_parts: endpoint array count != type count");

    MultiTypeGraph g;
    g.type_count_ = type_count;
    g.initial_vertex_count_ = initial_vertex_count;
    g.step_ = static_cast<long>(vertices) - initial_vertex_count;
    g.edge_type_counts_.assign(type_count, 0);
    g.degrees_.reserve(vertices * type_count);
    g.total_degrees_.reserve(vertices);
    for (const auto& row : vertex_degrees) {
        if (row.size() != static_cast<std::size_t>(type_count))
            throw std::invalid_argument("from_parts: degree row length != type count");
        int total = 0;
        for (int d : row) {
            if (d < 0) throw std::invalid_argument("from_parts: negative degree");
            g.degrees_.push_back(d);
            total += d;
        }
        g.total_degrees_.push_back(total);
    }

    // Endpoint arrays must tally with the degree table entry by entry.
    std::vector<std::int64_t> tally(vertices * type_count, 0);
    for (int k = 0; k < type_count; ++k) {
        for (VertexId v : type_endpoints[k]) {
            if (v >= vertices)
                throw std::invalid_argument("from_parts: endpoint out of range");
            ++tally[static_cast<std::size_t>(v) * type_count + k];
        }
        if (type_endpoints[k].size() % 2 != 0)
            throw std::invalid_argument("from_parts: odd endpoint array length");
        g.edge_type_counts_[k] = static_cast<std::int64_t>(type_endpoints[k].size()) / 2;
        if (g.edge_type_counts_[k] == 0)
            throw std::invalid_argument("from_parts: no edge of type " + std::to_string(k + 1));
    }
    for (std::size_t i = 0; i < tally.size(); ++i)
        if (tally[i] != g.degrees_[i])
            throw std::invalid_argument("from_parts: endpoint arrays disagree with degrees");

    std::vector<std::int64_t> global_tally(vertices, 0);
    for (VertexId v : global_endpoints) {
        if (v >= vertices)
            throw std::invalid_argument("from_parts: global endpoint out of range");
        ++global_tally[v];
    }
    for (std::size_t v = 0; v < vertices; ++v)
        if (global_tally[v] != g.total_degrees_[v])
            throw std::invalid_argument("from_parts: global endpoint array disagrees with degrees");

    g.type_endpoints_ = std::move(type_endpoints);
    g.global_endpoints_ = std::move(global_endpoints);
    return g;
}

void MultiTypeGraph::add_vertex_slot() {
    degrees_.insert(degrees_.end(), type_count_, 0);
    total_degrees_.push_back(0);
}

std::size_t MultiTypeGraph::vertex_count() const {
    return total_degrees_.size();
}

void MultiTypeGraph::apply_step(const NewVertexBundle& bundle) {
    const VertexId newborn = static_cast<VertexId>(vertex_count());
    for (const auto& e : bundle.edges) {
        if (e.endpoint >= newborn)
            throw std::invalid_argument("apply_step: bundle endpoint " +
                                        std::to_string(e.endpoint) + " does not exist");
        if (e.type < 0 || e.type >= type_count_)
            throw std::invalid_argument("apply_step: bundle edge type out of range");
    }
    add_vertex_slot();
    for (const auto& e : bundle.edges) {
        degrees_[static_cast<std::size_t>(e.endpoint) * type_count_ + e.type] += 1;
        degrees_[static_cast<std::size_t>(newborn) * type_count_ + e.type] += 1;
        total_degrees_[e.endpoint] += 1;
        total_degrees_[newborn] += 1;
        type_endpoints_[e.type].push_back(e.endpoint);
        type_endpoints_[e.type].push_back(newborn);
        global_endpoints_.push_back(e.endpoint);
        global_endpoints_.push_back(newborn);
        edge_type_counts_[e.type] += 1;
    }
    ++step_;
}

int MultiTypeGraph::degree_of(VertexId v, int type) const {
    return degrees_.at(static_cast<std::size_t>(v) * type_count_ + type);
}

int MultiTypeGraph::total_degree_of(VertexId v) const {
    return total_degrees_.at(v);
}

GeneralizedDegree MultiTypeGraph::degree(VertexId v) const {
    GeneralizedDegree d(static_cast<std::size_t>(type_count_));
    for (int k = 0; k < type_count_; ++k)
        d[k] = degrees_[static_cast<std::size_t>(v) * type_count_ + k];
    return d;
}

std::int64_t MultiTypeGraph::edge_count() const {
    return std::accumulate(edge_type_counts_.begin(), edge_type_counts_.end(), std::int64_t{0});
}

std::vector<double> MultiTypeGraph::edge_type_proportions() const {
    const std::int64_t total = edge_count();
    if (total == 0)
        throw std::invalid_argument("edge_type_proportions: graph has no edges");
    std::vector<double> zeta(type_count_);
    for (int k = 0; k < type_count_; ++k)
        zeta[k] = static_cast<double>(edge_type_counts_[k]) / static_cast<double>(total);
    return zeta;
}

DegreeCensus MultiTypeGraph::degree_census(int cap) const {
    if (cap < 0) throw std::invalid_argument("degree_census: cap must be >= 0");
    DegreeCensus census;
    census.cap = cap;
    census.vertex_total = static_cast<std::int64_t>(vertex_count());
    for (std::size_t v = 0; v < vertex_count(); ++v) {
        if (total_degrees_[v] > cap) {
            ++census.overflow;
            continue;
        }
        GeneralizedDegree d = degree(static_cast<VertexId>(v));
        ++census.counts[d];
    }
    return census;
}

std::map<int, std::int64_t> MultiTypeGraph::total_degree_census(int cap) const {
    if (cap < 0) throw std::invalid_argument("total_degree_census: cap must be >= 0");
    std::map<int, std::int64_t> census;
    for (std::size_t v = 0; v < vertex_count(); ++v) {
        int d = total_degrees_[v];
        ++census[d > cap ? cap + 1 : d];
    }
    return census;
}

} // namespace mtpa
