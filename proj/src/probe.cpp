#include "mtpa/probe.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "mtpa/errors.hpp"
#include "mtpa/models.hpp"

namespace mtpa {

namespace {

std::optional<VertexId> find_vertex_with_degree(const MultiTypeGraph& graph,
                                                const GeneralizedDegree& target) {
    const int types = graph.type_count();
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        if (graph.total_degree_of(static_cast<VertexId>(v)) != target.total()) continue;
        bool match = true;
        for (int k = 0; k < types && match; ++k)
            match = graph.degree_of(static_cast<VertexId>(v), k) == target[k];
        if (match) return static_cast<VertexId>(v);
    }
    return std::nullopt;
}

// Adds a vertex of the target degree: an empty step creates an isolated
// anchor, a second step attaches the phantom to it with the target's
// multiplicities. For the all-zero target the anchor itself is the phantom.
VertexId synthesize_vertex(MultiTypeGraph& graph, const GeneralizedDegree& target) {
    graph.apply_step(NewVertexBundle{});
    VertexId anchor = static_cast<VertexId>(graph.vertex_count() - 1);
    if (target.total() == 0) return anchor;
    NewVertexBundle bundle;
    for (std::size_t k = 0; k < target.type_count(); ++k)
        for (int i = 0; i < target[k]; ++i)
            bundle.edges.push_back({anchor, static_cast<int>(k)});
    graph.apply_step(bundle);
    return static_cast<VertexId>(graph.vertex_count() - 1);
}

ProbeEstimate make_estimate(std::int64_t hits, std::int64_t samples, double scale) {
    double p = static_cast<double>(hits) / static_cast<double>(samples);
    ProbeEstimate e;
    e.hits = hits;
    e.value = scale * p;
    e.std_error = scale * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return e;
}

} // namespace

AssumptionProbeReport probe_assumptions(const MultiTypeGraph& graph, const ModelSpec& spec,
                                        const GeneralizedDegree& d, std::int64_t samples,
                                        RngStream& rng) {
    const int types = graph.type_count();
    if (spec.type_count != types)
        throw ConfigError("probe: spec type count does not match the graph");
    if (spec.kind == ModelKind::BA && !spec.batch)
        throw ConfigError("probe: BA spec has no batch distribution");
    if (spec.kind == ModelKind::IE && !spec.rate)
        throw ConfigError("probe: IE spec has no rate distribution");
    if (d.type_count() != static_cast<std::size_t>(types))
        throw std::invalid_argument("probe: degree has wrong number of types");
    for (int c : d.coords)
        if (c < 0) throw std::invalid_argument("probe: degree has a negative coordinate");
    if (samples < 1) throw std::invalid_argument("probe: samples must be >= 1");

    AssumptionProbeReport report;
    report.d = d;
    report.scale_n = graph.step() + 1;  // index of the step being simulated
    report.samples = samples;
    report.r_hat.assign(static_cast<std::size_t>(types), std::nullopt);

    // Designated vertices: degree d for u/multi, degree d - e_k for r_k.
    // All target degrees are distinct, so roles never collide.
    std::vector<GeneralizedDegree> reduced(static_cast<std::size_t>(types));
    std::optional<VertexId> main_vertex = find_vertex_with_degree(graph, d);
    std::vector<std::optional<VertexId>> reduced_vertex(static_cast<std::size_t>(types));
    bool need_copy = !main_vertex.has_value();
    for (int k = 0; k < types; ++k) {
        if (d[k] < 1) continue;
        reduced[k] = d;
        reduced[k][k] -= 1;
        reduced_vertex[k] = find_vertex_with_degree(graph, reduced[k]);
        need_copy = need_copy || !reduced_vertex[k].has_value();
    }

    MultiTypeGraph augmented = graph;
    if (need_copy) {
        report.augmented = true;
        if (!main_vertex) main_vertex = synthesize_vertex(augmented, d);
        for (int k = 0; k < types; ++k) {
            if (d[k] < 1 || reduced_vertex[k]) continue;
            reduced_vertex[k] = synthesize_vertex(augmented, reduced[k]);
        }
    }
    const MultiTypeGraph& frozen = augmented;
    const VertexId vm = *main_vertex;

    std::int64_t u_hits = 0, multi_hits = 0, q_hits = 0;
    std::vector<std::int64_t> r_hits(static_cast<std::size_t>(types), 0);
    std::vector<int> newborn(static_cast<std::size_t>(types));
    std::vector<int> gains_same(static_cast<std::size_t>(types));
    std::vector<int> gains_other(static_cast<std::size_t>(types));

    for (std::int64_t s = 0; s < samples; ++s) {
        NewVertexBundle bundle;
        if (spec.kind == ModelKind::BA)
            bundle = ba_step(frozen, spec.batch->sample(rng), rng);
        else
            bundle = ie_step(frozen, spec.rate->sample(rng), rng);

        std::fill(newborn.begin(), newborn.end(), 0);
        std::fill(gains_same.begin(), gains_same.end(), 0);
        std::fill(gains_other.begin(), gains_other.end(), 0);
        int main_gains = 0;
        for (const BundleEdge& e : bundle.edges) {
            ++newborn[static_cast<std::size_t>(e.type)];
            if (e.endpoint == vm) ++main_gains;
            for (int k = 0; k < types; ++k) {
                if (!reduced_vertex[k] || e.endpoint != *reduced_vertex[k]) continue;
                if (e.type == k)
                    ++gains_same[static_cast<std::size_t>(k)];
                else
                    ++gains_other[static_cast<std::size_t>(k)];
            }
        }
        if (main_gains >= 1) ++u_hits;
        if (main_gains >= 2) ++multi_hits;
        bool q_match = true;
        for (int k = 0; k < types && q_match; ++k)
            q_match = newborn[static_cast<std::size_t>(k)] == d[k];
        if (q_match) ++q_hits;
        for (int k = 0; k < types; ++k)
            if (reduced_vertex[k] && gains_same[static_cast<std::size_t>(k)] == 1 &&
                gains_other[static_cast<std::size_t>(k)] == 0)
                ++r_hits[static_cast<std::size_t>(k)];
    }

    const double n = static_cast<double>(report.scale_n);
    report.u_hat = make_estimate(u_hits, samples, n);
    report.multi_hat = make_estimate(multi_hits, samples, n);
    report.q_hat = make_estimate(q_hits, samples, 1.0);
    for (int k = 0; k < types; ++k)
        if (reduced_vertex[k])
            report.r_hat[static_cast<std::size_t>(k)] =
                make_estimate(r_hits[static_cast<std::size_t>(k)], samples, n);
    return report;
}

} // namespace mtpa
