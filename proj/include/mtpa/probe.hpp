#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mtpa/degree.hpp"
#include "mtpa/graph.hpp"
#include "mtpa/model_spec.hpp"
#include "mtpa/rng.hpp"

namespace mtpa {

struct ProbeEstimate {
    double value = 0.0;      // scaled as documented per field
    double std_error = 0.0;  // same scale
    std::int64_t hits = 0;
};

// Monte-Carlo estimates of the one-step attachment coefficients at a fixed
// generalized degree d, from a frozen graph: repeated single steps are
// sampled (never applied) and per-event frequencies are scaled by the step
// index n of the probed step.
//   u_hat:     n * P(vertex of degree d gains at least one edge)
//   r_hat[k]:  n * P(vertex of degree d - e_k gains exactly one type-k edge
//              and nothing else); present only for k with d_k >= 1
//   q_hat:     P(newborn degree equals d), unscaled
//   multi_hat: n * P(vertex of degree d gains two or more edges)
struct AssumptionProbeReport {
    GeneralizedDegree d;
    long scale_n = 0;
    std::int64_t samples = 0;
    bool augmented = false;  // some designated vertex had to be synthesized
    ProbeEstimate u_hat;
    std::vector<std::optional<ProbeEstimate>> r_hat;
    ProbeEstimate q_hat;
    ProbeEstimate multi_hat;
};

// When the graph holds no vertex of a required degree (d or d - e_k), the
// probe grows a private copy by two ordinary steps: an isolated anchor,
// then a phantom attached to the anchor with exactly the required degree.
// The added edges perturb the attachment law by a relative O(D / |E|).
AssumptionProbeReport probe_assumptions(const MultiTypeGraph& graph, const ModelSpec& spec,
                                        const GeneralizedDegree& d, std::int64_t samples,
                                        RngStream& rng);

} // namespace mtpa
