#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pcnet/graph.hpp"
#include "pcnet/rng.hpp"

namespace pcnet {

/// Endpoint-pair distribution for candidate edges.
///   ER: both endpoints uniform over V (uniform perturbation model)
///   CL: endpoints proportional to weighted degree (degree-assortative model)
enum class PerturbModel { ER, CL };

const char* perturb_model_name(PerturbModel m) noexcept;
std::optional<PerturbModel> perturb_model_from_name(std::string_view name) noexcept;

/// One realization policy of the edge-perturbation process.
/// eps_add / eps_del scale the number of candidate pairs drawn:
/// K = round(eps * |E|) addition / deletion candidates per realization.
struct PerturbConfig {
    double eps_add = 0.0;
    double eps_del = 0.0;
    PerturbModel model = PerturbModel::ER;
    bool weight_aware = false;  ///< delta_w: increment/decrement by sigma_w instead of add/remove
    std::uint64_t seed = 0;
};

/// Edit trace of one realization (delta_w=1 populates the increment lists).
struct PerturbationRealization {
    std::vector<Edge> added;
    std::vector<std::pair<VertexId, VertexId>> deleted;
    std::vector<std::pair<VertexId, VertexId>> incremented;
    std::vector<std::pair<VertexId, VertexId>> decremented;
};

/// Draws vertex pairs from the model distribution; u == v pairs are
/// discarded and both endpoints redrawn. Build once per source graph and
/// share read-only across realizations.
class EndpointSampler {
public:
    EndpointSampler(const Graph& g, PerturbModel model);

    std::pair<VertexId, VertexId> sample_pair(Rng& rng) const;

    /// Exact single-endpoint selection probability (for tests).
    double endpoint_probability(VertexId v) const noexcept;

private:
    std::size_t n_;
    PerturbModel model_;
    std::optional<DiscreteSampler> weighted_;
};

std::pair<VertexId, VertexId> sample_endpoint_pair(const Graph& g, PerturbModel model, Rng& rng);

/// Weight for a newly created edge {u,v}: drawn uniformly from the weights of
/// the ORIGINAL graph's edges incident to u or v (each such edge counted
/// once); falls back to the global mean edge weight when both endpoints are
/// isolated in the original graph. Throws std::invalid_argument if the
/// original graph has no edges.
double sample_new_edge_weight(const Graph& original, VertexId u, VertexId v, Rng& rng);

/// Shared per-source-graph state: endpoint distribution, population standard
/// deviation of the original edge weights (the delta_w step), and the mean
/// weight fallback.
class PerturbContext {
public:
    PerturbContext(const Graph& g, PerturbModel model);

    const Graph& original() const noexcept { return *g_; }
    const EndpointSampler& sampler() const noexcept { return sampler_; }
    double sigma_w() const noexcept { return sigma_w_; }
    double mean_w() const noexcept { return mean_w_; }

private:
    const Graph* g_;
    EndpointSampler sampler_;
    double sigma_w_;
    double mean_w_;
};

/// One perturbed copy G~ of the source graph. Deterministic in
/// (g, cfg, realization): the candidate streams are seeded from
/// mix64-derived sub-seeds of (cfg.seed, realization). Deletion candidates
/// are drawn and applied first, then addition candidates. The vertex set is
/// preserved (vertices may become isolated, never removed) and the result is
/// always a simple graph.
Graph perturb(const Graph& g, const PerturbConfig& cfg, std::uint64_t realization,
              PerturbationRealization* trace = nullptr);

/// As above but reusing shared state across realizations; ctx.original()
/// must be the same graph the config applies to.
Graph perturb(const PerturbContext& ctx, const PerturbConfig& cfg, std::uint64_t realization,
              PerturbationRealization* trace = nullptr);

}  // namespace pcnet
