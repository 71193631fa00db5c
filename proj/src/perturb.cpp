#include "pcnet/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace pcnet {

const char* perturb_model_name(PerturbModel m) noexcept {
    return m == PerturbModel::ER ? "er" : "cl";
}

std::optional<PerturbModel> perturb_model_from_name(std::string_view name) noexcept {
    if (name == "er" || name == "ER") return PerturbModel::ER;
    if (name == "cl" || name == "CL") return PerturbModel::CL;
    return std::nullopt;
}

DiscreteSampler::DiscreteSampler(const std::vector<double>& weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("empty distribution");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0) throw std::invalid_argument("negative weight in distribution");
        total += w;
    }
    if (!(total > 0)) throw std::invalid_argument("distribution has zero total weight");

    norm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) norm_[i] = weights[i] / total;

    // Vose's alias method; small/large worklists filled in index order so the
    // table (and therefore every sample stream) is deterministic.
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = norm_[i] * static_cast<double>(n);

    std::vector<std::size_t> small, large;
    for (std::size_t i = 0; i < n; ++i) (scaled[i] < 1.0 ? small : large).push_back(i);

    while (!small.empty() && !large.empty()) {
        const std::size_t s = small.back();
        small.pop_back();
        const std::size_t l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (std::size_t i : large) prob_[i] = 1.0;
    for (std::size_t i : small) prob_[i] = 1.0;  // numerical leftovers
}

EndpointSampler::EndpointSampler(const Graph& g, PerturbModel model)
    : n_(g.vertex_count()), model_(model) {
    if (n_ < 2) throw std::invalid_argument("endpoint sampling needs at least 2 vertices");
    if (model_ == PerturbModel::CL) {
        std::vector<double> wdeg(n_);
        double total = 0.0;
        for (VertexId u = 0; u < n_; ++u) {
            wdeg[u] = g.weighted_degree(u);
            total += wdeg[u];
        }
        if (!(total > 0))
            throw std::invalid_argument("CL model undefined: total weighted degree is zero");
        weighted_.emplace(wdeg);
    }
}

std::pair<VertexId, VertexId> EndpointSampler::sample_pair(Rng& rng) const {
    for (;;) {
        VertexId u, v;
        if (model_ == PerturbModel::ER) {
            u = static_cast<VertexId>(rng.below(n_));
            v = static_cast<VertexId>(rng.below(n_));
        } else {
            u = static_cast<VertexId>(weighted_->sample(rng));
            v = static_cast<VertexId>(weighted_->sample(rng));
        }
        // self-edges are disregarded: discard the pair, redraw both endpoints
        if (u != v) return {u, v};
    }
}

double EndpointSampler::endpoint_probability(VertexId v) const noexcept {
    if (model_ == PerturbModel::ER) return 1.0 / static_cast<double>(n_);
    return weighted_->probability(v);
}

std::pair<VertexId, VertexId> sample_endpoint_pair(const Graph& g, PerturbModel model, Rng& rng) {
    return EndpointSampler(g, model).sample_pair(rng);
}

double sample_new_edge_weight(const Graph& original, VertexId u, VertexId v, Rng& rng) {
    if (original.edge_count() == 0)
        throw std::invalid_argument("cannot sample edge weight: original graph has no edges");

    // weights of original edges incident to u or v, each edge once
    // ({u,v} itself would otherwise appear in both adjacency rows)
    std::vector<double> incident;
    incident.reserve(original.degree(u) + original.degree(v));
    for (double w : original.neighbor_weights(u)) incident.push_back(w);
    const auto vn = original.neighbors(v);
    const auto vw = original.neighbor_weights(v);
    for (std::size_t i = 0; i < vn.size(); ++i)
        if (vn[i] != u) incident.push_back(vw[i]);

    if (incident.empty()) {
        double total = 0.0;
        original.for_each_edge([&](VertexId, VertexId, double w) { total += w; });
        return total / static_cast<double>(original.edge_count());
    }
    return incident[rng.below(incident.size())];
}

PerturbContext::PerturbContext(const Graph& g, PerturbModel model)
    : g_(&g), sampler_(g, model) {
    double total = 0.0;
    g.for_each_edge([&](VertexId, VertexId, double w) { total += w; });
    const double m = static_cast<double>(g.edge_count());
    mean_w_ = m > 0 ? total / m : 0.0;
    double sq = 0.0;
    g.for_each_edge([&](VertexId, VertexId, double w) {
        const double d = w - mean_w_;
        sq += d * d;
    });
    sigma_w_ = m > 0 ? std::sqrt(sq / m) : 0.0;  // population form
}

namespace {

constexpr std::uint64_t pack_pair(VertexId u, VertexId v) noexcept {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

// candidate sub-stream tags
constexpr std::uint64_t kDeleteStream = 1;
constexpr std::uint64_t kAddStream = 2;
constexpr std::uint64_t kWeightStream = 3;

}  // namespace

Graph perturb(const PerturbContext& ctx, const PerturbConfig& cfg, std::uint64_t realization,
              PerturbationRealization* trace) {
    const Graph& g = ctx.original();
    const double m = static_cast<double>(g.edge_count());
    const auto k_del = static_cast<std::size_t>(std::llround(cfg.eps_del * m));
    const auto k_add = static_cast<std::size_t>(std::llround(cfg.eps_add * m));

    Rng del_rng(mix_seed(cfg.seed, realization, kDeleteStream));
    Rng add_rng(mix_seed(cfg.seed, realization, kAddStream));
    Rng weight_rng(mix_seed(cfg.seed, realization, kWeightStream));

    std::vector<std::pair<VertexId, VertexId>> del_candidates(k_del);
    for (auto& pair : del_candidates) pair = ctx.sampler().sample_pair(del_rng);
    std::vector<std::pair<VertexId, VertexId>> add_candidates(k_add);
    for (auto& pair : add_candidates) pair = ctx.sampler().sample_pair(add_rng);

    std::unordered_map<std::uint64_t, double> edges;
    edges.reserve(g.edge_count() * 2);
    g.for_each_edge([&](VertexId u, VertexId v, double w) { edges.emplace(pack_pair(u, v), w); });

    const double sigma = ctx.sigma_w();

    for (const auto& [u, v] : del_candidates) {
        const auto key = pack_pair(u, v);
        const auto it = edges.find(key);
        if (it == edges.end()) continue;  // absent: no-op
        if (!cfg.weight_aware) {
            edges.erase(it);
            if (trace) trace->deleted.emplace_back(u, v);
        } else {
            it->second -= sigma;
            if (trace) trace->decremented.emplace_back(u, v);
            if (it->second <= 0.0) {
                edges.erase(it);
                if (trace) trace->deleted.emplace_back(u, v);
            }
        }
    }

    for (const auto& [u, v] : add_candidates) {
        const auto key = pack_pair(u, v);
        const auto it = edges.find(key);
        if (it == edges.end()) {
            // In weight-oblivious mode a re-added original edge keeps its
            // original weight (XOR semantics: delete + add cancel out);
            // genuinely new edges sample from the incident weights.
            double w = cfg.weight_aware ? 0.0 : g.weight(u, v);
            if (w == 0.0) w = sample_new_edge_weight(g, u, v, weight_rng);
            edges.emplace(key, w);
            if (trace) trace->added.push_back({u, v, w});
        } else if (cfg.weight_aware) {
            it->second += sigma;
            if (trace) trace->incremented.emplace_back(u, v);
        }
        // weight-oblivious + already present: no-op
    }

    std::vector<Edge> out;
    out.reserve(edges.size());
    for (const auto& [key, w] : edges)
        out.push_back({static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffu), w});
    return Graph::from_edges(g.vertex_count(), std::move(out), Graph::Duplicates::error,
                             g.labels());
}

Graph perturb(const Graph& g, const PerturbConfig& cfg, std::uint64_t realization,
              PerturbationRealization* trace) {
    return perturb(PerturbContext(g, cfg.model), cfg, realization, trace);
}

}  // namespace pcnet
