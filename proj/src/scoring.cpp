#include "pcnet/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "pcnet/kernels.hpp"

namespace pcnet {

const char* scorer_name(Scorer s) noexcept {
    switch (s) {
        case Scorer::cu: return "cu";
        case Scorer::cw: return "cw";
        case Scorer::pr: return "pr";
    }
    return "?";
}

std::optional<Scorer> scorer_from_name(std::string_view name) noexcept {
    if (name == "cu") return Scorer::cu;
    if (name == "cw") return Scorer::cw;
    if (name == "pr") return Scorer::pr;
    return std::nullopt;
}

ScoreVector core_unweighted(const Graph& g) {
    // Batagelj-Zaversnik bin-sort peeling
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> deg(n);
    std::size_t max_deg = 0;
    for (VertexId u = 0; u < n; ++u) {
        deg[u] = g.degree(u);
        max_deg = std::max(max_deg, deg[u]);
    }

    std::vector<std::size_t> bin(max_deg + 2, 0);
    for (VertexId u = 0; u < n; ++u) ++bin[deg[u]];
    std::size_t start = 0;
    for (std::size_t d = 0; d <= max_deg; ++d) {
        const std::size_t count = bin[d];
        bin[d] = start;
        start += count;
    }

    std::vector<VertexId> order(n);
    std::vector<std::size_t> pos(n);
    for (VertexId u = 0; u < n; ++u) {
        pos[u] = bin[deg[u]];
        order[pos[u]] = u;
        ++bin[deg[u]];
    }
    for (std::size_t d = max_deg + 1; d >= 1; --d) bin[d] = bin[d - 1];
    bin[0] = 0;

    for (std::size_t i = 0; i < n; ++i) {
        const VertexId v = order[i];
        for (VertexId u : g.neighbors(v)) {
            if (deg[u] > deg[v]) {
                const std::size_t du = deg[u];
                const std::size_t pu = pos[u];
                const std::size_t pw = bin[du];
                const VertexId w = order[pw];
                if (u != w) {
                    pos[u] = pw;
                    pos[w] = pu;
                    order[pu] = w;
                    order[pw] = u;
                }
                ++bin[du];
                --deg[u];
            }
        }
    }

    ScoreVector out{Scorer::cu, std::vector<double>(n)};
    for (VertexId u = 0; u < n; ++u) out.values[u] = static_cast<double>(deg[u]);
    return out;
}

ScoreVector core_generalized(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<double> prop(n);
    for (VertexId u = 0; u < n; ++u) prop[u] = g.weighted_degree(u);

    struct Entry {
        double p;
        VertexId v;
        bool operator>(const Entry& other) const noexcept {
            return p != other.p ? p > other.p : v > other.v;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    for (VertexId u = 0; u < n; ++u) heap.push({prop[u], u});

    std::vector<bool> removed(n, false);
    std::vector<double> core(n, 0.0);
    double running_max = 0.0;

    while (!heap.empty()) {
        const auto [p, v] = heap.top();
        heap.pop();
        if (removed[v] || p != prop[v]) continue;  // stale entry
        running_max = std::max(running_max, p);
        core[v] = running_max;
        removed[v] = true;
        const auto nbrs = g.neighbors(v);
        const auto ws = g.neighbor_weights(v);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            const VertexId u = nbrs[i];
            if (!removed[u]) {
                prop[u] -= ws[i];
                heap.push({prop[u], u});
            }
        }
    }
    return {Scorer::cw, std::move(core)};
}

ScoreVector pagerank_weighted(const Graph& g, const PageRankOptions& opts) {
    const std::size_t n = g.vertex_count();
    if (n == 0) return {Scorer::pr, {}};
    if (!(opts.damping > 0.0 && opts.damping < 1.0))
        throw std::invalid_argument("pagerank damping must be in (0, 1)");

    const double d = opts.damping;
    std::vector<double> rank(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);

    std::vector<VertexId> isolated;
    for (VertexId u = 0; u < n; ++u)
        if (g.degree(u) == 0) isolated.push_back(u);

    double residual = 0.0;
    for (int it = 0; it < opts.max_iter; ++it) {
        // mass of degree-0 vertices is spread uniformly
        double dangling = 0.0;
        for (VertexId u : isolated) dangling += rank[u];

        for (VertexId u = 0; u < n; ++u) {
            const auto nbrs = g.neighbors(u);
            const auto ws = g.neighbor_weights(u);
            double acc = 0.0;
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                const VertexId v = nbrs[i];
                acc += rank[v] * ws[i] / g.weighted_degree(v);
            }
            next[u] = acc;
        }
        const double teleport = (1.0 - d) / static_cast<double>(n) +
                                d * dangling / static_cast<double>(n);
        kernels::scale_add_inplace(next, d, teleport);

        residual = kernels::l1_diff(next, rank);
        rank.swap(next);
        if (residual < opts.tol) {
            const double total = kernels::sum(rank);
            kernels::scale_inplace(rank, kPageRankScale / total);
            return {Scorer::pr, std::move(rank)};
        }
    }
    throw ConvergenceError("pagerank did not converge within " + std::to_string(opts.max_iter) +
                               " iterations (L1 residual " + std::to_string(residual) + ")",
                           residual);
}

ScoreVector score_with(const Graph& g, Scorer scorer, const PageRankOptions& pr_opts) {
    switch (scorer) {
        case Scorer::cu: return core_unweighted(g);
        case Scorer::cw: return core_generalized(g);
        case Scorer::pr: return pagerank_weighted(g, pr_opts);
    }
    throw std::invalid_argument("unknown scorer");
}

}  // namespace pcnet
