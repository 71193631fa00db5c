#include "pcnet/graph_stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#include "pcnet/kernels.hpp"
#include "pcnet/parallel.hpp"

namespace pcnet {

namespace {

// y = (A + I) x on the unweighted 0/1 adjacency. The +I shift makes the
// dominant eigenvalue strictly separated even for bipartite graphs (stars,
// trees), where plain power iteration oscillates and its Rayleigh quotient
// stalls below lambda1.
void shifted_adjacency_matvec(const Graph& g, const std::vector<double>& x,
                              std::vector<double>& y) {
    const std::size_t n = g.vertex_count();
    for (VertexId u = 0; u < n; ++u) {
        double acc = x[u];
        for (VertexId v : g.neighbors(u)) acc += x[v];
        y[u] = acc;
    }
}

/// BFS eccentricity of src; dist is scratch of size n. Returns (ecc, farthest).
std::pair<std::size_t, VertexId> bfs_eccentricity(const Graph& g, VertexId src,
                                                  std::vector<std::uint32_t>& dist,
                                                  std::vector<VertexId>& queue) {
    std::fill(dist.begin(), dist.end(), UINT32_MAX);
    queue.clear();
    queue.push_back(src);
    dist[src] = 0;
    std::size_t head = 0;
    VertexId far = src;
    while (head < queue.size()) {
        const VertexId u = queue[head++];
        for (VertexId v : g.neighbors(u)) {
            if (dist[v] == UINT32_MAX) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
        far = u;
    }
    return {dist[far], far};
}

}  // namespace

double adjacency_lambda1(const Graph& g, const PowerIterOptions& opts) {
    const std::size_t n = g.vertex_count();
    if (n == 0 || g.edge_count() == 0) return 0.0;

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n, 0.0);

    double lambda = 0.0;
    double residual = 0.0;
    for (int it = 0; it < opts.max_iter; ++it) {
        shifted_adjacency_matvec(g, x, y);
        // x is unit, so x.(A x) = x.y - 1
        const double next = kernels::dot(x, y) - 1.0;
        residual = std::abs(next - lambda);
        lambda = next;
        const double norm = std::sqrt(kernels::dot(y, y));
        kernels::scale_inplace(y, 1.0 / norm);
        x.swap(y);
        if (it > 0 && residual <= opts.tol) return lambda;
    }
    throw ConvergenceError("adjacency lambda1 power iteration did not converge (residual " +
                               std::to_string(residual) + ")",
                           residual);
}

std::size_t exact_diameter(const Graph& g, int jobs) {
    const std::size_t n = g.vertex_count();
    if (n <= 1) return 0;

    const int workers = std::max(1, jobs);
    std::vector<std::size_t> worker_max(static_cast<std::size_t>(workers), 0);
    const std::size_t chunk = (n + workers - 1) / static_cast<std::size_t>(workers);

    parallel_for(static_cast<std::size_t>(workers), workers, [&](std::size_t w) {
        std::vector<std::uint32_t> dist(n);
        std::vector<VertexId> queue;
        queue.reserve(n);
        std::size_t local = 0;
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        for (std::size_t s = begin; s < end; ++s) {
            const auto [ecc, far] = bfs_eccentricity(g, static_cast<VertexId>(s), dist, queue);
            if (queue.size() != n)
                throw std::invalid_argument("exact_diameter requires a connected graph");
            local = std::max(local, static_cast<std::size_t>(ecc));
            (void)far;
        }
        worker_max[w] = local;
    });
    return *std::max_element(worker_max.begin(), worker_max.end());
}

std::size_t double_sweep_lower_bound(const Graph& g, int sweeps) {
    const std::size_t n = g.vertex_count();
    if (n <= 1) return 0;

    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue;
    queue.reserve(n);

    // start from a max-degree vertex / reach the periphery fast
    VertexId src = 0;
    for (VertexId u = 1; u < n; ++u)
        if (g.degree(u) > g.degree(src)) src = u;

    std::size_t best = 0;
    for (int s = 0; s < sweeps; ++s) {
        const auto [ecc, far] = bfs_eccentricity(g, src, dist, queue);
        if (queue.size() != n)
            throw std::invalid_argument("double_sweep_lower_bound requires a connected graph");
        if (ecc <= best && s > 0) break;
        best = std::max(best, ecc);
        src = far;
    }
    return best;
}

GraphStats graph_stats(const Graph& g, const DiameterPolicy& policy,
                       const PowerIterOptions& power, int jobs) {
    GraphStats stats;
    stats.n = g.vertex_count();
    stats.m = g.edge_count();

    std::size_t components = 0;
    component_ids(g, components);
    const Graph* target = &g;
    Graph lcc;
    if (components > 1) {
        lcc = largest_component(g);
        target = &lcc;
        stats.on_largest_component = true;
    }

    stats.lambda1 = adjacency_lambda1(*target, power);
    stats.tau = stats.lambda1 > 0 ? 1.0 / stats.lambda1 : 0.0;

    if (target->vertex_count() <= policy.exact_cutoff) {
        stats.diameter = exact_diameter(*target, jobs);
        stats.diameter_exact = true;
    } else {
        stats.diameter = double_sweep_lower_bound(*target);
        stats.diameter_exact = false;
    }
    return stats;
}

}  // namespace pcnet
