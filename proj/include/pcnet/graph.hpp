#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pcnet/errors.hpp"

namespace pcnet {

using VertexId = std::uint32_t;

struct Edge {
    VertexId u;
    VertexId v;
    double w;
};

/// Simple undirected weighted graph over vertices 0..n-1, stored as CSR with
/// sorted neighbor rows. One record per unordered pair, all weights positive,
/// no self-loops. Immutable after construction; safe to share read-only
/// across threads. Optional per-vertex labels carry original dataset ids or
/// term strings.
class Graph {
public:
    enum class Duplicates { error, merge_sum };

    Graph() = default;

    /// Build from an edge list. Pairs are canonicalized to u < v; duplicate
    /// pairs are merged (weights summed) or rejected per `dup`. Throws
    /// std::invalid_argument on self-loops, out-of-range ids, or
    /// non-positive weights.
    static Graph from_edges(std::size_t n, std::vector<Edge> edges,
                            Duplicates dup = Duplicates::error,
                            std::vector<std::string> labels = {});

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return adj_.size() / 2; }

    std::span<const VertexId> neighbors(VertexId u) const noexcept {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }
    std::span<const double> neighbor_weights(VertexId u) const noexcept {
        return {w_.data() + offsets_[u], w_.data() + offsets_[u + 1]};
    }
    std::size_t degree(VertexId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
    double weighted_degree(VertexId u) const noexcept { return wdeg_[u]; }

    bool has_edge(VertexId u, VertexId v) const noexcept;
    /// Weight of {u,v}, or 0 when the edge is absent.
    double weight(VertexId u, VertexId v) const noexcept;

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(VertexId u) const { return labels_[u]; }

    /// Unique edges in canonical order (u < v, sorted lexicographically).
    std::vector<Edge> edge_list() const;

    template <class Fn>
    void for_each_edge(Fn&& fn) const {
        for (VertexId u = 0; u < n_; ++u) {
            const auto nbrs = neighbors(u);
            const auto ws = neighbor_weights(u);
            for (std::size_t i = 0; i < nbrs.size(); ++i)
                if (u < nbrs[i]) fn(u, nbrs[i], ws[i]);
        }
    }

    bool operator==(const Graph&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> offsets_;  // n+1
    std::vector<VertexId> adj_;         // 2m, sorted within each row
    std::vector<double> w_;             // parallel to adj_
    std::vector<double> wdeg_;          // cached weighted degrees
    std::vector<std::string> labels_;   // empty or size n
};

struct LoadOptions {
    bool symmetrize = true;  ///< merge duplicate pair records (sum weights); false = reject them
    bool drop_self_loops = true;
    bool keep_largest_component = false;
};

/// Parse a whitespace-separated edge list ("u v" or "u v w" per line, '#'
/// comments). Vertex tokens may be arbitrary strings; they are remapped to
/// 0..n-1 in order of first appearance and retained as labels. Files written
/// by save_edge_list() carry a header that preserves vertex count (isolated
/// vertices included) and labels exactly.
/// Throws ParseError with a line number on malformed lines or w <= 0.
Graph load_edge_list(std::istream& in, const LoadOptions& opts = {});
Graph load_edge_list_file(const std::string& path, const LoadOptions& opts = {});

/// Canonical serialization; load_edge_list(save_edge_list(g)) == g.
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

/// Component id per vertex (BFS order); component_count receives the total.
std::vector<std::uint32_t> component_ids(const Graph& g, std::size_t& component_count);

/// Induced subgraph on the largest connected component (ties broken toward
/// the component containing the smallest vertex id). Vertices are relabeled
/// to 0..n'-1 preserving relative order; labels carried over.
Graph largest_component(const Graph& g);

/// Replace every weight with max(deg(u), deg(v)), deg taken unweighted in g.
/// Topology unchanged; idempotent on topology and deterministic.
Graph assign_default_weights(const Graph& g);

}  // namespace pcnet
