#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pcnet/graph.hpp"

namespace pcnet {

enum class Scorer { cu, cw, pr };

const char* scorer_name(Scorer s) noexcept;
std::optional<Scorer> scorer_from_name(std::string_view name) noexcept;

/// Per-vertex scores from one scorer on one graph; the unit the ensemble
/// combiner averages. cu values are integral, cw/pr real.
struct ScoreVector {
    Scorer scorer = Scorer::cu;
    std::vector<double> values;
};

/// Core numbers of the unweighted k-core decomposition: values[i] is the
/// largest k such that vertex i belongs to a k-core. Bucketed min-degree
/// peeling, O(|E|). Isolated vertices get 0.
ScoreVector core_unweighted(const Graph& g);

/// Generalized core numbers under the weighted-degree vertex property
/// (sum of incident edge weights): repeatedly remove the vertex with minimum
/// current property; its core value is the property at removal capped below
/// by the running maximum. Lazy-deletion min-heap, O(|E| log |V|). Ties on
/// the minimum property are broken toward the lowest vertex id.
ScoreVector core_generalized(const Graph& g);

/// PageRank scale: scores are normalized to sum to this value.
inline constexpr double kPageRankScale = 100.0;

struct PageRankOptions {
    double damping = 0.85;
    double tol = 1e-10;  ///< L1 change between iterations
    int max_iter = 200;
};

/// Weighted PageRank by power iteration: a step moves from u to neighbor v
/// with probability weight(u,v) / weighted_degree(u); isolated vertices
/// teleport uniformly. Scores are scaled to sum to kPageRankScale.
/// Throws ConvergenceError carrying the residual if max_iter is exhausted.
ScoreVector pagerank_weighted(const Graph& g, const PageRankOptions& opts = {});

ScoreVector score_with(const Graph& g, Scorer scorer, const PageRankOptions& pr_opts = {});

}  // namespace pcnet
