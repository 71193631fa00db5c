#pragma once

#include <cstddef>
#include <optional>

#include "pcnet/graph.hpp"

namespace pcnet {

struct DiameterPolicy {
    /// Exact all-pairs BFS up to this many vertices; above it, an iterated
    /// double-sweep lower bound is reported and flagged.
    std::size_t exact_cutoff = 20000;
};

struct PowerIterOptions {
    double tol = 1e-9;  ///< absolute tolerance on the Rayleigh quotient step
    int max_iter = 2000;
};

/// Summary row for a network (dataset-table layout). diameter/lambda1 refer
/// to the largest component when the graph is disconnected. Score maxima are
/// filled by the stats pipeline, not by graph_stats().
struct GraphStats {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t diameter = 0;
    bool diameter_exact = true;
    double lambda1 = 0.0;
    double tau = 0.0;  ///< 1 / lambda1
    bool on_largest_component = false;
    std::optional<double> cu_max;
    std::optional<double> cw_max;
    std::optional<double> pr_max;
};

/// Largest eigenvalue of the unweighted 0/1 adjacency matrix by power
/// iteration (all-ones start; valid because the Perron vector is
/// non-negative). Throws ConvergenceError with the residual if max_iter is
/// exhausted.
double adjacency_lambda1(const Graph& g, const PowerIterOptions& opts = {});

/// Exact diameter via all-pairs BFS, parallel over sources. Graph must be
/// connected.
std::size_t exact_diameter(const Graph& g, int jobs = 1);

/// Lower bound on the diameter by iterated double sweeps. Graph must be
/// connected.
std::size_t double_sweep_lower_bound(const Graph& g, int sweeps = 4);

GraphStats graph_stats(const Graph& g, const DiameterPolicy& policy = {},
                       const PowerIterOptions& power = {}, int jobs = 1);

}  // namespace pcnet
