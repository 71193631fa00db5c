#pragma once

#include <cstdint>
#include <vector>

#include "pcnet/perturb.hpp"
#include "pcnet/scoring.hpp"

namespace pcnet {

/// Ensemble configuration: score M perturbed copies of the graph and average.
/// cfg.perturb.seed doubles as the master seed; realization m draws its
/// streams from mix64(seed, m), m = 1..M, so the M tasks are independent and
/// the result does not depend on the degree of parallelism.
struct PcConfig {
    int M = 1;
    PerturbConfig perturb;
    Scorer scorer = Scorer::cu;
    PageRankOptions pagerank;
};

/// Fixed-order arithmetic mean of per-realization score rows (row m = scores
/// on the m-th perturbed graph). Sequential summation in row order; bitwise
/// reproducible for a given kernel lane.
std::vector<double> combine_scores(const std::vector<std::vector<double>>& rows);

/// Averaged ensemble scores (the perturb -> mine -> combine pipeline).
/// Propagates scorer convergence errors tagged with the realization index.
ScoreVector pc_scores(const Graph& g, const PcConfig& cfg, int jobs = 1);

/// As pc_scores, but also returns the M per-realization score vectors
/// (used by the bias/variance experiment to evaluate both combination
/// readings).
struct PcDetail {
    ScoreVector mean;
    std::vector<std::vector<double>> realization_scores;
};
PcDetail pc_scores_detailed(const Graph& g, const PcConfig& cfg, int jobs = 1);

enum class TriggerKind { main_core_after_ceiling, top_k, top_fraction };
enum class ScoreRounding { ceil, half_up };

/// How to derive a trigger (seed) vertex set from scores.
///   main_core_after_ceiling: round scores up, keep the vertices at the
///     maximum rounded score (the main core for integer core scores).
///   top_k / top_fraction: highest-scoring vertices, ties at the cutoff
///     broken by ascending vertex id.
struct TriggerPolicy {
    TriggerKind kind = TriggerKind::main_core_after_ceiling;
    std::size_t k = 1;
    double fraction = 1.0;
    ScoreRounding rounding = ScoreRounding::ceil;  // sensitivity switch
};

std::vector<VertexId> extract_trigger_set(const ScoreVector& scores, const TriggerPolicy& policy);

}  // namespace pcnet
