#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcnet/pcnet.hpp"
#include "pcnet/scoring.hpp"
#include "pcnet/sir.hpp"

namespace pcnet {

/// Vertex permutation, best first.
struct Ranking {
    std::vector<VertexId> order;
    Scorer source = Scorer::cu;
};

/// Non-negative integer relevance levels, one per vertex.
using RelevanceVector = std::vector<int>;

/// Goodness-of-fit observations in [0,1] (one metric value per observed
/// graph or per realization).
using FitSample = std::vector<double>;

/// Descending by score; ties broken by ascending vertex id. Rejects NaN.
Ranking rank_from_scores(const ScoreVector& scores);

/// NDCG over the full list: DCG = sum_i (2^rel_i - 1) / log2(i + 1) in
/// ranking order, divided by the ideal DCG (relevance-sorted order).
/// Throws std::invalid_argument when every relevance is zero.
double ndcg(const Ranking& r, const RelevanceVector& rel);

/// Map raw influence values to integer relevance levels 0..levels by
/// rel_i = round(levels * influence_i / max_influence).
RelevanceVector quantize_relevance(const std::vector<double>& influences, int levels = 10);

struct BiasVariance {
    double bias = 0.0;      ///< 1 - mean(sample)
    double variance = 0.0;  ///< population form (divisor N)
};
BiasVariance bias_variance(const FitSample& sample);

/// Both sides of the exact decomposition identity
/// bias^2 + variance = mean((MET - 1)^2); they agree to ~1e-12.
struct DecompositionCheck {
    double lhs = 0.0;  ///< bias^2 + variance
    double rhs = 0.0;  ///< mean((MET - 1)^2)
};
DecompositionCheck error_decomposition_check(const FitSample& sample);

/// lhs = mean((MET-1)^2), rhs = (1 - mean(MET))^2, gap = lhs - rhs >= 0
/// with equality iff the sample is constant. The gap equals the population
/// variance and is computed in that form, which is non-negative by
/// construction.
struct JensenGap {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
};
JensenGap jensen_gap_check(const FitSample& sample);

/// |top-k(candidate) ∩ top-k(truth)| / k with k = round(p * n).
/// Throws std::invalid_argument when k rounds to zero.
double top_p_overlap(const Ranking& candidate, const Ranking& truth, double p);

struct MacroPrf1 {
    double precision = 0.0;  ///< x100
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t documents = 0;  ///< documents scored (empty-gold ones are skipped)
    std::size_t skipped = 0;
};

/// Macro-averaged precision/recall/F1 over documents, reported x100. A
/// document with an empty gold set is skipped (with a counted warning); an
/// empty extraction contributes (0,0,0).
MacroPrf1 keyword_prf1(const std::vector<std::vector<std::string>>& extracted,
                       const std::vector<std::vector<std::string>>& gold);

/// Bias/variance experiment: per-vertex SIR influence on g defines the truth
/// relevance; `sample_size` perturbed observations of g are drawn with
/// `observation` (observation s uses realization index s); on each
/// observation both the plain scorer ranking and the ensemble ranking are
/// evaluated by NDCG against the truth. met_pc holds the NDCG of the
/// averaged-score ranking; met_pc_realization_mean the mean of the
/// per-realization NDCGs (the two readings of the combined fit).
struct BiasVarianceReport {
    FitSample met_original;
    FitSample met_pc;
    FitSample met_pc_realization_mean;
    BiasVariance original;
    BiasVariance pc;
};

BiasVarianceReport bias_variance_experiment(const Graph& g, Scorer scorer, const PcConfig& pc_cfg,
                                            int sample_size, const SirConfig& sir_cfg,
                                            const PerturbConfig& observation, int levels = 10,
                                            int jobs = 1);

}  // namespace pcnet
