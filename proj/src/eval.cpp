#include "pcnet/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "pcnet/kernels.hpp"
#include "pcnet/parallel.hpp"

namespace pcnet {

Ranking rank_from_scores(const ScoreVector& scores) {
    for (double v : scores.values)
        if (std::isnan(v)) throw std::invalid_argument("rank_from_scores: NaN score");

    Ranking r;
    r.source = scores.scorer;
    r.order.resize(scores.values.size());
    std::iota(r.order.begin(), r.order.end(), VertexId{0});
    std::stable_sort(r.order.begin(), r.order.end(), [&](VertexId a, VertexId b) {
        return scores.values[a] > scores.values[b];
    });
    return r;
}

double ndcg(const Ranking& r, const RelevanceVector& rel) {
    const std::size_t n = rel.size();
    if (r.order.size() != n) throw std::invalid_argument("ndcg: length mismatch");
    if (std::all_of(rel.begin(), rel.end(), [](int x) { return x == 0; }))
        throw std::invalid_argument("ndcg: all-zero relevance is undefined");

    auto gain = [](int level) { return std::exp2(static_cast<double>(level)) - 1.0; };

    double dcg = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        dcg += gain(rel[r.order[i]]) / std::log2(static_cast<double>(i) + 2.0);

    RelevanceVector ideal = rel;
    std::sort(ideal.begin(), ideal.end(), std::greater<int>());
    double idcg = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        idcg += gain(ideal[i]) / std::log2(static_cast<double>(i) + 2.0);

    return dcg / idcg;
}

RelevanceVector quantize_relevance(const std::vector<double>& influences, int levels) {
    if (influences.empty()) throw std::invalid_argument("quantize_relevance: empty input");
    double max_inf = 0.0;
    for (double x : influences) {
        if (x < 0) throw std::invalid_argument("quantize_relevance: negative influence");
        max_inf = std::max(max_inf, x);
    }
    if (!(max_inf > 0)) throw std::invalid_argument("quantize_relevance: max influence is zero");

    RelevanceVector rel(influences.size());
    for (std::size_t i = 0; i < influences.size(); ++i)
        rel[i] = static_cast<int>(
            std::floor(static_cast<double>(levels) * influences[i] / max_inf + 0.5));
    return rel;
}

BiasVariance bias_variance(const FitSample& sample) {
    if (sample.empty()) throw std::invalid_argument("bias_variance: empty sample");
    const double n = static_cast<double>(sample.size());
    const double mean = kernels::sum(sample) / n;
    return {1.0 - mean, kernels::sum_sq_diff(sample, mean) / n};
}

DecompositionCheck error_decomposition_check(const FitSample& sample) {
    const auto [bias, variance] = bias_variance(sample);
    const double rhs = kernels::sum_sq_diff(sample, 1.0) / static_cast<double>(sample.size());
    return {bias * bias + variance, rhs};
}

JensenGap jensen_gap_check(const FitSample& sample) {
    const auto [bias, variance] = bias_variance(sample);
    JensenGap out;
    out.lhs = kernels::sum_sq_diff(sample, 1.0) / static_cast<double>(sample.size());
    out.rhs = bias * bias;
    out.gap = variance;  // lhs - rhs algebraically; variance form keeps it >= 0
    return out;
}

double top_p_overlap(const Ranking& candidate, const Ranking& truth, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("top_p_overlap: p must be in (0, 1]");
    if (candidate.order.size() != truth.order.size())
        throw std::invalid_argument("top_p_overlap: length mismatch");
    const auto k = static_cast<std::size_t>(
        std::llround(p * static_cast<double>(candidate.order.size())));
    if (k == 0) throw std::invalid_argument("top_p_overlap: k rounds to zero");

    std::unordered_set<VertexId> top_truth(truth.order.begin(),
                                           truth.order.begin() + static_cast<std::ptrdiff_t>(k));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < k; ++i) hits += top_truth.count(candidate.order[i]);
    return static_cast<double>(hits) / static_cast<double>(k);
}

MacroPrf1 keyword_prf1(const std::vector<std::vector<std::string>>& extracted,
                       const std::vector<std::vector<std::string>>& gold) {
    if (extracted.size() != gold.size())
        throw std::invalid_argument("keyword_prf1: document count mismatch");

    MacroPrf1 out;
    double sum_p = 0.0, sum_r = 0.0, sum_f = 0.0;
    for (std::size_t d = 0; d < extracted.size(); ++d) {
        if (gold[d].empty()) {
            ++out.skipped;
            continue;
        }
        const std::unordered_set<std::string> gold_set(gold[d].begin(), gold[d].end());
        const std::unordered_set<std::string> ext_set(extracted[d].begin(), extracted[d].end());
        std::size_t inter = 0;
        for (const auto& term : ext_set) inter += gold_set.count(term);

        const double p = ext_set.empty() ? 0.0
                                         : static_cast<double>(inter) /
                                               static_cast<double>(ext_set.size());
        const double r = static_cast<double>(inter) / static_cast<double>(gold_set.size());
        const double f = (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
        sum_p += p;
        sum_r += r;
        sum_f += f;
        ++out.documents;
    }
    if (out.documents > 0) {
        const double n = static_cast<double>(out.documents);
        out.precision = 100.0 * sum_p / n;
        out.recall = 100.0 * sum_r / n;
        out.f1 = 100.0 * sum_f / n;
    }
    return out;
}

BiasVarianceReport bias_variance_experiment(const Graph& g, Scorer scorer, const PcConfig& pc_cfg,
                                            int sample_size, const SirConfig& sir_cfg,
                                            const PerturbConfig& observation, int levels,
                                            int jobs) {
    if (sample_size < 1) throw std::invalid_argument("sample_size must be >= 1");
    const std::size_t n = g.vertex_count();

    // truth: SIR influence of every vertex on the original graph
    std::vector<double> influence(n, 0.0);
    parallel_for(n, jobs, [&](std::size_t v) {
        influence[v] = node_influence(g, static_cast<VertexId>(v), sir_cfg);
    });
    const RelevanceVector rel = quantize_relevance(influence, levels);

    BiasVarianceReport report;
    report.met_original.resize(static_cast<std::size_t>(sample_size));
    report.met_pc.resize(static_cast<std::size_t>(sample_size));
    report.met_pc_realization_mean.resize(static_cast<std::size_t>(sample_size));

    parallel_for(static_cast<std::size_t>(sample_size), jobs, [&](std::size_t s) {
        const Graph observed = perturb(g, observation, s + 1);

        const ScoreVector base = score_with(observed, scorer, pc_cfg.pagerank);
        report.met_original[s] = ndcg(rank_from_scores(base), rel);

        PcConfig cfg = pc_cfg;
        cfg.scorer = scorer;
        cfg.perturb.seed = mix_seed(pc_cfg.perturb.seed, s + 1);  // nested ensemble stream
        const PcDetail detail = pc_scores_detailed(observed, cfg, 1);
        report.met_pc[s] = ndcg(rank_from_scores(detail.mean), rel);

        double acc = 0.0;
        for (const auto& row : detail.realization_scores)
            acc += ndcg(rank_from_scores({cfg.scorer, row}), rel);
        report.met_pc_realization_mean[s] =
            acc / static_cast<double>(detail.realization_scores.size());
    });

    report.original = bias_variance(report.met_original);
    report.pc = bias_variance(report.met_pc);
    return report;
}

}  // namespace pcnet
