#include "pcnet/pcnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pcnet/kernels.hpp"
#include "pcnet/parallel.hpp"

namespace pcnet {

std::vector<double> combine_scores(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("combine_scores: no realizations");
    std::vector<double> acc = rows.front();
    for (std::size_t m = 1; m < rows.size(); ++m) {
        if (rows[m].size() != acc.size())
            throw std::invalid_argument("combine_scores: ragged rows");
        kernels::add_inplace(acc, rows[m]);
    }
    kernels::scale_inplace(acc, 1.0 / static_cast<double>(rows.size()));
    return acc;
}

PcDetail pc_scores_detailed(const Graph& g, const PcConfig& cfg, int jobs) {
    if (cfg.M < 1) throw std::invalid_argument("ensemble size M must be >= 1");

    const PerturbContext ctx(g, cfg.perturb.model);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(cfg.M));

    parallel_for(rows.size(), jobs, [&](std::size_t i) {
        const std::uint64_t m = i + 1;  // realizations are numbered 1..M
        try {
            const Graph perturbed = perturb(ctx, cfg.perturb, m);
            rows[i] = score_with(perturbed, cfg.scorer, cfg.pagerank).values;
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("realization " + std::to_string(m) + ": " + e.what(),
                                   e.residual());
        }
    });

    PcDetail detail;
    detail.mean = {cfg.scorer, combine_scores(rows)};
    detail.realization_scores = std::move(rows);
    return detail;
}

ScoreVector pc_scores(const Graph& g, const PcConfig& cfg, int jobs) {
    return pc_scores_detailed(g, cfg, jobs).mean;
}

namespace {

double round_score(double value, ScoreRounding mode) {
    return mode == ScoreRounding::ceil ? std::ceil(value) : std::floor(value + 0.5);
}

std::vector<VertexId> top_by_score(const std::vector<double>& values, std::size_t k) {
    std::vector<VertexId> order(values.size());
    std::iota(order.begin(), order.end(), VertexId{0});
    // descending score, ties toward the lower vertex id
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId a, VertexId b) { return values[a] > values[b]; });
    order.resize(std::min(k, order.size()));
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace

std::vector<VertexId> extract_trigger_set(const ScoreVector& scores, const TriggerPolicy& policy) {
    const auto& values = scores.values;
    const std::size_t n = values.size();
    if (n == 0) throw std::invalid_argument("extract_trigger_set: empty graph");

    switch (policy.kind) {
        case TriggerKind::main_core_after_ceiling: {
            double best = -std::numeric_limits<double>::infinity();
            for (double v : values) best = std::max(best, round_score(v, policy.rounding));
            std::vector<VertexId> set;
            for (VertexId u = 0; u < n; ++u)
                if (round_score(values[u], policy.rounding) == best) set.push_back(u);
            return set;
        }
        case TriggerKind::top_k: {
            if (policy.k < 1) throw std::invalid_argument("top_k: k must be >= 1");
            return top_by_score(values, policy.k);
        }
        case TriggerKind::top_fraction: {
            if (!(policy.fraction > 0.0 && policy.fraction <= 1.0))
                throw std::invalid_argument("top_fraction: fraction must be in (0, 1]");
            const auto k = static_cast<std::size_t>(
                std::ceil(policy.fraction * static_cast<double>(n)));
            return top_by_score(values, std::max<std::size_t>(k, 1));
        }
    }
    throw std::invalid_argument("unknown trigger policy");
}

}  // namespace pcnet
