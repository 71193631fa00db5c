#include "pcnet/sir.hpp"

#include <algorithm>
#include <stdexcept>

#include "pcnet/parallel.hpp"

namespace pcnet {

namespace {
enum State : std::uint8_t { kSusceptible = 0, kInfected = 1, kRecovered = 2 };
}

SirOutcome simulate(const Graph& g, std::span<const VertexId> seeds, const SirConfig& cfg,
                    Rng& rng) {
    const std::size_t n = g.vertex_count();
    if (seeds.empty()) throw std::invalid_argument("simulate: seed set is empty");

    std::vector<std::uint8_t> state(n, kSusceptible);
    std::vector<VertexId> infectious;
    infectious.reserve(seeds.size());
    for (VertexId s : seeds) {
        if (s >= n) throw std::invalid_argument("simulate: seed vertex out of range");
        if (state[s] == kSusceptible) {
            state[s] = kInfected;
            infectious.push_back(s);
        }
    }

    SirOutcome out;
    out.total_infected = static_cast<std::int64_t>(infectious.size());
    std::int64_t susceptible_count = static_cast<std::int64_t>(n) - out.total_infected;
    std::int64_t infected_count = out.total_infected;
    std::int64_t recovered_count = 0;

    std::vector<VertexId> newly;
    std::vector<VertexId> next_infectious;
    int consecutive_quiet = 0;

    while (consecutive_quiet < 2) {
        if (out.steps_elapsed >= cfg.max_steps) {
            out.truncated = true;
            break;
        }
        ++out.steps_elapsed;

        newly.clear();
        for (VertexId u : infectious) {
            for (VertexId v : g.neighbors(u)) {
                if (state[v] == kSusceptible && rng.bernoulli(cfg.beta)) {
                    state[v] = kInfected;
                    newly.push_back(v);
                }
            }
        }

        // recovery draws only for nodes that were infectious this step
        next_infectious.clear();
        for (VertexId u : infectious) {
            if (rng.bernoulli(cfg.gamma)) {
                state[u] = kRecovered;
                ++recovered_count;
                --infected_count;
            } else {
                next_infectious.push_back(u);
            }
        }
        next_infectious.insert(next_infectious.end(), newly.begin(), newly.end());
        infectious.swap(next_infectious);

        const auto fresh = static_cast<std::int64_t>(newly.size());
        out.per_step_new_infections.push_back(fresh);
        out.total_infected += fresh;
        susceptible_count -= fresh;
        infected_count += fresh;
        consecutive_quiet = fresh == 0 ? consecutive_quiet + 1 : 0;

        if (cfg.record_compartments) {
            out.susceptible.push_back(susceptible_count);
            out.infected.push_back(infected_count);
            out.recovered.push_back(recovered_count);
        }
    }
    return out;
}

double node_influence(const Graph& g, VertexId v, const SirConfig& cfg) {
    if (v >= g.vertex_count()) throw std::invalid_argument("node_influence: vertex out of range");
    const VertexId seeds[1] = {v};
    double total = 0.0;
    for (int r = 0; r < cfg.runs; ++r) {
        Rng rng(mix_seed(cfg.seed, v, static_cast<std::uint64_t>(r)));
        total += static_cast<double>(simulate(g, seeds, cfg, rng).total_infected);
    }
    return total / static_cast<double>(cfg.runs);
}

SeverityProfile trigger_set_severity(const Graph& g, std::span<const VertexId> trigger_set,
                                     const SirConfig& cfg, int jobs) {
    if (trigger_set.empty())
        throw std::invalid_argument("trigger_set_severity: empty trigger set");

    struct VertexProfile {
        std::vector<double> steps;
        double total = 0.0;
    };
    std::vector<VertexProfile> profiles(trigger_set.size());

    parallel_for(trigger_set.size(), jobs, [&](std::size_t i) {
        const VertexId v = trigger_set[i];
        const VertexId seeds[1] = {v};
        VertexProfile prof;
        for (int r = 0; r < cfg.runs; ++r) {
            Rng rng(mix_seed(cfg.seed, v, static_cast<std::uint64_t>(r)));
            const SirOutcome run = simulate(g, seeds, cfg, rng);
            if (run.per_step_new_infections.size() > prof.steps.size())
                prof.steps.resize(run.per_step_new_infections.size(), 0.0);
            for (std::size_t t = 0; t < run.per_step_new_infections.size(); ++t)
                prof.steps[t] += static_cast<double>(run.per_step_new_infections[t]);
            prof.total += static_cast<double>(run.total_infected);
        }
        const double inv_runs = 1.0 / static_cast<double>(cfg.runs);
        for (double& x : prof.steps) x *= inv_runs;
        prof.total *= inv_runs;
        profiles[i] = std::move(prof);
    });

    SeverityProfile result;
    for (const auto& prof : profiles) {
        if (prof.steps.size() > result.mean_new_infections.size())
            result.mean_new_infections.resize(prof.steps.size(), 0.0);
        for (std::size_t t = 0; t < prof.steps.size(); ++t)
            result.mean_new_infections[t] += prof.steps[t];
        result.mean_total += prof.total;
    }
    const double inv = 1.0 / static_cast<double>(trigger_set.size());
    for (double& x : result.mean_new_infections) x *= inv;
    result.mean_total *= inv;
    return result;
}

}  // namespace pcnet
