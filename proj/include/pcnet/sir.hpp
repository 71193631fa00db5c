#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pcnet/graph.hpp"
#include "pcnet/rng.hpp"

namespace pcnet {

/// Discrete-time SIR parameters. Transmission uses topology only (weights
/// are ignored); beta is typically set near the epidemic threshold
/// tau = 1/lambda1 of the network.
struct SirConfig {
    double beta = 0.1;   ///< per infected-susceptible contact per step
    double gamma = 0.8;  ///< per infected node per step
    int runs = 100;      ///< Ne, epidemics per trigger vertex
    int max_steps = 10000;
    std::uint64_t seed = 0;
    bool record_compartments = false;  ///< keep per-step S/I/R tallies
};

struct SirOutcome {
    std::vector<std::int64_t> per_step_new_infections;
    std::int64_t total_infected = 0;  ///< cumulative ever-infected, seeds included
    int steps_elapsed = 0;
    bool truncated = false;  ///< max_steps hit before the stop rule
    // filled only when record_compartments is set
    std::vector<std::int64_t> susceptible;
    std::vector<std::int64_t> infected;
    std::vector<std::int64_t> recovered;
};

/// Synchronous SIR from the given seed set. Per step: every infectious node
/// attempts each susceptible neighbor independently with probability beta;
/// recovery (probability gamma) is evaluated after the attempts, so a node
/// infects for at least one step; newly infected nodes become infectious the
/// next step. Stops when no new node has been infected for two consecutive
/// steps, or flags truncation at max_steps.
SirOutcome simulate(const Graph& g, std::span<const VertexId> seeds, const SirConfig& cfg,
                    Rng& rng);

/// Mean outbreak size over cfg.runs epidemics seeded at {v}; run r uses the
/// stream mix64(cfg.seed, v, r).
double node_influence(const Graph& g, VertexId v, const SirConfig& cfg);

/// Severity profile of a trigger set: per-step new-infection counts averaged
/// over the Ne runs of each trigger vertex, then over the set.
struct SeverityProfile {
    std::vector<double> mean_new_infections;  ///< index t = step t+1
    double mean_total = 0.0;

    /// Mean new infections at 1-based step s (0 beyond the horizon).
    double at_step(std::size_t s) const noexcept {
        return s >= 1 && s <= mean_new_infections.size() ? mean_new_infections[s - 1] : 0.0;
    }
};

SeverityProfile trigger_set_severity(const Graph& g, std::span<const VertexId> trigger_set,
                                     const SirConfig& cfg, int jobs = 1);

}  // namespace pcnet
