// Command-line harness: dataset preparation, network statistics, ensemble
// scoring, SIR severity, and the three experiment drivers.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcnet/experiments.hpp"
#include "pcnet/graph_stats.hpp"
#include "pcnet/kernels.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pcnet;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

struct ScoreFlags {
    std::string scorer = "cu";
    int M = 16;
    double eps_add = 0.0;
    double eps_del = 0.1;
    std::string model = "er";
    int weight_aware = 0;
};

PcConfig make_pc_config(const ScoreFlags& flags, std::uint64_t seed) {
    const auto scorer = scorer_from_name(flags.scorer);
    if (!scorer) throw CLI::ValidationError("--scorer", "expected cu, cw, or pr");
    const auto model = perturb_model_from_name(flags.model);
    if (!model) throw CLI::ValidationError("--model", "expected er or cl");
    PcConfig cfg;
    cfg.M = flags.M;
    cfg.scorer = *scorer;
    cfg.perturb = {flags.eps_add, flags.eps_del, *model, flags.weight_aware != 0, seed};
    return cfg;
}

int run_prepare(const std::string& input, const std::string& output, bool lcc,
                bool default_weights) {
    LoadOptions opts;
    opts.keep_largest_component = lcc;
    Graph g = load_edge_list_file(input, opts);
    if (default_weights) g = assign_default_weights(g);
    save_edge_list_file(g, output);
    std::cout << "wrote " << output << ": n=" << g.vertex_count() << " m=" << g.edge_count()
              << "\n";
    return 0;
}

int run_stats(const std::string& input, std::size_t exact_cutoff, int jobs,
              const std::string& out_path) {
    const Graph g = load_edge_list_file(input);
    GraphStats stats = graph_stats(g, DiameterPolicy{exact_cutoff}, PowerIterOptions{}, jobs);
    const auto cu = core_unweighted(g).values;
    const auto cw = core_generalized(g).values;
    const auto pr = pagerank_weighted(g).values;
    stats.cu_max = *std::max_element(cu.begin(), cu.end());
    stats.cw_max = *std::max_element(cw.begin(), cw.end());
    stats.pr_max = *std::max_element(pr.begin(), pr.end());

    std::ostringstream row;
    row << "network,n,m,d,d_exact,cu_max,cw_max,pr_max,tau_x100\n"
        << fs::path(input).stem().string() << ',' << stats.n << ',' << stats.m << ','
        << stats.diameter << ',' << (stats.diameter_exact ? 1 : 0) << ',' << *stats.cu_max << ','
        << *stats.cw_max << ',' << fmt(*stats.pr_max) << ',' << fmt(100.0 * stats.tau) << "\n";
    if (out_path.empty()) {
        std::cout << row.str();
    } else {
        std::ofstream out(out_path);
        out << row.str();
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int run_pc_score(const std::string& input, const ScoreFlags& flags, std::uint64_t seed, int jobs,
                 const std::string& out_prefix) {
    const Graph g = load_edge_list_file(input);
    const PcConfig cfg = make_pc_config(flags, seed);
    const ScoreVector scores = pc_scores(g, cfg, jobs);

    const std::string tag = fs::path(input).stem().string();
    const std::string csv_path = out_prefix + ".csv";
    std::ofstream csv(csv_path);
    csv << "node_id,score,scorer,graph_tag\n";
    for (std::size_t v = 0; v < scores.values.size(); ++v)
        csv << v << ',' << fmt(scores.values[v]) << ',' << scorer_name(scores.scorer) << ',' << tag
            << "\n";

    json manifest{{"input", input},
                  {"graph_tag", tag},
                  {"scorer", scorer_name(cfg.scorer)},
                  {"M", cfg.M},
                  {"eps_add", cfg.perturb.eps_add},
                  {"eps_del", cfg.perturb.eps_del},
                  {"model", perturb_model_name(cfg.perturb.model)},
                  {"weight_aware", cfg.perturb.weight_aware ? 1 : 0},
                  {"seed", seed},
                  {"jobs", jobs},
                  {"kernel_lane", kernels::lane_name(kernels::active_lane())}};
    std::ofstream mf(out_prefix + ".manifest.json");
    mf << manifest.dump(2) << "\n";
    std::cout << "wrote " << csv_path << "\n";
    return 0;
}

int run_sir(const std::string& input, std::vector<std::uint32_t> seed_nodes,
            const std::string& scores_csv, const std::string& policy_name, std::size_t top_k,
            double fraction, double beta, double gamma, int runs, int max_steps,
            std::uint64_t seed, int jobs, const std::string& out_path) {
    const Graph g = load_edge_list_file(input);

    std::vector<VertexId> trigger(seed_nodes.begin(), seed_nodes.end());
    if (trigger.empty() && !scores_csv.empty()) {
        std::ifstream in(scores_csv);
        if (!in) throw std::runtime_error("cannot open scores file '" + scores_csv + "'");
        ScoreVector scores;
        scores.values.assign(g.vertex_count(), 0.0);
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream fields(line);
            std::size_t node = 0;
            double value = 0.0;
            if (fields >> node >> value && node < scores.values.size())
                scores.values[node] = value;
        }
        TriggerPolicy policy;
        if (policy_name == "main-core") {
            policy.kind = TriggerKind::main_core_after_ceiling;
        } else if (policy_name == "top-k") {
            policy.kind = TriggerKind::top_k;
            policy.k = top_k;
        } else if (policy_name == "top-fraction") {
            policy.kind = TriggerKind::top_fraction;
            policy.fraction = fraction;
        } else {
            throw CLI::ValidationError("--policy", "expected main-core, top-k, or top-fraction");
        }
        trigger = extract_trigger_set(scores, policy);
    }
    if (trigger.empty()) throw CLI::ValidationError("sir", "no trigger set given");

    SirConfig cfg;
    cfg.beta = beta < 0 ? 1.0 / adjacency_lambda1(g) : beta;
    cfg.gamma = gamma;
    cfg.runs = runs;
    cfg.max_steps = max_steps;
    cfg.seed = seed;
    const SeverityProfile profile = trigger_set_severity(g, trigger, cfg, jobs);

    std::ostringstream out;
    out << "step,mean_new_infections\n";
    for (std::size_t t = 0; t < profile.mean_new_infections.size(); ++t)
        out << (t + 1) << ',' << fmt(profile.mean_new_infections[t]) << "\n";
    out << "total," << fmt(profile.mean_total) << "\n";
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(out_path);
        f << out.str();
        std::cout << "wrote " << out_path << " (beta=" << fmt(cfg.beta)
                  << ", trigger=" << trigger.size() << ")\n";
    }
    return 0;
}

ExperimentConfig load_config_with_overrides(const std::string& config_path,
                                            std::optional<std::uint64_t> seed,
                                            std::optional<int> jobs,
                                            const std::string& out_dir) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (seed) cfg.seed = *seed;
    if (jobs) cfg.jobs = *jobs;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ensemble vertex scoring on perturbed graphs"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> global_seed;
    std::optional<int> global_jobs;
    std::string global_out_dir;
    app.add_option("--seed", global_seed, "master seed override");
    app.add_option("--jobs", global_jobs, "worker thread count");
    app.add_option("--out-dir", global_out_dir, "output directory override");

    // prepare-data
    auto* prepare = app.add_subcommand("prepare-data", "clean a raw edge list");
    std::string prep_in, prep_out;
    bool prep_no_lcc = false, prep_raw_weights = false;
    prepare->add_option("--input", prep_in)->required();
    prepare->add_option("--output", prep_out)->required();
    prepare->add_flag("--no-lcc", prep_no_lcc, "keep all components");
    prepare->add_flag("--raw-weights", prep_raw_weights,
                      "keep input weights instead of max-endpoint-degree weights");

    // stats
    auto* stats = app.add_subcommand("stats", "network statistics row");
    std::string stats_in, stats_out;
    std::size_t stats_cutoff = 20000;
    stats->add_option("--input", stats_in)->required();
    stats->add_option("--exact-diameter-cutoff", stats_cutoff);
    stats->add_option("--out", stats_out);

    // pc-score
    auto* score = app.add_subcommand("pc-score", "ensemble vertex scores");
    std::string score_in, score_prefix = "scores";
    ScoreFlags flags;
    score->add_option("--input", score_in)->required();
    score->add_option("--scorer", flags.scorer, "cu, cw, or pr");
    score->add_option("--M", flags.M, "ensemble size");
    score->add_option("--eps-add", flags.eps_add);
    score->add_option("--eps-del", flags.eps_del);
    score->add_option("--model", flags.model, "er or cl");
    score->add_option("--weight-aware", flags.weight_aware, "0 or 1");
    score->add_option("--out-prefix", score_prefix);

    // sir
    auto* sir = app.add_subcommand("sir", "SIR severity of a trigger set");
    std::string sir_in, sir_scores, sir_policy = "main-core", sir_out;
    std::vector<std::uint32_t> sir_seed_nodes;
    std::size_t sir_top_k = 100;
    double sir_fraction = 1.0 / 3.0;
    double sir_beta = -1.0, sir_gamma = 0.8;
    int sir_runs = 100, sir_max_steps = 10000;
    sir->add_option("--input", sir_in)->required();
    sir->add_option("--seed-nodes", sir_seed_nodes, "explicit trigger vertices");
    sir->add_option("--scores", sir_scores, "trigger from a pc-score CSV");
    sir->add_option("--policy", sir_policy, "main-core, top-k, or top-fraction");
    sir->add_option("--top-k", sir_top_k);
    sir->add_option("--fraction", sir_fraction);
    sir->add_option("--beta", sir_beta, "infection probability (< 0: use 1/lambda1)");
    sir->add_option("--gamma", sir_gamma, "recovery probability");
    sir->add_option("--runs", sir_runs, "epidemics per trigger vertex");
    sir->add_option("--max-steps", sir_max_steps);
    sir->add_option("--out", sir_out);

    // experiment drivers
    std::string spreader_cfg, keyword_cfg, bias_cfg;
    auto* spreader = app.add_subcommand("spreader-exp", "SIR spreading grid search");
    spreader->add_option("--config", spreader_cfg)->required();
    auto* keyword = app.add_subcommand("keyword-exp", "keyword extraction grid search");
    keyword->add_option("--config", keyword_cfg)->required();
    auto* bias = app.add_subcommand("bias-variance", "bias/variance table");
    bias->add_option("--config", bias_cfg)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (prepare->parsed())
            return run_prepare(prep_in, prep_out, !prep_no_lcc, !prep_raw_weights);
        if (stats->parsed())
            return run_stats(stats_in, stats_cutoff, global_jobs.value_or(1), stats_out);
        if (score->parsed())
            return run_pc_score(score_in, flags, global_seed.value_or(0), global_jobs.value_or(1),
                                global_out_dir.empty() ? score_prefix
                                                       : global_out_dir + "/" + score_prefix);
        if (sir->parsed())
            return run_sir(sir_in, sir_seed_nodes, sir_scores, sir_policy, sir_top_k,
                           sir_fraction, sir_beta, sir_gamma, sir_runs, sir_max_steps,
                           global_seed.value_or(0), global_jobs.value_or(1), sir_out);
        if (spreader->parsed()) {
            run_spreader_experiment(
                load_config_with_overrides(spreader_cfg, global_seed, global_jobs, global_out_dir));
            return 0;
        }
        if (keyword->parsed()) {
            run_keyword_experiment(
                load_config_with_overrides(keyword_cfg, global_seed, global_jobs, global_out_dir));
            return 0;
        }
        if (bias->parsed()) {
            run_bias_variance(
                load_config_with_overrides(bias_cfg, global_seed, global_jobs, global_out_dir));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
