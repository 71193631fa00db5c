#include "pcnet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "pcnet/kernels.hpp"
#include "pcnet/parallel.hpp"

namespace pcnet {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<GridCell> enumerate_grid(const GridSpec& grid) {
    std::vector<GridCell> cells;
    for (bool dw : grid.weight_aware)
        for (PerturbModel model : grid.models)
            for (int M : grid.ensemble_sizes)
                for (double ed : grid.eps_del)
                    for (double ea : grid.eps_add) {
                        if (ea == 0.0 && ed == 0.0) continue;
                        cells.push_back({ea, ed, M, model, dw});
                    }
    return cells;
}

std::uint64_t cell_seed(std::uint64_t master_seed, const GridCell& cell) {
    std::uint64_t s = mix_seed(master_seed, static_cast<std::uint64_t>(cell.M));
    s = mix_seed(s, cell.model == PerturbModel::CL ? 2u : 1u, cell.weight_aware ? 1u : 0u);
    s = mix_seed(s, static_cast<std::uint64_t>(std::llround(cell.eps_add * 1e6)),
                 static_cast<std::uint64_t>(std::llround(cell.eps_del * 1e6)));
    return s;
}

namespace {

// fixed stream tags so the harness sub-seeds stay disjoint
constexpr std::uint64_t kSirStream = 0x5349u;
constexpr std::uint64_t kDocStream = 0xD0Cu;
constexpr std::uint64_t kObservationStream = 0x0B5u;
constexpr std::uint64_t kEnsembleStream = 0xE45u;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

PerturbModel parse_model(const std::string& name) {
    const auto model = perturb_model_from_name(name);
    if (!model) throw ParseError("unknown perturbation model '" + name + "'");
    return *model;
}

Scorer parse_scorer(const std::string& name) {
    const auto scorer = scorer_from_name(name);
    if (!scorer) throw ParseError("unknown scorer '" + name + "'");
    return *scorer;
}

PerturbConfig parse_perturb(const json& j) {
    PerturbConfig cfg;
    cfg.eps_add = j.value("eps_add", 0.0);
    cfg.eps_del = j.value("eps_del", 0.0);
    if (j.contains("model")) cfg.model = parse_model(j.at("model").get<std::string>());
    cfg.weight_aware = j.value("weight_aware", 0) != 0;
    return cfg;
}

json perturb_to_json(const PerturbConfig& cfg) {
    return json{{"eps_add", cfg.eps_add},
                {"eps_del", cfg.eps_del},
                {"model", perturb_model_name(cfg.model)},
                {"weight_aware", cfg.weight_aware ? 1 : 0},
                {"seed", cfg.seed}};
}

Graph load_experiment_graph(const ExperimentConfig& cfg) {
    if (cfg.dataset_path.empty())
        throw ParseError("experiment config has no dataset.path");
    LoadOptions opts;
    opts.keep_largest_component = !cfg.dataset_prepared;
    Graph g = load_edge_list_file(cfg.dataset_path, opts);
    if (!cfg.dataset_prepared) g = assign_default_weights(g);
    return g;
}

TriggerPolicy spreader_policy(Scorer scorer, std::size_t top_k) {
    TriggerPolicy policy;
    if (scorer == Scorer::pr) {
        policy.kind = TriggerKind::top_k;
        policy.k = top_k;
    }
    return policy;
}

std::ofstream open_report(const ExperimentConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    std::ofstream out(fs::path(cfg.out_dir) / name);
    if (!out) throw std::runtime_error("cannot write report '" + name + "'");
    return out;
}

std::string cell_fields(const GridCell& cell) {
    return std::to_string(cell.weight_aware ? 1 : 0) + "," + perturb_model_name(cell.model) +
           "," + std::to_string(cell.M) + "," + fmt(cell.eps_del) + "," + fmt(cell.eps_add);
}

void write_severity_row(std::ofstream& out, const std::string& tag, const std::string& scorer,
                        const std::string& variant, const SpreaderCellRow& row,
                        std::uint64_t seed, const std::string& extra = "") {
    out << tag << ',' << scorer << ',' << variant << ',' << cell_fields(row.cell) << ','
        << row.trigger_size;
    for (std::size_t s : {2u, 4u, 6u, 8u, 10u}) out << ',' << fmt(row.profile.at_step(s));
    out << ',' << fmt(row.profile.mean_total) << ',' << seed << ','
        << (row.failed ? "failed" : "ok");
    if (!extra.empty()) out << ',' << extra;
    out << '\n';
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("config '" + path + "': " + e.what());
    }

    ExperimentConfig cfg;
    cfg.seed = j.value("seed", 0ull);
    cfg.jobs = j.value("jobs", 1);
    cfg.out_dir = j.value("out_dir", std::string("out"));

    if (j.contains("dataset")) {
        const auto& d = j.at("dataset");
        cfg.dataset_path = d.value("path", std::string());
        cfg.dataset_prepared = d.value("prepared", true);
        cfg.dataset_tag = d.value("tag", fs::path(cfg.dataset_path).stem().string());
    }
    if (j.contains("corpus")) {
        const auto& c = j.at("corpus");
        cfg.corpus_dir = c.value("dir", std::string());
        cfg.window = c.value("window", 5u);
        cfg.keyword_top_fraction = c.value("top_fraction", 1.0 / 3.0);
    }
    if (j.contains("scorers")) {
        cfg.scorers.clear();
        for (const auto& name : j.at("scorers")) cfg.scorers.push_back(parse_scorer(name));
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.contains("eps_add")) cfg.grid.eps_add = g.at("eps_add").get<std::vector<double>>();
        if (g.contains("eps_del")) cfg.grid.eps_del = g.at("eps_del").get<std::vector<double>>();
        if (g.contains("M")) cfg.grid.ensemble_sizes = g.at("M").get<std::vector<int>>();
        if (g.contains("model")) {
            cfg.grid.models.clear();
            for (const auto& name : g.at("model")) cfg.grid.models.push_back(parse_model(name));
        }
        if (g.contains("weight_aware")) {
            cfg.grid.weight_aware.clear();
            for (const auto& v : g.at("weight_aware"))
                cfg.grid.weight_aware.push_back(v.get<int>() != 0);
        }
    }
    if (j.contains("sir")) {
        const auto& s = j.at("sir");
        if (s.contains("beta")) {
            cfg.sir.beta = s.at("beta").get<double>();
            cfg.beta_from_tau = false;
        }
        cfg.beta_from_tau = s.value("beta_from_tau", cfg.beta_from_tau);
        cfg.sir.gamma = s.value("gamma", 0.8);
        cfg.sir.runs = s.value("runs", 100);
        cfg.sir.max_steps = s.value("max_steps", 10000);
    }
    if (j.contains("spreader")) cfg.spreader_top_k = j.at("spreader").value("top_k", 100u);
    if (j.contains("bias_variance")) {
        const auto& b = j.at("bias_variance");
        cfg.sample_size = b.value("sample_size", 50);
        cfg.bias_variance_docs = b.value("docs", 16);
        if (b.contains("observation")) cfg.observation = parse_perturb(b.at("observation"));
        if (b.contains("pc")) {
            cfg.bias_variance_pc.perturb = parse_perturb(b.at("pc"));
            cfg.bias_variance_pc.M = b.at("pc").value("M", 8);
        }
    }
    return cfg;
}

void write_manifest(const ExperimentConfig& cfg, const std::string& path) {
    json grid{{"eps_add", cfg.grid.eps_add},
              {"eps_del", cfg.grid.eps_del},
              {"M", cfg.grid.ensemble_sizes},
              {"model", json::array()},
              {"weight_aware", json::array()}};
    for (auto m : cfg.grid.models) grid["model"].push_back(perturb_model_name(m));
    for (bool w : cfg.grid.weight_aware) grid["weight_aware"].push_back(w ? 1 : 0);

    json scorers = json::array();
    for (auto s : cfg.scorers) scorers.push_back(scorer_name(s));

    json j{{"seed", cfg.seed},
           {"jobs", cfg.jobs},
           {"out_dir", cfg.out_dir},
           {"scorers", scorers},
           {"grid", grid},
           {"sir",
            {{"beta", cfg.sir.beta},
             {"beta_from_tau", cfg.beta_from_tau},
             {"gamma", cfg.sir.gamma},
             {"runs", cfg.sir.runs},
             {"max_steps", cfg.sir.max_steps}}},
           {"kernel_lane", kernels::lane_name(kernels::active_lane())}};
    if (!cfg.dataset_path.empty())
        j["dataset"] = {{"path", cfg.dataset_path},
                        {"prepared", cfg.dataset_prepared},
                        {"tag", cfg.dataset_tag}};
    if (!cfg.corpus_dir.empty())
        j["corpus"] = {{"dir", cfg.corpus_dir},
                       {"window", cfg.window},
                       {"top_fraction", cfg.keyword_top_fraction}};
    j["spreader"] = {{"top_k", cfg.spreader_top_k}};
    j["bias_variance"] = {{"sample_size", cfg.sample_size},
                          {"docs", cfg.bias_variance_docs},
                          {"observation", perturb_to_json(cfg.observation)},
                          {"pc", perturb_to_json(cfg.bias_variance_pc.perturb)},
                          {"pc_M", cfg.bias_variance_pc.M}};

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest '" + path + "'");
    out << j.dump(2) << "\n";
}

SpreaderResult run_spreader_experiment(const ExperimentConfig& cfg) {
    const Graph g = load_experiment_graph(cfg);

    SpreaderResult result;
    SirConfig sir = cfg.sir;
    sir.seed = mix_seed(cfg.seed, kSirStream);
    if (cfg.beta_from_tau) sir.beta = 1.0 / adjacency_lambda1(g);
    result.beta = sir.beta;

    // eps = 0 baseline: plain scores on the original graph
    for (Scorer scorer : cfg.scorers) {
        SpreaderCellRow row;
        row.scorer = scorer;
        const auto trigger = extract_trigger_set(score_with(g, scorer),
                                                 spreader_policy(scorer, cfg.spreader_top_k));
        row.trigger_size = trigger.size();
        row.profile = trigger_set_severity(g, trigger, sir, cfg.jobs);
        result.baseline.push_back(std::move(row));
    }

    const auto cells = enumerate_grid(cfg.grid);
    result.cells.resize(cells.size() * cfg.scorers.size());
    parallel_for(result.cells.size(), cfg.jobs, [&](std::size_t i) {
        const GridCell& cell = cells[i / cfg.scorers.size()];
        const Scorer scorer = cfg.scorers[i % cfg.scorers.size()];
        SpreaderCellRow row;
        row.cell = cell;
        row.scorer = scorer;
        try {
            PcConfig pc;
            pc.M = cell.M;
            pc.scorer = scorer;
            pc.perturb = {cell.eps_add, cell.eps_del, cell.model, cell.weight_aware,
                          cell_seed(cfg.seed, cell)};
            const auto trigger = extract_trigger_set(
                pc_scores(g, pc, 1), spreader_policy(scorer, cfg.spreader_top_k));
            row.trigger_size = trigger.size();
            row.profile = trigger_set_severity(g, trigger, sir, 1);
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        result.cells[i] = std::move(row);
    });

    std::stable_sort(result.cells.begin(), result.cells.end(),
                     [](const SpreaderCellRow& a, const SpreaderCellRow& b) {
                         if (a.scorer != b.scorer) return a.scorer < b.scorer;
                         if (a.failed != b.failed) return !a.failed;
                         return a.profile.mean_total > b.profile.mean_total;
                     });

    auto cells_csv = open_report(cfg, "spreader_cells.csv");
    cells_csv << "network,scorer,variant,delta_w,model,M,eps_del,eps_add,trigger_size,"
                 "step2,step4,step6,step8,step10,total,seed,status\n";
    for (const auto& row : result.cells)
        write_severity_row(cells_csv, cfg.dataset_tag, scorer_name(row.scorer), "pc", row,
                           cfg.seed);

    auto cmp_csv = open_report(cfg, "spreader_comparison.csv");
    cmp_csv << "network,scorer,variant,delta_w,model,M,eps_del,eps_add,trigger_size,"
               "step2,step4,step6,step8,step10,total,seed,status,improvement_pct\n";
    for (const auto& base : result.baseline) {
        const auto best = std::find_if(
            result.cells.begin(), result.cells.end(),
            [&](const SpreaderCellRow& r) { return r.scorer == base.scorer && !r.failed; });
        if (best != result.cells.end()) {
            const double pct = base.profile.mean_total > 0
                                   ? 100.0 * (best->profile.mean_total - base.profile.mean_total) /
                                         base.profile.mean_total
                                   : 0.0;
            write_severity_row(cmp_csv, cfg.dataset_tag, scorer_name(base.scorer), "pc", *best,
                               cfg.seed, fmt(pct));
        }
        write_severity_row(cmp_csv, cfg.dataset_tag, scorer_name(base.scorer), "original", base,
                           cfg.seed);
    }

    write_manifest(cfg, (fs::path(cfg.out_dir) / "spreader_manifest.json").string());
    return result;
}

namespace {

/// Ensemble means for several scorers over one shared stream of perturbed
/// graphs. Accumulation is sequential in realization order, so each scorer's
/// mean is bitwise identical to pc_scores with the same configuration.
std::unordered_map<Scorer, std::vector<double>> shared_ensemble_scores(
    const Graph& g, const PerturbConfig& perturb_cfg, int M,
    const std::vector<Scorer>& scorers) {
    const PerturbContext ctx(g, perturb_cfg.model);
    std::unordered_map<Scorer, std::vector<double>> acc;
    for (Scorer s : scorers) acc[s].assign(g.vertex_count(), 0.0);
    for (int m = 1; m <= M; ++m) {
        const Graph perturbed = perturb(ctx, perturb_cfg, static_cast<std::uint64_t>(m));
        for (Scorer s : scorers)
            kernels::add_inplace(acc[s], score_with(perturbed, s).values);
    }
    for (auto& [s, values] : acc)
        kernels::scale_inplace(values, 1.0 / static_cast<double>(M));
    return acc;
}

}  // namespace

KeywordResult run_keyword_experiment(const ExperimentConfig& cfg) {
    const auto corpus = load_token_corpus(cfg.corpus_dir);
    if (corpus.empty()) throw ParseError("corpus '" + cfg.corpus_dir + "' has no .tokens files");

    std::vector<Graph> graphs;
    std::vector<std::vector<std::string>> gold;
    graphs.reserve(corpus.size());
    for (const auto& doc : corpus) {
        graphs.push_back(build_cooccurrence_graph(doc, cfg.window));
        gold.push_back(doc.gold);
    }

    auto policy_for = [&](Scorer scorer) {
        TriggerPolicy policy = default_keyword_policy(scorer);
        if (scorer == Scorer::pr) policy.fraction = cfg.keyword_top_fraction;
        return policy;
    };

    KeywordResult result;
    std::vector<std::vector<std::vector<std::string>>> baseline_keys(cfg.scorers.size());
    for (std::size_t si = 0; si < cfg.scorers.size(); ++si) {
        const Scorer scorer = cfg.scorers[si];
        KeywordCellRow row;
        row.scorer = scorer;
        auto& extracted = baseline_keys[si];
        extracted.reserve(graphs.size());
        for (const auto& g : graphs)
            extracted.push_back(extract_keywords(g, scorer, std::nullopt, policy_for(scorer)));
        row.metrics = keyword_prf1(extracted, gold);
        result.baseline.push_back(std::move(row));
    }

    const auto cells = enumerate_grid(cfg.grid);
    std::vector<std::vector<KeywordCellRow>> cell_rows(cells.size());
    parallel_for(cells.size(), cfg.jobs, [&](std::size_t ci) {
        const GridCell& cell = cells[ci];
        const std::uint64_t seed = cell_seed(cfg.seed, cell);
        std::vector<std::vector<std::vector<std::string>>> extracted(
            cfg.scorers.size(), std::vector<std::vector<std::string>>(graphs.size()));
        std::vector<KeywordCellRow> rows(cfg.scorers.size());
        try {
            for (std::size_t d = 0; d < graphs.size(); ++d) {
                PerturbConfig pcfg{cell.eps_add, cell.eps_del, cell.model, cell.weight_aware,
                                   mix_seed(seed, kDocStream, d)};
                const auto means = shared_ensemble_scores(graphs[d], pcfg, cell.M, cfg.scorers);
                for (std::size_t si = 0; si < cfg.scorers.size(); ++si) {
                    const Scorer scorer = cfg.scorers[si];
                    const ScoreVector scores{scorer, means.at(scorer)};
                    for (VertexId v : extract_trigger_set(scores, policy_for(scorer)))
                        extracted[si][d].push_back(graphs[d].label(v));
                }
            }
            for (std::size_t si = 0; si < cfg.scorers.size(); ++si) {
                rows[si].cell = cell;
                rows[si].scorer = cfg.scorers[si];
                rows[si].metrics = keyword_prf1(extracted[si], gold);
            }
        } catch (const std::exception& e) {
            for (std::size_t si = 0; si < cfg.scorers.size(); ++si) {
                rows[si].cell = cell;
                rows[si].scorer = cfg.scorers[si];
                rows[si].failed = true;
                rows[si].error = e.what();
            }
        }
        cell_rows[ci] = std::move(rows);
    });

    for (auto& rows : cell_rows)
        for (auto& row : rows) result.cells.push_back(std::move(row));
    std::stable_sort(result.cells.begin(), result.cells.end(),
                     [](const KeywordCellRow& a, const KeywordCellRow& b) {
                         if (a.scorer != b.scorer) return a.scorer < b.scorer;
                         if (a.failed != b.failed) return !a.failed;
                         return a.metrics.f1 > b.metrics.f1;
                     });

    auto cells_csv = open_report(cfg, "keyword_cells.csv");
    cells_csv << "corpus,scorer,variant,delta_w,model,M,eps_del,eps_add,precision,recall,f1,"
                 "documents,seed,status\n";
    const std::string corpus_tag = fs::path(cfg.corpus_dir).filename().string();
    auto write_kw_row = [&](std::ofstream& out, const KeywordCellRow& row,
                            const std::string& variant, const std::string& extra = "") {
        out << corpus_tag << ',' << scorer_name(row.scorer) << ',' << variant << ','
            << cell_fields(row.cell) << ',' << fmt(row.metrics.precision) << ','
            << fmt(row.metrics.recall) << ',' << fmt(row.metrics.f1) << ','
            << row.metrics.documents << ',' << cfg.seed << ','
            << (row.failed ? "failed" : "ok");
        if (!extra.empty()) out << ',' << extra;
        out << '\n';
    };
    for (const auto& row : result.cells) write_kw_row(cells_csv, row, "pc");

    auto cmp_csv = open_report(cfg, "keyword_comparison.csv");
    cmp_csv << "corpus,scorer,variant,delta_w,model,M,eps_del,eps_add,precision,recall,f1,"
               "documents,seed,status,improvement_pct\n";
    for (std::size_t si = 0; si < cfg.scorers.size(); ++si) {
        const auto& base = result.baseline[si];
        const auto best = std::find_if(
            result.cells.begin(), result.cells.end(),
            [&](const KeywordCellRow& r) { return r.scorer == base.scorer && !r.failed; });
        if (best != result.cells.end()) {
            const double pct = base.metrics.f1 > 0
                                   ? 100.0 * (best->metrics.f1 - base.metrics.f1) / base.metrics.f1
                                   : 0.0;
            write_kw_row(cmp_csv, *best, "pc", fmt(pct));
        }
        write_kw_row(cmp_csv, base, "original");

        const std::string keys_dir =
            (fs::path(cfg.out_dir) / ("keys_" + std::string(scorer_name(base.scorer)))).string();
        for (std::size_t d = 0; d < corpus.size(); ++d)
            write_keys_file(keys_dir, corpus[d].id, baseline_keys[si][d]);
    }

    write_manifest(cfg, (fs::path(cfg.out_dir) / "keyword_manifest.json").string());
    return result;
}

std::vector<BiasVarianceRow> run_bias_variance(const ExperimentConfig& cfg) {
    struct Target {
        std::string tag;
        Graph graph;
    };
    std::vector<Target> targets;

    if (!cfg.corpus_dir.empty()) {
        const auto corpus = load_token_corpus(cfg.corpus_dir);
        // deterministic sample of documents: order by mixed hash of the index
        std::vector<std::size_t> idx(corpus.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return mix_seed(cfg.seed, a) < mix_seed(cfg.seed, b);
        });
        const std::size_t take =
            std::min<std::size_t>(idx.size(), static_cast<std::size_t>(cfg.bias_variance_docs));
        idx.resize(take);
        std::sort(idx.begin(), idx.end());
        for (std::size_t i : idx)
            targets.push_back({corpus[i].id, build_cooccurrence_graph(corpus[i], cfg.window)});
    } else {
        targets.push_back({cfg.dataset_tag, load_experiment_graph(cfg)});
    }

    std::vector<BiasVarianceRow> rows;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        SirConfig sir = cfg.sir;
        sir.seed = mix_seed(cfg.seed, kSirStream, t);
        if (cfg.beta_from_tau) sir.beta = 1.0 / adjacency_lambda1(targets[t].graph);

        PerturbConfig observation = cfg.observation;
        observation.seed = mix_seed(cfg.seed, kObservationStream, t);

        for (Scorer scorer : cfg.scorers) {
            PcConfig pc = cfg.bias_variance_pc;
            pc.scorer = scorer;
            pc.perturb.seed = mix_seed(cfg.seed, kEnsembleStream, t);

            BiasVarianceRow row;
            row.graph_tag = targets[t].tag;
            row.scorer = scorer;
            row.report = bias_variance_experiment(targets[t].graph, scorer, pc, cfg.sample_size,
                                                  sir, observation, 10, cfg.jobs);
            rows.push_back(std::move(row));
        }
    }

    auto csv = open_report(cfg, "bias_variance.csv");
    csv << "graph,scorer,bias_original_x100,variance_original_x1000,bias_pc_x100,"
           "variance_pc_x1000,mean_met_original,mean_met_pc,mean_met_pc_realizations,"
           "decomposition_lhs_pc,decomposition_rhs_pc,sample_size,seed\n";
    for (const auto& row : rows) {
        const auto check = error_decomposition_check(row.report.met_pc);
        const double n = static_cast<double>(row.report.met_original.size());
        const double mean_orig = 1.0 - row.report.original.bias;
        const double mean_pc = 1.0 - row.report.pc.bias;
        double mean_real = 0.0;
        for (double v : row.report.met_pc_realization_mean) mean_real += v;
        mean_real /= n;
        csv << row.graph_tag << ',' << scorer_name(row.scorer) << ','
            << fmt(100.0 * row.report.original.bias) << ','
            << fmt(1000.0 * row.report.original.variance) << ',' << fmt(100.0 * row.report.pc.bias)
            << ',' << fmt(1000.0 * row.report.pc.variance) << ',' << fmt(mean_orig) << ','
            << fmt(mean_pc) << ',' << fmt(mean_real) << ',' << fmt(check.lhs) << ','
            << fmt(check.rhs) << ',' << row.report.met_original.size() << ',' << cfg.seed << '\n';
    }

    write_manifest(cfg, (fs::path(cfg.out_dir) / "bias_variance_manifest.json").string());
    return rows;
}

}  // namespace pcnet
