#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcnet/eval.hpp"
#include "pcnet/graph_stats.hpp"
#include "pcnet/pcnet.hpp"
#include "pcnet/sir.hpp"
#include "pcnet/textgraph.hpp"

namespace pcnet {

/// Grid axes for the ensemble parameter search.
struct GridSpec {
    std::vector<double> eps_add{0.0, 0.05, 0.1, 0.2};
    std::vector<double> eps_del{0.0, 0.05, 0.1, 0.2};
    std::vector<int> ensemble_sizes{16, 64};
    std::vector<PerturbModel> models{PerturbModel::ER, PerturbModel::CL};
    std::vector<bool> weight_aware{false, true};
};

struct GridCell {
    double eps_add = 0.0;
    double eps_del = 0.0;
    int M = 1;
    PerturbModel model = PerturbModel::ER;
    bool weight_aware = false;
};

/// Cartesian product of the axes, excluding the eps_add == eps_del == 0
/// cells (those duplicate the unperturbed baseline).
std::vector<GridCell> enumerate_grid(const GridSpec& grid);

/// Stable per-cell seed derived from the cell parameters (not its position
/// in the enumeration), so a cell's numbers do not depend on grid shape.
std::uint64_t cell_seed(std::uint64_t master_seed, const GridCell& cell);

struct ExperimentConfig {
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out_dir = "out";

    // network experiments
    std::string dataset_path;
    bool dataset_prepared = true;  ///< false: clean + assign default weights on load
    std::string dataset_tag = "network";

    // keyword experiments
    std::string corpus_dir;
    std::size_t window = 5;
    double keyword_top_fraction = 1.0 / 3.0;

    std::vector<Scorer> scorers{Scorer::cu, Scorer::cw, Scorer::pr};
    GridSpec grid;

    SirConfig sir;
    bool beta_from_tau = true;  ///< ignore sir.beta, use the network's 1/lambda1
    std::size_t spreader_top_k = 100;

    // bias/variance experiment
    int sample_size = 50;
    int bias_variance_docs = 16;
    PerturbConfig observation{0.1, 0.1, PerturbModel::ER, false, 0};
    PcConfig bias_variance_pc;
};

ExperimentConfig load_experiment_config(const std::string& path);

/// Echo the configuration (plus seed, kernel lane) as a JSON manifest.
void write_manifest(const ExperimentConfig& cfg, const std::string& path);

struct SpreaderCellRow {
    GridCell cell;
    Scorer scorer = Scorer::cu;
    std::size_t trigger_size = 0;
    SeverityProfile profile;
    bool failed = false;
    std::string error;
};

struct SpreaderResult {
    double beta = 0.0;
    std::vector<SpreaderCellRow> baseline;  ///< one per scorer (original scores)
    std::vector<SpreaderCellRow> cells;     ///< per (cell, scorer), ranked by total
};

/// Grid-search the ensemble parameters: per cell and scorer compute ensemble
/// scores, extract the trigger set, and measure SIR severity; the eps=0
/// baseline uses the plain scores. Failed cells are recorded, not fatal.
/// Writes <out_dir>/spreader_cells.csv and <out_dir>/spreader_comparison.csv.
SpreaderResult run_spreader_experiment(const ExperimentConfig& cfg);

struct KeywordCellRow {
    GridCell cell;
    Scorer scorer = Scorer::cu;
    MacroPrf1 metrics;
    bool failed = false;
    std::string error;
};

struct KeywordResult {
    std::vector<KeywordCellRow> baseline;
    std::vector<KeywordCellRow> cells;  ///< ranked by F1 per scorer
};

/// Keyword-extraction grid search over a token corpus; best cell per scorer
/// selected by macro F1. Writes keyword_cells.csv, keyword_comparison.csv,
/// and .keys files for the baseline and best cells.
KeywordResult run_keyword_experiment(const ExperimentConfig& cfg);

struct BiasVarianceRow {
    std::string graph_tag;
    Scorer scorer = Scorer::cu;
    BiasVarianceReport report;
};

/// Bias/variance table across graphs (the configured dataset, or documents
/// sampled from the corpus). Writes bias_variance.csv.
std::vector<BiasVarianceRow> run_bias_variance(const ExperimentConfig& cfg);

}  // namespace pcnet
