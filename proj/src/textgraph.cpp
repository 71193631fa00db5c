#include "pcnet/textgraph.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace pcnet {

Graph build_cooccurrence_graph(const TokenDocument& doc, std::size_t window) {
    if (window < 2) throw std::invalid_argument("window size must be >= 2");

    std::unordered_map<std::string, VertexId> id_of;
    std::vector<std::string> labels;
    std::vector<VertexId> ids;
    ids.reserve(doc.tokens.size());
    for (const auto& token : doc.tokens) {
        const auto it = id_of.find(token);
        if (it != id_of.end()) {
            ids.push_back(it->second);
        } else {
            const auto id = static_cast<VertexId>(labels.size());
            id_of.emplace(token, id);
            labels.push_back(token);
            ids.push_back(id);
        }
    }
    if (labels.size() < 2)
        throw ParseError("document '" + doc.id + "' has fewer than 2 distinct tokens");

    std::unordered_map<std::uint64_t, double> weight;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const std::size_t end = std::min(ids.size(), i + window);
        for (std::size_t j = i + 1; j < end; ++j) {
            if (ids[i] == ids[j]) continue;
            const VertexId a = std::min(ids[i], ids[j]);
            const VertexId b = std::max(ids[i], ids[j]);
            weight[(static_cast<std::uint64_t>(a) << 32) | b] += 1.0;
        }
    }

    std::vector<Edge> edges;
    edges.reserve(weight.size());
    for (const auto& [key, w] : weight)
        edges.push_back(
            {static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffu), w});
    const std::size_t n = labels.size();
    return Graph::from_edges(n, std::move(edges), Graph::Duplicates::error, std::move(labels));
}

TriggerPolicy default_keyword_policy(Scorer scorer) {
    TriggerPolicy policy;
    if (scorer == Scorer::pr) {
        policy.kind = TriggerKind::top_fraction;
        policy.fraction = 1.0 / 3.0;
    } else {
        policy.kind = TriggerKind::main_core_after_ceiling;
    }
    return policy;
}

std::vector<std::string> extract_keywords(const Graph& g, Scorer scorer,
                                          const std::optional<PcConfig>& pc,
                                          const TriggerPolicy& policy, int jobs) {
    if (!g.has_labels())
        throw std::invalid_argument("extract_keywords: graph has no term labels");

    ScoreVector scores;
    if (pc) {
        PcConfig cfg = *pc;
        cfg.scorer = scorer;
        scores = pc_scores(g, cfg, jobs);
    } else {
        scores = score_with(g, scorer);
    }

    std::vector<std::string> terms;
    for (VertexId v : extract_trigger_set(scores, policy)) terms.push_back(g.label(v));
    return terms;
}

namespace {

std::vector<std::string> read_token_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::vector<std::string> tokens;
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

}  // namespace

std::vector<TokenDocument> load_token_corpus(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<TokenDocument> docs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".tokens") continue;
        TokenDocument doc;
        doc.id = entry.path().stem().string();
        doc.tokens = read_token_file(entry.path());
        fs::path gold_path = entry.path();
        gold_path.replace_extension(".gold");
        if (fs::exists(gold_path)) doc.gold = read_token_file(gold_path);
        docs.push_back(std::move(doc));
    }
    std::sort(docs.begin(), docs.end(),
              [](const TokenDocument& a, const TokenDocument& b) { return a.id < b.id; });
    return docs;
}

void write_keys_file(const std::string& out_dir, const std::string& doc_id,
                     const std::vector<std::string>& keywords) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / (doc_id + ".keys"));
    if (!out) throw std::runtime_error("cannot write keys file for '" + doc_id + "'");
    for (const auto& term : keywords) out << term << "\n";
}

}  // namespace pcnet
