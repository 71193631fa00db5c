#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcnet/graph.hpp"
#include "pcnet/pcnet.hpp"
#include "pcnet/scoring.hpp"

namespace pcnet {

/// One pre-tokenized document: tokens are already POS-filtered and stemmed
/// upstream; gold holds the reference keyword stems when available.
struct TokenDocument {
    std::string id;
    std::vector<std::string> tokens;
    std::vector<std::string> gold;
};

/// Word co-occurrence network: one vertex per unique token (label = token),
/// an edge between tokens that co-occur within a sliding window of W
/// consecutive positions (positions i, j co-occur iff 0 < j - i < W). Every
/// in-window position pair adds 1 to the edge weight; equal tokens at both
/// positions contribute nothing. Throws ParseError for documents with fewer
/// than 2 distinct tokens.
Graph build_cooccurrence_graph(const TokenDocument& doc, std::size_t window);

/// Default trigger policy per scorer: main core (after ceiling) for the core
/// scorers, top third for PageRank.
TriggerPolicy default_keyword_policy(Scorer scorer);

/// Score the graph (plain scorer, or the ensemble when pc is given) and map
/// the trigger set back to term strings. The graph must carry labels.
std::vector<std::string> extract_keywords(const Graph& g, Scorer scorer,
                                          const std::optional<PcConfig>& pc,
                                          const TriggerPolicy& policy, int jobs = 1);

/// Corpus IO: a directory of <doc>.tokens files (whitespace-separated stems,
/// UTF-8) with optional <doc>.gold sidecars, one stem per whitespace-separated
/// field. Documents are returned sorted by id.
std::vector<TokenDocument> load_token_corpus(const std::string& dir);

/// Write one extracted stem per line to <out_dir>/<doc>.keys.
void write_keys_file(const std::string& out_dir, const std::string& doc_id,
                     const std::vector<std::string>& keywords);

}  // namespace pcnet
