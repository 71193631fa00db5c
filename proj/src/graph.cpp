#include "pcnet/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

namespace pcnet {

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges, Duplicates dup,
                        std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != n)
        throw std::invalid_argument("labels size must equal vertex count");

    for (auto& e : edges) {
        if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("self-loop not allowed");
        if (!(e.w > 0)) throw std::invalid_argument("edge weight must be positive");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });

    // merge duplicates
    std::size_t out = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (out > 0 && edges[out - 1].u == edges[i].u && edges[out - 1].v == edges[i].v) {
            if (dup == Duplicates::error) throw std::invalid_argument("duplicate edge");
            edges[out - 1].w += edges[i].w;
        } else {
            edges[out++] = edges[i];
        }
    }
    edges.resize(out);

    Graph g;
    g.n_ = n;
    g.labels_ = std::move(labels);
    g.offsets_.assign(n + 1, 0);
    for (const auto& e : edges) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];

    g.adj_.resize(2 * edges.size());
    g.w_.resize(2 * edges.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : edges) {
        g.adj_[cursor[e.u]] = e.v;
        g.w_[cursor[e.u]++] = e.w;
        g.adj_[cursor[e.v]] = e.u;
        g.w_[cursor[e.v]++] = e.w;
    }
    // rows come out sorted because edges were sorted by (u, v) and mirrored
    // inserts happen in ascending u order as well
    g.wdeg_.assign(n, 0.0);
    for (VertexId u = 0; u < n; ++u) {
        double acc = 0.0;
        for (double w : g.neighbor_weights(u)) acc += w;
        g.wdeg_[u] = acc;
    }
    return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const noexcept {
    if (degree(u) > degree(v)) std::swap(u, v);
    const auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

double Graph::weight(VertexId u, VertexId v) const noexcept {
    if (degree(u) > degree(v)) std::swap(u, v);
    const auto nbrs = neighbors(u);
    const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
    if (it == nbrs.end() || *it != v) return 0.0;
    return neighbor_weights(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> edges;
    edges.reserve(edge_count());
    for_each_edge([&](VertexId u, VertexId v, double w) { edges.push_back({u, v, w}); });
    return edges;
}

namespace {

constexpr const char* kHeaderPrefix = "# pcnet-graph n=";
constexpr const char* kNodePrefix = "# node ";

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

double parse_weight(std::string_view token, std::size_t line_no) {
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("line " + std::to_string(line_no) + ": bad weight '" +
                         std::string(token) + "'");
    return value;
}

}  // namespace

Graph load_edge_list(std::istream& in, const LoadOptions& opts) {
    std::string line;
    std::size_t line_no = 0;

    bool have_header = false;
    std::size_t header_n = 0;
    std::vector<std::string> header_labels;

    std::unordered_map<std::string, VertexId> id_of;
    std::vector<std::string> token_of;
    std::vector<Edge> edges;

    auto intern = [&](std::string_view token, std::size_t ln) -> VertexId {
        if (have_header) {
            VertexId id = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
            if (ec != std::errc{} || ptr != token.data() + token.size() || id >= header_n)
                throw ParseError("line " + std::to_string(ln) + ": bad vertex id '" +
                                 std::string(token) + "'");
            return id;
        }
        const auto it = id_of.find(std::string(token));
        if (it != id_of.end()) return it->second;
        const auto id = static_cast<VertexId>(token_of.size());
        id_of.emplace(std::string(token), id);
        token_of.emplace_back(token);
        return id;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind(kHeaderPrefix, 0) == 0 && line_no == 1) {
                const auto tail = std::string_view(line).substr(std::strlen(kHeaderPrefix));
                auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), header_n);
                if (ec != std::errc{})
                    throw ParseError("line 1: bad graph header");
                have_header = true;
            } else if (have_header && line.rfind(kNodePrefix, 0) == 0) {
                const auto fields = split_fields(std::string_view(line).substr(1));
                // fields: "node", id, label
                if (fields.size() != 3)
                    throw ParseError("line " + std::to_string(line_no) + ": bad node record");
                VertexId id = 0;
                auto [ptr, ec] =
                    std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), id);
                if (ec != std::errc{} || id >= header_n)
                    throw ParseError("line " + std::to_string(line_no) + ": bad node id");
                if (header_labels.empty()) header_labels.resize(header_n);
                header_labels[id] = std::string(fields[2]);
            }
            continue;
        }

        const auto fields = split_fields(line);
        if (fields.size() != 2 && fields.size() != 3)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v' or 'u v w'");

        const VertexId u = intern(fields[0], line_no);
        const VertexId v = intern(fields[1], line_no);
        double w = 1.0;
        if (fields.size() == 3) {
            w = parse_weight(fields[2], line_no);
            if (!(w > 0))
                throw ParseError("line " + std::to_string(line_no) + ": rejected weight " +
                                 std::string(fields[2]) + " (must be > 0)");
        }
        if (u == v) {
            if (opts.drop_self_loops) continue;
            throw ParseError("line " + std::to_string(line_no) + ": self-loop");
        }
        edges.push_back({u, v, w});
    }

    const std::size_t n = have_header ? header_n : token_of.size();
    std::vector<std::string> labels = have_header ? std::move(header_labels) : std::move(token_of);
    try {
        Graph g = Graph::from_edges(
            n, std::move(edges),
            opts.symmetrize ? Graph::Duplicates::merge_sum : Graph::Duplicates::error,
            std::move(labels));
        return opts.keep_largest_component ? largest_component(g) : g;
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("edge list invalid: ") + e.what());
    }
}

Graph load_edge_list_file(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return load_edge_list(in, opts);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    out << kHeaderPrefix << g.vertex_count() << "\n";
    if (g.has_labels()) {
        for (VertexId u = 0; u < g.vertex_count(); ++u)
            out << "# node " << u << ' ' << g.label(u) << "\n";
    }
    char buf[64];
    g.for_each_edge([&](VertexId u, VertexId v, double w) {
        std::snprintf(buf, sizeof(buf), "%.17g", w);
        out << u << ' ' << v << ' ' << buf << "\n";
    });
}

void save_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    save_edge_list(g, out);
}

std::vector<std::uint32_t> component_ids(const Graph& g, std::size_t& component_count) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> comp(n, UINT32_MAX);
    std::uint32_t next = 0;
    std::deque<VertexId> queue;
    for (VertexId s = 0; s < n; ++s) {
        if (comp[s] != UINT32_MAX) continue;
        comp[s] = next;
        queue.push_back(s);
        while (!queue.empty()) {
            const VertexId u = queue.front();
            queue.pop_front();
            for (VertexId v : g.neighbors(u)) {
                if (comp[v] == UINT32_MAX) {
                    comp[v] = next;
                    queue.push_back(v);
                }
            }
        }
        ++next;
    }
    component_count = next;
    return comp;
}

Graph largest_component(const Graph& g) {
    std::size_t count = 0;
    const auto comp = component_ids(g, count);
    if (count <= 1) return g;

    std::vector<std::size_t> sizes(count, 0);
    for (auto c : comp) ++sizes[c];
    const auto best =
        static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

    std::vector<VertexId> new_id(g.vertex_count(), 0);
    std::vector<std::string> labels;
    VertexId next = 0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        if (comp[u] == best) {
            new_id[u] = next++;
            if (g.has_labels()) labels.push_back(g.label(u));
        }
    }

    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    g.for_each_edge([&](VertexId u, VertexId v, double w) {
        if (comp[u] == best) edges.push_back({new_id[u], new_id[v], w});
    });
    return Graph::from_edges(next, std::move(edges), Graph::Duplicates::error, std::move(labels));
}

Graph assign_default_weights(const Graph& g) {
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    g.for_each_edge([&](VertexId u, VertexId v, double) {
        edges.push_back({u, v, static_cast<double>(std::max(g.degree(u), g.degree(v)))});
    });
    return Graph::from_edges(g.vertex_count(), std::move(edges), Graph::Duplicates::error,
                             g.labels());
}

}  // namespace pcnet
