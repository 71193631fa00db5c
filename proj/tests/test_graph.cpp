#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pcnet/graph.hpp"
#include "pcnet/graph_stats.hpp"
#include "pcnet/rng.hpp"

using namespace pcnet;

namespace {

Graph random_graph(Rng& rng, std::size_t n, double edge_prob, bool random_weights = false) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (rng.bernoulli(edge_prob)) {
                const double w = random_weights ? 0.25 * (1 + rng.below(16)) : 1.0;
                edges.push_back({u, v, w});
            }
    return Graph::from_edges(n, std::move(edges));
}

Graph path_graph(std::size_t n, std::vector<double> weights = {}) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u + 1 < n; ++u)
        edges.push_back({u, static_cast<VertexId>(u + 1),
                         weights.empty() ? 1.0 : weights[u]});
    return Graph::from_edges(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
    return Graph::from_edges(n, std::move(edges));
}

Graph star_graph(std::size_t leaves) {
    std::vector<Edge> edges;
    for (VertexId v = 1; v <= leaves; ++v) edges.push_back({0, v, 1.0});
    return Graph::from_edges(leaves + 1, std::move(edges));
}

}  // namespace

TEST_CASE("plain edge list loads with remapped ids") {
    std::istringstream in("0 1\n1 2\n");
    const Graph g = load_edge_list(in);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("symmetrize merges orientations and self-loops drop") {
    std::istringstream in("0 1\n1 0\n0 0\n");
    const Graph g = load_edge_list(in);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.weight(0, 1) == 2.0);  // merged record sums the two unit weights
}

TEST_CASE("strict mode rejects duplicate pairs") {
    std::istringstream in("0 1\n1 0\n");
    LoadOptions opts;
    opts.symmetrize = false;
    CHECK_THROWS_AS(load_edge_list(in, opts), ParseError);
}

TEST_CASE("malformed lines carry the line number") {
    std::istringstream in("0 1\nbad line here extra\n");
    try {
        load_edge_list(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("non-positive weights are rejected with the line number") {
    std::istringstream in("0 1 1.5\n1 2 0\n");
    try {
        load_edge_list(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
    }
    std::istringstream neg("0 1 -2\n");
    CHECK_THROWS_AS(load_edge_list(neg), ParseError);
}

TEST_CASE("string vertex ids are interned in first-appearance order") {
    std::istringstream in("alpha beta\nbeta gamma 2.5\n");
    const Graph g = load_edge_list(in);
    CHECK(g.vertex_count() == 3);
    CHECK(g.label(0) == "alpha");
    CHECK(g.label(1) == "beta");
    CHECK(g.label(2) == "gamma");
    CHECK(g.weight(1, 2) == 2.5);
}

TEST_CASE("largest component extraction") {
    // two components: triangle {0,1,2} and edge {3,4}
    std::istringstream in("0 1\n1 2\n0 2\n3 4\n");
    LoadOptions opts;
    opts.keep_largest_component = true;
    const Graph g = load_edge_list(in, opts);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
}

TEST_CASE("round trip: save then load is the identical graph") {
    Rng rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + rng.below(12);
        Graph g = random_graph(rng, n, 0.4, true);
        std::ostringstream out;
        save_edge_list(g, out);
        std::istringstream in(out.str());
        const Graph back = load_edge_list(in);
        CHECK(back == g);
    }
}

TEST_CASE("round trip preserves isolated vertices and labels") {
    Graph g = Graph::from_edges(4, {{0, 2, 1.25}}, Graph::Duplicates::error,
                                {"a", "b", "c", "d"});
    std::ostringstream out;
    save_edge_list(g, out);
    std::istringstream in(out.str());
    const Graph back = load_edge_list(in);
    CHECK(back == g);
    CHECK(back.vertex_count() == 4);
    CHECK(back.degree(1) == 0);
    CHECK(back.label(3) == "d");
}

TEST_CASE("default weights: max endpoint degree") {
    SUBCASE("path a-b-c gives both edges weight 2") {
        const Graph g = assign_default_weights(path_graph(3));
        CHECK(g.weight(0, 1) == 2.0);
        CHECK(g.weight(1, 2) == 2.0);
    }
    SUBCASE("star with 4 leaves gives every edge weight 4") {
        const Graph g = assign_default_weights(star_graph(4));
        for (VertexId v = 1; v <= 4; ++v) CHECK(g.weight(0, v) == 4.0);
    }
    SUBCASE("triangle gives weight 2 everywhere") {
        const Graph g = assign_default_weights(complete_graph(3));
        CHECK(g.weight(0, 1) == 2.0);
        CHECK(g.weight(1, 2) == 2.0);
        CHECK(g.weight(0, 2) == 2.0);
    }
    SUBCASE("idempotent on topology and deterministic") {
        Rng rng(5);
        const Graph g = random_graph(rng, 20, 0.2);
        const Graph w1 = assign_default_weights(g);
        const Graph w2 = assign_default_weights(w1);
        CHECK(w1 == w2);  // degrees unchanged by reweighting
    }
}

TEST_CASE("lambda1 on closed forms") {
    // K_n has lambda1 = n-1; star with k leaves has lambda1 = sqrt(k)
    CHECK(adjacency_lambda1(complete_graph(4)) == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(adjacency_lambda1(star_graph(9)) == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(adjacency_lambda1(path_graph(2)) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("lambda1 respects the spectral lower bounds") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_graph(rng, 3 + rng.below(25), 0.3);
        if (g.edge_count() == 0) continue;
        const double lambda = adjacency_lambda1(g);
        const double avg_degree =
            2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
        std::size_t dmax = 0;
        for (VertexId u = 0; u < g.vertex_count(); ++u) dmax = std::max(dmax, g.degree(u));
        CHECK(lambda >= avg_degree - 1e-6);
        CHECK(lambda >= std::sqrt(static_cast<double>(dmax)) - 1e-6);
    }
}

TEST_CASE("power iteration reports non-convergence with residual") {
    PowerIterOptions opts;
    opts.max_iter = 1;
    try {
        adjacency_lambda1(complete_graph(5), opts);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("diameter: exact and double-sweep") {
    CHECK(exact_diameter(path_graph(4)) == 3);
    CHECK(exact_diameter(complete_graph(5)) == 1);
    CHECK(double_sweep_lower_bound(path_graph(10)) == 9);  // exact on paths

    Rng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        Graph g = random_graph(rng, 4 + rng.below(20), 0.35);
        std::size_t count = 0;
        component_ids(g, count);
        if (count != 1) g = largest_component(g);
        if (g.vertex_count() < 2) continue;
        const std::size_t exact = exact_diameter(g, 2);
        const std::size_t bound = double_sweep_lower_bound(g);
        CHECK(bound <= exact);
        CHECK(bound >= 1);
    }
}

TEST_CASE("graph_stats falls back to the largest component") {
    std::istringstream in("0 1\n1 2\n0 2\n3 4\n");
    const Graph g = load_edge_list(in);
    const GraphStats stats = graph_stats(g);
    CHECK(stats.n == 5);
    CHECK(stats.m == 4);
    CHECK(stats.on_largest_component);
    CHECK(stats.diameter == 1);  // triangle
    CHECK(stats.lambda1 == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(stats.tau == doctest::Approx(0.5).epsilon(1e-7));
}
