#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "rtprof/graph.hpp"
#include "rtprof/graph_io.hpp"

using namespace rtprof;

TEST_CASE("graph construction validates input") {
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), validation_error);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}, {1, 0}}), validation_error);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), validation_error);

    Graph g = Graph::from_edges(3, {{2, 0}, {0, 1}});
    CHECK(g.num_edges() == 2);
    CHECK(g.edge(0) == Edge{0, 1});  // canonical order
    CHECK(g.edge(1) == Edge{0, 2});
    CHECK(g.max_degree() == 2);
    CHECK(g.degree(0) == 2);
    CHECK(g.find_edge(1, 0) == 0);
    CHECK(g.find_edge(1, 2) == -1);
}

TEST_CASE("induced subgraph") {
    Graph k3 = complete_graph(3);
    SUBCASE("identity") {
        std::vector<VertexId> all{0, 1, 2};
        auto sub = induced_subgraph(k3, all);
        CHECK(sub.graph == k3);
        CHECK(sub.to_original == all);
    }
    SUBCASE("pair from K_3 gives a single edge") {
        std::vector<VertexId> s{0, 1};
        auto sub = induced_subgraph(k3, s);
        CHECK(sub.graph.num_vertices() == 2);
        CHECK(sub.graph.num_edges() == 1);
    }
    SUBCASE("C_4 restricted to three vertices is a 2-edge path") {
        Graph c4 = cycle_graph(4);
        std::vector<VertexId> s{0, 1, 2};
        auto sub = induced_subgraph(c4, s);
        CHECK(sub.graph.num_vertices() == 3);
        CHECK(sub.graph.num_edges() == 2);
        CHECK(sub.graph.is_connected());
    }
    SUBCASE("out of range rejected") {
        std::vector<VertexId> s{0, 7};
        CHECK_THROWS_AS(induced_subgraph(k3, s), validation_error);
    }
}

TEST_CASE("components after removal") {
    Graph p5 = path_graph(5);
    std::vector<VertexId> mid{2};
    CHECK(components_after_removal(p5, mid) ==
          std::vector<std::size_t>{2, 2});

    Graph k4 = complete_graph(4);
    CHECK(components_after_removal(k4, {}) == std::vector<std::size_t>{4});

    Graph star = star_graph(4);
    std::vector<VertexId> center{0};
    CHECK(components_after_removal(star, center) ==
          std::vector<std::size_t>{1, 1, 1, 1});

    std::vector<VertexId> all{0, 1, 2, 3, 4};
    CHECK(components_after_removal(p5, all).empty());
}

TEST_CASE("component sizes always sum to n - |s|") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = testing::random_graph(3 + rng() % 14, 0.3, rng());
        std::vector<VertexId> s;
        for (VertexId v = 0; v < g.num_vertices(); ++v)
            if (rng() % 3 == 0) s.push_back(v);
        auto sizes = components_after_removal(g, s);
        std::size_t total = 0;
        for (auto size : sizes) total += size;
        CHECK(total == g.num_vertices() - s.size());
        CHECK(std::is_sorted(sizes.rbegin(), sizes.rend()));
    }
}

TEST_CASE("lp norms") {
    std::vector<double> v{3.0, 4.0};
    CHECK(lp_norm(v, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
    std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
    CHECK(lp_norm(ones, 3.0) ==
          doctest::Approx(std::pow(4.0, 1.0 / 3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(lp_norm(v, 0.5), validation_error);

    Graph p2 = path_graph(2);
    CHECK(gradient_norm(p2, {1.0, -1.0}, 1.0) == doctest::Approx(2.0));
    for (double p : {1.0, 1.7, 2.0, 4.0})
        CHECK(gradient_norm(path_graph(4), {3.0, 3.0, 3.0, 3.0}, p) == 0.0);
    CHECK_THROWS_AS(gradient_norm(p2, {1.0}, 1.0), validation_error);
}

TEST_CASE("norm inequalities") {
    std::vector<double> ones{1.0, 1.0};
    auto check = check_norm_inequalities(ones, 1.0, 2.0);
    CHECK(check.holds);
    CHECK(check.right_slack == doctest::Approx(0.0).epsilon(1e-12));

    std::vector<double> unit{1.0, 0.0};
    check = check_norm_inequalities(unit, 1.0, 2.0);
    CHECK(check.holds);
    CHECK(check.left_slack == doctest::Approx(0.0));

    CHECK_THROWS_AS(check_norm_inequalities(ones, 2.0, 1.0), validation_error);
    CHECK_THROWS_AS(check_norm_inequalities({}, 1.0, 2.0), validation_error);
}

TEST_CASE("norm inequalities hold on random vectors") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_real_distribution<double> expo(-3.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> v(1 + rng() % 48);
        for (double& x : v) x = unif(rng) * std::pow(10.0, expo(rng));
        const double p = 1.0 + 4.0 * std::abs(unif(rng));
        const double q = p + 4.0 * std::abs(unif(rng));
        CHECK(check_norm_inequalities(v, p, q).holds);
    }
}

TEST_CASE("graph JSON round trip is canonical") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        GraphRecord record;
        record.graph = testing::random_graph(2 + rng() % 12, 0.4, rng());
        if (trial % 2 == 0)
            for (VertexId v = 0; v < record.graph.num_vertices(); v += 2)
                record.labels[v] = "label-" + std::to_string(v);
        const std::string text = graph_to_json(record);
        GraphRecord parsed = graph_from_json(text);
        CHECK(parsed.graph == record.graph);
        CHECK(parsed.labels == record.labels);
        CHECK(graph_to_json(parsed) == text);
    }
    CHECK_THROWS_AS(graph_from_json("{\"edges\": []}"), validation_error);
    CHECK_THROWS_AS(graph_from_json("not json"), validation_error);
}

TEST_CASE("DOT export") {
    GraphRecord record;
    record.graph = path_graph(3);
    record.labels[0] = "a";
    record.edge_kinds = {"horizontal", "vertical"};
    const std::string dot = graph_to_dot(record);
    CHECK(dot.find("graph g {") == 0);
    CHECK(dot.find("0 [label=\"a\"]") != std::string::npos);
    CHECK(dot.find("0 -- 1 [kind=\"horizontal\"]") != std::string::npos);
    CHECK(dot.find("1 -- 2 [kind=\"vertical\"]") != std::string::npos);
}
