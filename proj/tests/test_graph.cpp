#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "nr2/errors.hpp"
#include "nr2/graph.hpp"
#include "nr2/graph_io.hpp"
#include "nr2/planted_partition.hpp"
#include "support/oracles.hpp"
#include "support/run_cli.hpp"

using namespace nr2;

TEST_CASE("graph nodes and edges") {
    Graph g;
    CHECK(g.size() == 0);
    CHECK(g.add_node("a") == 0);
    CHECK(g.add_node("b") == 1);
    CHECK(g.index_of("a") == 0);
    CHECK(g.index_of("missing") == -1);
    CHECK_THROWS_AS(g.add_node("a"), ValidationError);

    g.add_edge(0, 1, 2.0);
    CHECK(g.weight(0, 1) == 2.0);
    CHECK(g.weight(1, 0) == 0.0);
    g.add_edge(0, 1, 0.5); // accumulates
    CHECK(g.weight(0, 1) == 2.5);
    CHECK_THROWS_AS(g.add_edge(0, 1, -1.0), ValidationError);

    g.add_undirected_edge(0, 1, 1.0);
    CHECK(g.weight(0, 1) == 3.5);
    CHECK(g.weight(1, 0) == 1.0);

    g.add_undirected_edge(1, 1, 4.0); // self edge added once
    CHECK(g.weight(1, 1) == 4.0);
}

TEST_CASE("graph attributes") {
    Graph g(3);
    g.add_attribute(0, "cluster", "0");
    g.add_attribute(1, "cluster", "1");
    g.add_attribute(1, "movie", "m2");
    g.add_attribute(1, "movie", "m3");

    CHECK(g.has_attribute("cluster"));
    CHECK(g.has_attribute("movie"));
    CHECK_FALSE(g.has_attribute("country"));
    CHECK(g.attribute_names() == std::vector<std::string>{"cluster", "movie"});

    const auto* movies = g.attribute_values(1, "movie");
    REQUIRE(movies != nullptr);
    CHECK(*movies == std::set<std::string>{"m2", "m3"});
    CHECK(g.attribute_values(2, "movie") == nullptr);
}

TEST_CASE("row normalization") {
    SUBCASE("divides each row by its out-weight") {
        Graph g(2);
        g.add_edge(0, 0, 1.0);
        g.add_edge(0, 1, 1.0);
        g.add_edge(1, 1, 2.0);
        TransitionMatrix w = row_normalize(g);
        CHECK(w.entry(0, 0) == doctest::Approx(0.5));
        CHECK(w.entry(0, 1) == doctest::Approx(0.5));
        CHECK(w.entry(1, 0) == 0.0);
        CHECK(w.entry(1, 1) == doctest::Approx(1.0));
    }
    SUBCASE("dangling row becomes the unit vector on its own index") {
        Graph g(2);
        g.add_edge(0, 1, 3.0);
        TransitionMatrix w = row_normalize(g);
        CHECK(w.entry(1, 1) == 1.0);
        CHECK(w.entry(1, 0) == 0.0);
    }
    SUBCASE("symmetric 3-cycle with self edges is uniform") {
        Graph g(3);
        for (int i = 0; i < 3; ++i) {
            g.add_edge(i, i, 1.0);
            g.add_undirected_edge(i, (i + 1) % 3, 1.0);
        }
        TransitionMatrix w = row_normalize(g);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                CHECK(w.entry(i, j) == doctest::Approx(1.0 / 3.0));
            }
        }
    }
    SUBCASE("rows sum to 1 on a random graph") {
        Graph g = oracles::random_graph(40, 6.0, 123);
        TransitionMatrix w = row_normalize(g);
        for (double s : w.row_sums()) {
            CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("absorbing augmentation") {
    Graph g(2);
    g.add_undirected_edge(0, 1, 1.0);
    const std::size_t edges_before = g.edge_count();

    Graph aug = augment_absorbing(g);
    CHECK(aug.size() == 3);
    REQUIRE(aug.absorbing().has_value());
    CHECK(*aug.absorbing() == 2);
    CHECK(aug.weight(2, 2) == 1.0);
    CHECK(aug.weight(0, 1) == 1.0); // originals preserved
    CHECK(aug.weight(1, 0) == 1.0);
    CHECK(aug.weight(0, 2) == 0.0);
    CHECK(aug.weight(2, 0) == 0.0);
    CHECK(aug.edge_count() == edges_before + 1);

    // the absorbing row normalizes to the unit vector at d
    TransitionMatrix w = row_normalize(aug);
    CHECK(w.entry(2, 2) == 1.0);
    CHECK(w.entry(2, 0) == 0.0);
    CHECK(w.entry(2, 1) == 0.0);

    CHECK_THROWS_AS(augment_absorbing(aug), ValidationError);
}

TEST_CASE("induced subgraph") {
    Graph g(4);
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            g.add_undirected_edge(i, j, 1.0);
        }
    }
    g.add_edge(0, 0, 1.0);

    SUBCASE("pair of a triangle keeps the single edge") {
        Graph sub = induced_subgraph(g, {0, 1});
        CHECK(sub.size() == 2);
        CHECK(sub.weight(0, 1) == 1.0);
        CHECK(sub.weight(1, 0) == 1.0);
        CHECK(sub.edge_count() == 3); // both directions plus 0's self edge
    }
    SUBCASE("all nodes reproduce the graph") {
        Graph sub = induced_subgraph(g, {0, 1, 2, 3});
        CHECK(sub.size() == g.size());
        CHECK(sub.edge_count() == g.edge_count());
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                CHECK(sub.weight(i, j) == g.weight(i, j));
            }
        }
    }
    SUBCASE("single node keeps its self edge") {
        Graph sub = induced_subgraph(g, {0});
        CHECK(sub.size() == 1);
        CHECK(sub.weight(0, 0) == 1.0);
    }
    SUBCASE("unknown node is rejected") {
        CHECK_THROWS_AS(induced_subgraph(g, {0, 9}), ValidationError);
    }
}

TEST_CASE("edge list loading") {
    const auto dir = cli::scratch_dir();

    SUBCASE("single undirected line") {
        const auto path = cli::fresh_path("edges");
        cli::write_file(path, "a\tb\t2.0\n");
        Graph g = load_edge_list(path.string());
        CHECK(g.size() == 2);
        CHECK(g.weight(0, 1) == 2.0);
        CHECK(g.weight(1, 0) == 2.0);
    }
    SUBCASE("empty file gives the empty graph") {
        const auto path = cli::fresh_path("edges");
        cli::write_file(path, "");
        CHECK(load_edge_list(path.string()).size() == 0);
    }
    SUBCASE("negative weight is rejected") {
        const auto path = cli::fresh_path("edges");
        cli::write_file(path, "a\tb\t-1\n");
        CHECK_THROWS_AS(load_edge_list(path.string()), ValidationError);
    }
    SUBCASE("malformed line reports its number") {
        const auto path = cli::fresh_path("edges");
        cli::write_file(path, "a\tb\t1\nbroken line\n");
        try {
            load_edge_list(path.string());
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(":2") != std::string::npos);
        }
    }
    SUBCASE("comments and blank lines are skipped, repeats accumulate") {
        const auto path = cli::fresh_path("edges");
        cli::write_file(path, "# header\n\na\tb\t1\na\tb\t2\n");
        Graph g = load_edge_list(path.string());
        CHECK(g.weight(0, 1) == 3.0);
    }
    SUBCASE("directed mode keeps one direction") {
        const auto path = cli::fresh_path("edges");
        cli::write_file(path, "a\tb\t1\n");
        Graph g = load_edge_list(path.string(), std::nullopt, true);
        CHECK(g.weight(0, 1) == 1.0);
        CHECK(g.weight(1, 0) == 0.0);
    }
    SUBCASE("attribute file loads and validates") {
        const auto epath = cli::fresh_path("edges");
        const auto apath = cli::fresh_path("attrs");
        cli::write_file(epath, "a\tb\t1\n");
        cli::write_file(apath, "a\tcluster\t0\nb\tcluster\t1\n");
        Graph g = load_edge_list(epath.string(), apath.string());
        CHECK(g.has_attribute("cluster"));
        CHECK(*g.attribute_values(0, "cluster") == std::set<std::string>{"0"});

        cli::write_file(apath, "ghost\tcluster\t0\n");
        CHECK_THROWS_AS(load_edge_list(epath.string(), apath.string()), ValidationError);
    }
    SUBCASE("missing file is an io error") {
        CHECK_THROWS_AS(load_edge_list((dir / "nope.tsv").string()), IoError);
    }
}

TEST_CASE("prior loading") {
    const auto epath = cli::fresh_path("edges");
    cli::write_file(epath, "a\tb\t1\n");
    Graph g = load_edge_list(epath.string());

    const auto ppath = cli::fresh_path("prior");
    cli::write_file(ppath, "a\t3\nb\t1\n");
    std::vector<double> r = load_prior(g, ppath.string());
    CHECK(r[0] == doctest::Approx(0.75));
    CHECK(r[1] == doctest::Approx(0.25));

    cli::write_file(ppath, "a\t-1\n");
    CHECK_THROWS_AS(load_prior(g, ppath.string()), ValidationError);
    cli::write_file(ppath, "ghost\t1\n");
    CHECK_THROWS_AS(load_prior(g, ppath.string()), ValidationError);
    cli::write_file(ppath, "a\t0\nb\t0\n");
    CHECK_THROWS_AS(load_prior(g, ppath.string()), ValidationError);
}

TEST_CASE("edge list round trip") {
    Graph g = oracles::random_graph(15, 4.0, 77);
    const auto epath = cli::fresh_path("edges");
    const auto apath = cli::fresh_path("attrs");
    write_edge_list(g, epath.string());
    write_attributes(g, apath.string());

    // Reloading assigns indices by first appearance in the file, so compare
    // through the node ids rather than raw indices.
    Graph back = load_edge_list(epath.string(), apath.string());
    REQUIRE(back.size() == g.size());
    for (int i = 0; i < g.size(); ++i) {
        const int bi = back.index_of(g.node_id(i));
        REQUIRE(bi >= 0);
        for (int j = 0; j < g.size(); ++j) {
            const int bj = back.index_of(g.node_id(j));
            CHECK(back.weight(bi, bj) == doctest::Approx(g.weight(i, j)).epsilon(1e-12));
        }
        const auto* mine = g.attribute_values(i, "group");
        const auto* theirs = back.attribute_values(bi, "group");
        REQUIRE(mine != nullptr);
        REQUIRE(theirs != nullptr);
        CHECK(*mine == *theirs);
    }
}

namespace {

// Connected components by label propagation over positive edges.
int component_count(const Graph& g) {
    std::vector<int> label(g.size());
    for (int i = 0; i < g.size(); ++i) {
        label[i] = i;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < g.size(); ++u) {
            for (const auto& [v, w] : g.neighbors(u)) {
                if (w > 0.0 && label[v] > label[u]) {
                    label[v] = label[u];
                    changed = true;
                } else if (w > 0.0 && label[u] > label[v]) {
                    label[u] = label[v];
                    changed = true;
                }
            }
        }
    }
    std::set<int> distinct(label.begin(), label.end());
    return static_cast<int>(distinct.size());
}

long long intra_cluster_pairs(const Graph& g, int size) {
    long long count = 0;
    for (int u = 0; u < g.size(); ++u) {
        for (const auto& [v, w] : g.neighbors(u)) {
            if (u < v && w > 0.0 && u / size == v / size) {
                ++count;
            }
        }
    }
    return count;
}

} // namespace

TEST_CASE("planted partition generation") {
    SUBCASE("same spec and seed produce identical graphs") {
        PlantedPartitionSpec spec{3, 10, 0.5, 0.05, 42};
        Graph a = generate_planted_partition(spec);
        Graph b = generate_planted_partition(spec);
        REQUIRE(a.size() == b.size());
        CHECK(a.edge_count() == b.edge_count());
        for (int i = 0; i < a.size(); ++i) {
            CHECK(a.neighbors(i) == b.neighbors(i));
        }
    }
    SUBCASE("degenerate probabilities give disjoint cliques") {
        Graph g = generate_planted_partition({2, 3, 1.0, 0.0, 1});
        CHECK(g.size() == 6);
        CHECK(component_count(g) == 2);
        for (int i = 0; i < 6; ++i) {
            CHECK(g.weight(i, i) == 1.0);
            for (int j = 0; j < 6; ++j) {
                if (i == j) {
                    continue;
                }
                const bool same = (i / 3) == (j / 3);
                CHECK(g.weight(i, j) == (same ? 1.0 : 0.0));
            }
        }
    }
    SUBCASE("cluster attribute labels every node") {
        Graph g = generate_planted_partition({2, 4, 1.0, 0.0, 5});
        REQUIRE(g.has_attribute("cluster"));
        for (int i = 0; i < g.size(); ++i) {
            const auto* vals = g.attribute_values(i, "cluster");
            REQUIRE(vals != nullptr);
            CHECK(*vals == std::set<std::string>{std::to_string(i / 4)});
        }
    }
    SUBCASE("intra-edge count stays near its expectation") {
        // 5 clusters of 20, p_in 0.3: mean 285, sd ~14.1; allow 4 sd.
        Graph g = generate_planted_partition({5, 20, 0.3, 0.01, 7});
        const long long intra = intra_cluster_pairs(g, 20);
        CHECK(intra >= 229);
        CHECK(intra <= 341);
    }
    SUBCASE("zero p_out separates the clusters") {
        Graph g = generate_planted_partition({4, 6, 0.9, 0.0, 9});
        CHECK(component_count(g) == 4);
    }
}
