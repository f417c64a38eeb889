#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "gridrec/graph.hpp"
#include "oracles.hpp"

using namespace gridrec;

namespace {

bool symmetric(const GridNetwork& net) {
    for (const auto& [u, nbrs] : net.adjacency()) {
        for (NodeId v : nbrs) {
            if (!net.has_edge(v, u)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("figure2 network matches the worked example") {
    GridNetwork net = figure2_network();
    CHECK(net.node_count() == 6);
    CHECK(net.edge_count() == 6);
    for (NodeId id = 1; id <= 6; ++id) {
        CHECK(net.degree(id) == 2);
    }
    CHECK(net.neighbors(2) == std::set<NodeId>{1, 3});
    CHECK(net.neighbors(5) == std::set<NodeId>{4, 6});
    CHECK(is_connected(net));

    auto levels = oracle::bfs_levels(net, 2);
    CHECK(levels == std::map<NodeId, std::uint32_t>{
                        {1, 1}, {3, 1}, {4, 2}, {6, 2}, {5, 3}});
}

TEST_CASE("add_node and remove_node") {
    GridNetwork net = figure2_network();
    net.add_node(7);
    CHECK(net.degree(7) == 0);
    CHECK_THROWS_AS(net.add_node(7), DuplicateNodeError);

    GridNetwork original = figure2_network();
    net.remove_node(7);
    CHECK(net == original);

    net.remove_node(5);
    CHECK_FALSE(net.has_edge(4, 5));
    CHECK_FALSE(net.has_edge(5, 6));
    CHECK(net.edge_count() == 4);
    CHECK(symmetric(net));
    CHECK_THROWS_AS(net.remove_node(5), UnknownNodeError);
}

TEST_CASE("add_edge and remove_edge") {
    GridNetwork net = figure2_network();
    net.add_edge(1, 3);
    CHECK(net.degree(1) == 3);
    CHECK(net.has_edge(3, 1));
    CHECK_THROWS_AS(net.add_edge(1, 3), DuplicateEdgeError);
    CHECK_THROWS_AS(net.add_edge(1, 1), SelfLoopError);
    CHECK_THROWS_AS(net.add_edge(1, 99), UnknownNodeError);
    net.remove_edge(1, 3);
    CHECK(net == figure2_network());
    CHECK_THROWS_AS(net.remove_edge(1, 3), UnknownEdgeError);
}

TEST_CASE("neighbors of an isolated node is empty") {
    GridNetwork net;
    net.add_node(1);
    CHECK(net.neighbors(1).empty());
    CHECK_THROWS_AS(net.neighbors(2), UnknownNodeError);
}

TEST_CASE("random_connected: size, edge count, connectivity, determinism") {
    GridNetwork single = random_connected(1, 0.0, 3);
    CHECK(single.node_count() == 1);
    CHECK(single.edge_count() == 0);

    GridNetwork net = random_connected(100, 0.5, 42);
    CHECK(net.node_count() == 100);
    CHECK(net.edge_count() == 99 + 50);
    CHECK(is_connected(net));
    CHECK(symmetric(net));

    CHECK(net == random_connected(100, 0.5, 42));
    CHECK(net != random_connected(100, 0.5, 43));
}

TEST_CASE("random_connected output is connected across many parameters") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng() % 150;
        double fraction = static_cast<double>(rng() % 100) / 50.0;
        GridNetwork net = random_connected(n, fraction, rng());
        CHECK(is_connected(net));
        CHECK(symmetric(net));
    }
}

TEST_CASE("edge list parsing") {
    GridNetwork net = load_edgelist("1 2\n2 3");
    CHECK(net.node_count() == 3);
    CHECK(net.edge_count() == 2);

    CHECK(load_edgelist("# comment\n\n 1 2 # trailing\n").edge_count() == 1);

    CHECK_THROWS_AS(load_edgelist("1 1"), EdgeListParseError);
    CHECK_THROWS_AS(load_edgelist("1\n"), EdgeListParseError);
    CHECK_THROWS_AS(load_edgelist("1 2 3\n"), EdgeListParseError);
    CHECK_THROWS_AS(load_edgelist("1 2\n2 1\n"), EdgeListParseError);
    try {
        load_edgelist("1 2\n3 3\n");
        FAIL("expected parse error");
    } catch (const EdgeListParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("save emits sorted lines and round-trips") {
    CHECK(save_edgelist(figure2_network()) ==
          "1 2\n1 4\n2 3\n3 6\n4 5\n5 6\n");

    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng() % 499;
        GridNetwork net = random_connected(n, 0.3, rng());
        CHECK(load_edgelist(save_edgelist(net)) == net);
    }
}

TEST_CASE("symmetry survives random mutation sequences") {
    std::mt19937_64 rng(9);
    GridNetwork net = random_connected(40, 0.4, 17);
    for (int step = 0; step < 300; ++step) {
        NodeId u = 1 + rng() % 40;
        NodeId v = 1 + rng() % 40;
        if (!net.has_node(u) || !net.has_node(v) || u == v) {
            continue;
        }
        if (net.has_edge(u, v)) {
            net.remove_edge(u, v);
        } else {
            net.add_edge(u, v);
        }
        CHECK(symmetric(net));
    }
}
