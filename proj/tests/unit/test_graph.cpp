#include <doctest.h>

#include <sstream>

#include "../support/oracle.hpp"
#include "tcomm/graph.hpp"
#include "tcomm/io.hpp"

using namespace tcomm;
using Pair = std::pair<NodeId, NodeId>;

TEST_SUITE("graph") {
    TEST_CASE("from_edge_list merges symmetric duplicates") {
        std::vector<Pair> p{{0, 1}, {1, 0}};
        auto g = Graph::from_edge_list(2, p);
        CHECK(g.n() == 2);
        CHECK(g.m() == 1);
        CHECK_THROWS_AS(Graph::from_edge_list(2, p, false, IngestMode::strict), std::invalid_argument);
    }

    TEST_CASE("path degrees") {
        auto g = fixtures::path(3);
        CHECK(g.degree(0) == 1);
        CHECK(g.degree(1) == 2);
        CHECK(g.degree(2) == 1);
    }

    TEST_CASE("ingestion errors and loop handling") {
        std::vector<Pair> bad{{0, 3}};
        CHECK_THROWS_AS(Graph::from_edge_list(3, bad), std::out_of_range);
        std::vector<Pair> loop{{0, 1}, {1, 1}};
        CHECK_THROWS(Graph::from_edge_list(2, loop, false, IngestMode::strict));
        auto dropped = Graph::from_edge_list(2, loop, false, IngestMode::lenient);
        CHECK(dropped.self_loops().empty());
        auto kept = Graph::from_edge_list(2, loop, true);
        CHECK(kept.self_loops().size() == 1);
        CHECK(kept.degree(1) == 1);
        CHECK(kept.row_sum(1) == 2.0);
    }

    TEST_CASE("downdate and update") {
        auto k3 = fixtures::complete(3);
        auto p = downdate_edge(k3, EdgeRef::make(0, 1));
        CHECK(p.m() == 2);
        CHECK(p.degree(2) == 2);
        CHECK(is_connected(p));

        auto p3 = fixtures::path(3);
        auto split = downdate_edge(p3, EdgeRef::make(0, 1));
        CHECK(split.degree(0) == 0);
        CHECK(split.degree(1) == 1);
        CHECK_FALSE(is_connected(split));
        CHECK_THROWS(downdate_edge(p3, EdgeRef::make(0, 2)));

        auto back = update_edge(p3, EdgeRef::make(0, 2));
        CHECK(back == k3);
        CHECK_THROWS(update_edge(k3, EdgeRef::make(0, 1)));
        CHECK_THROWS(EdgeRef::make(1, 1));
    }

    TEST_CASE("Zachary downdates never raise lambda_1") {
        auto g = fixtures::zachary();
        CHECK(g.m() == 78);
        for (const auto& e : g.edges()) {
            auto h = downdate_edge(g, e);
            CHECK(h.m() == 77);
            CHECK(oracle::jacobi_eigen(oracle::adjacency(h)).values[0] <= 6.726);
        }
    }

    TEST_CASE("connectivity queries") {
        CHECK(is_connected(fixtures::path(3)));
        auto two = fixtures::from_pairs(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
        CHECK_FALSE(is_connected(two));
        CHECK_THROWS(is_connected(fixtures::empty(0)));

        auto k3 = fixtures::complete(3);
        for (const auto& e : k3.edges()) CHECK(remains_connected_without(k3, e));
        CHECK_FALSE(remains_connected_without(fixtures::path(3), EdgeRef::make(0, 1)));
        auto s4 = fixtures::star(3);
        for (const auto& e : s4.edges()) CHECK_FALSE(remains_connected_without(s4, e));
        CHECK(find_bridges(s4).size() == 3);
        CHECK(find_bridges(k3).empty());
    }

    TEST_CASE("bridge query agrees with removal then BFS, exhaustively") {
        auto family = fixtures::mixed_family(30, 50, 7);
        family.push_back(fixtures::zachary());
        for (const auto& g : family) {
            auto bridges = find_bridges(g);
            for (const auto& e : g.edges()) {
                bool stays = is_connected(downdate_edge(g, e));
                CHECK(remains_connected_without(g, e) == stays);
                CHECK(std::binary_search(bridges.begin(), bridges.end(), e) == !stays);
            }
        }
    }

    TEST_CASE("round trip and degree-sum invariants") {
        for (const auto& g : fixtures::mixed_family(20, 40, 11)) {
            for (const auto& e : g.edges()) CHECK(update_edge(downdate_edge(g, e), e) == g);
            double sum = 0;
            for (NodeId v = 0; v < g.n(); ++v) sum += g.degree(v);
            CHECK(sum == doctest::Approx(2.0 * static_cast<double>(g.m())));
            std::vector<double> ones(g.n(), 1.0), y(g.n());
            g.matvec(ones, y);
            for (NodeId v = 0; v < g.n(); ++v) CHECK(y[v] == g.row_sum(v));
        }
        std::vector<Pair> p{{0, 1}, {1, 2}, {2, 2}};
        auto looped = Graph::from_edge_list(3, p, true);
        auto mod = update_edge(looped, EdgeRef::make(0, 2));
        double sum = 0;
        for (NodeId v = 0; v < mod.n(); ++v) sum += mod.row_sum(v);
        CHECK(sum == 2.0 * static_cast<double>(mod.m()) + 1.0);
        CHECK(mod.has_loop(2));
    }

    TEST_CASE("largest component") {
        auto p3 = fixtures::path(3);
        auto same = largest_component(p3);
        CHECK(same.graph == p3);
        CHECK(same.original_label == std::vector<NodeId>{0, 1, 2});
        auto with_iso = fixtures::from_pairs(4, {{1, 2}, {2, 3}});
        auto sub = largest_component(with_iso);
        CHECK(sub.graph == p3);
        CHECK(sub.original_label == std::vector<NodeId>{1, 2, 3});
    }

    TEST_CASE("self-loops survive component extraction") {
        std::vector<Pair> p{{0, 1}, {1, 1}, {1, 2}, {3, 4}, {4, 4}};
        auto g = Graph::from_edge_list(5, p, true);
        auto sub = largest_component(g);
        CHECK(sub.graph.n() == 3);
        CHECK(sub.graph.self_loops() == std::vector<NodeId>{1});
    }
}

TEST_SUITE("io") {
    TEST_CASE("Matrix Market round trip") {
        std::istringstream in(
            "%%MatrixMarket matrix coordinate pattern symmetric\n% comment\n3 3 3\n2 1\n3 2\n3 2\n");
        auto g = read_matrix_market(in);
        CHECK(g == fixtures::path(3));
        std::istringstream again(
            "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 3\n2 1\n3 2\n3 2\n");
        CHECK_THROWS(read_matrix_market(again, {false, IngestMode::strict}));

        std::ostringstream out;
        write_matrix_market(out, g, {"hello"});
        CHECK(out.str() == "%%MatrixMarket matrix coordinate pattern symmetric\n% hello\n3 3 2\n2 1\n3 2\n");
        std::istringstream back(out.str());
        CHECK(read_matrix_market(back) == g);
    }

    TEST_CASE("Matrix Market general and real fields") {
        std::istringstream in("%%MatrixMarket matrix coordinate real general\n3 3 4\n1 2 1.0\n2 1 1.0\n2 3 5\n3 2 5\n");
        CHECK(read_matrix_market(in, {false, IngestMode::strict}) == fixtures::path(3));
        std::istringstream bad("%%MatrixMarket matrix array real general\n3 3\n");
        CHECK_THROWS(read_matrix_market(bad));
    }

    TEST_CASE("TSV edges") {
        std::istringstream in("# header\n0\t1\n1\t2 # trailing\n\n");
        CHECK(read_tsv_edges(in) == fixtures::path(3));
        std::istringstream one("1 2\n2 3\n");
        CHECK(read_tsv_edges(one, {false, IngestMode::lenient, true}) == fixtures::path(3));
        std::istringstream bad("0 x\n");
        CHECK_THROWS(read_tsv_edges(bad));
    }

    TEST_CASE("shipped datasets") {
        auto z = fixtures::zachary();
        CHECK(z.n() == 34);
        CHECK(z.m() == 78);
        auto mn = fixtures::dataset("minnesota");
        REQUIRE(mn);
        CHECK(mn->n() == 2640);
        CHECK(mn->m() == 3302);
    }
}
