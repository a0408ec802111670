#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "deepwide/canonical.hpp"
#include "deepwide/game.hpp"
#include "deepwide/graph.hpp"
#include "deepwide/oracle.hpp"
#include "doctest.h"

using namespace deepwide;

TEST_CASE("escape spaces") {
    auto p3 = path_graph(3);
    CHECK(escape(p3, bit(1), 1) == bit(1));  // occupied vertex
    CHECK(escape(p3, bit(1), 0) == bit(0));  // cut off behind the cop
    CHECK(escape(p3, 0, 0) == (bit(0) | bit(1) | bit(2)));

    auto k2l = with_loops(complete_graph(2));
    // edge 0-1 has id for sorted edge list (0,0),(0,1),(1,1)
    int mid = 1;
    CHECK(k2l.edges()[mid] == std::make_pair(0, 1));
    CHECK(escape_edges(k2l, bit(0) | bit(1), mid) == bit(mid));  // both endpoints held
    CHECK(escape_edges(k2l, 0, mid) == (bit(0) | bit(1) | bit(2)));
}

TEST_CASE("path thresholds for two cops") {
    // Robber survives q rounds on the l-path exactly while q <= ceil((l-1)/2)
    for (int l = 2; l <= 9; ++l) {
        auto p = path_graph(l);
        int threshold = (l - 1 + 1) / 2;
        for (int q = 1; q <= threshold + 1; ++q) {
            bool copWins = solve(p, 2, q, Variant::CR).cop_wins;
            CHECK(copWins == (q > threshold));
        }
    }
}

TEST_CASE("trivial and tiny games") {
    CHECK(solve(complete_graph(1), 1, 1, Variant::CR).cop_wins);
    CHECK(solve(complete_graph(2), 2, 2, Variant::CR).cop_wins);
    CHECK(!solve(complete_graph(2), 1, 2, Variant::CR).cop_wins);
    CHECK(solve(complete_graph(3), 3, 3, Variant::CR).cop_wins);
    CHECK(!solve(complete_graph(3), 2, 5, Variant::CR).cop_wins);
    CHECK_THROWS(solve(complete_graph(1), 0, 1, Variant::CR));
}

TEST_CASE("solver strategies verify") {
    std::mt19937 rng(3);
    for (int round = 0; round < 25; ++round) {
        int n = 2 + (int)(rng() % 5);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) edges.emplace_back(i, j);
        LabelledGraph g(n, std::move(edges));
        for (int k = 1; k <= 3; ++k)
            for (int q = 1; q <= 4; ++q) {
                for (Variant v : {Variant::CR, Variant::MonCR}) {
                    auto res = solve(g, k, q, v);
                    if (res.cop_wins) {
                        auto check = verify_strategy(g, *res.strategy, k, q, v);
                        CHECK(check.ok);
                        if (!check.ok) {
                            for (auto& line : check.losing_line) MESSAGE(line);
                        }
                    }
                }
                auto gl = with_loops(g);
                auto res = solve(gl, k, q, Variant::ECR);
                if (res.cop_wins)
                    CHECK(verify_strategy(gl, *res.strategy, k, q, Variant::ECR).ok);
            }
    }
}

TEST_CASE("monotone matches non-monotone on small graphs") {
    for (int n = 1; n <= 5; ++n)
        for (auto& g : all_graphs(n))
            for (int k = 1; k <= 3; ++k)
                for (int q = 1; q <= 4; ++q)
                    CHECK(solve(g, k, q, Variant::CR).cop_wins ==
                          solve(g, k, q, Variant::MonCR).cop_wins);
}

TEST_CASE("vertex and edge game agree") {
    // on a graph with at least one edge both games have the same winner,
    // and the looped board removes the edgeless discrepancy
    for (int n = 2; n <= 5; ++n)
        for (auto& g : all_graphs(n)) {
            for (int k = 1; k <= 3; ++k)
                for (int q = 1; q <= 3; ++q) {
                    if (g.num_edges() > 0)
                        CHECK(solve(g, k, q, Variant::CR).cop_wins ==
                              solve(g, k, q, Variant::ECR).cop_wins);
                    CHECK(solve(g, k, q, Variant::CR).cop_wins ==
                          solve(with_loops(g), k, q, Variant::ECR).cop_wins);
                    CHECK(solve(g, k, q, Variant::MonCR).cop_wins ==
                          solve(with_loops(g), k, q, Variant::MonECR).cop_wins);
                }
        }
}

TEST_CASE("round and cop monotonicity") {
    std::mt19937 rng(17);
    for (int round = 0; round < 20; ++round) {
        int n = 2 + (int)(rng() % 5);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) edges.emplace_back(i, j);
        LabelledGraph g(n, std::move(edges));
        for (int k = 1; k <= 2; ++k)
            for (int q = 1; q <= 3; ++q)
                if (solve(g, k, q, Variant::CR).cop_wins) {
                    CHECK(solve(g, k, q + 1, Variant::CR).cop_wins);
                    CHECK(solve(g, k + 1, q, Variant::CR).cop_wins);
                }
    }
}

TEST_CASE("robber certificate answers reachable moves") {
    auto p7 = path_graph(7);
    auto res = solve(p7, 2, 3, Variant::CR);
    REQUIRE(!res.cop_wins);
    auto& cert = *res.certificate;
    // initial position, cop places in the middle
    std::uint64_t all = bit(7) - 1;
    auto reply = cert.respond(0, all, bit(3), 3);
    REQUIRE(reply);
    CHECK((*reply & bit(3)) == 0);
    // the robber reply must itself survive: no winning cop continuation
    CHECK(!solve(p7, 2, 3, Variant::CR).cop_wins);
}

TEST_CASE("grid lower bound instances") {
    // 3 cops on the 2x7 grid lose the 3-round game
    CHECK(!solve(grid(2, 7), 3, 3, Variant::CR).cop_wins);
}

TEST_CASE("brute-force decomposition oracle basics") {
    CHECK(treedepth_oracle(path_graph(7)) == 3);
    CHECK(treedepth_oracle(path_graph(8)) == 4);
    CHECK(treedepth_oracle(complete_graph(4)) == 4);
    CHECK(treewidth_oracle(path_graph(5)) == 1);
    CHECK(treewidth_oracle(cycle_graph(5)) == 2);
    CHECK(treewidth_oracle(complete_graph(4)) == 3);
    CHECK(treewidth_oracle(grid(2, 5)) == 2);
    CHECK(exists_decomposition(path_graph(7), 2, 4));
    CHECK(!exists_decomposition(path_graph(7), 2, 3));
    // treewidth of a graph is at most its treedepth minus one
    for (int n = 1; n <= 6; ++n)
        for (auto& g : all_graphs(n)) CHECK(treewidth_oracle(g) <= treedepth_oracle(g) - 1);
}

TEST_CASE("game membership equals decomposition existence") {
    for (int n = 1; n <= 5; ++n)
        for (auto& g : all_graphs(n))
            for (int k = 1; k <= 3; ++k)
                for (int q = 1; q <= 4; ++q)
                    CHECK(solve(g, k, q, Variant::CR).cop_wins == exists_decomposition(g, k, q));
    // seven-vertex graphs with four cops and rounds
    for (auto& g : all_graphs(7))
        for (int k = 1; k <= 4; ++k)
            for (int q = 1; q <= 4; ++q)
                CHECK(solve(g, k, q, Variant::CR).cop_wins == exists_decomposition(g, k, q));
}

TEST_CASE("grid strategy plays out within the round bound") {
    auto sigma = grid_cop_strategy(4, 9);
    int bound = (9 * 4) / 4 + 4 + 1;
    auto check = verify_strategy(grid(4, 9), sigma, 5, bound, Variant::CR);
    CHECK(check.ok);
    if (!check.ok) {
        MESSAGE(check.error);
        for (auto& line : check.losing_line) MESSAGE(line);
    }
    CHECK(check.max_rounds_used <= bound);
    // (4,8) still meets 3 < h < l-3 and plays out within its bound
    auto sigma48 = grid_cop_strategy(4, 8);
    CHECK(verify_strategy(grid(4, 8), sigma48, 5, 8 + 5, Variant::CR).ok);
    CHECK_THROWS(grid_cop_strategy(4, 7));  // parameter range violated
}
