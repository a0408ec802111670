#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "deepwide/canonical.hpp"
#include "deepwide/decomp.hpp"
#include "deepwide/game.hpp"
#include "deepwide/graph.hpp"
#include "deepwide/oracle.hpp"
#include "doctest.h"

using namespace deepwide;

namespace {

std::uint64_t bag(std::initializer_list<int> vs) {
    std::uint64_t m = 0;
    for (int v : vs) m |= bit(v);
    return m;
}

// The path-shaped decomposition of the 2x5 grid rooted at the middle rung.
// Vertex (i,j) has id (i-1)*5 + (j-1).
TreeDecomposition grid25_decomposition() {
    TreeDecomposition td;
    td.bags = {
        bag({2, 7}),     // 0: middle rung
        bag({2, 7, 6}),  // 1
        bag({2, 1, 6}),  // 2
        bag({1, 6, 5}),  // 3
        bag({1, 0, 5}),  // 4
        bag({2, 7, 8}),  // 5
        bag({2, 3, 8}),  // 6
        bag({3, 8, 9}),  // 7
        bag({3, 4, 9}),  // 8
    };
    td.tree.parent = {-1, 0, 1, 2, 3, 0, 5, 6, 7};
    td.tree.root = 0;
    return td;
}

// The depth-6 forest cover of the 2x7 grid: middle column on top, then the
// middle columns of both halves, then the remaining columns as short
// chains. Vertex (i,j) has id (i-1)*7 + (j-1).
std::vector<int> grid27_forest_parent() {
    std::vector<int> parent(14, -2);
    parent[3] = -1;  // (1,4) root
    parent[10] = 3;  // (2,4)
    parent[1] = 10;  // (1,2)
    parent[5] = 10;  // (1,6)
    parent[8] = 1;   // (2,2)
    parent[12] = 5;  // (2,6)
    parent[0] = 8;   // (1,1)
    parent[2] = 8;   // (1,3)
    parent[4] = 12;  // (1,5)
    parent[6] = 12;  // (1,7)
    parent[7] = 0;   // (2,1)
    parent[9] = 2;   // (2,3)
    parent[11] = 4;  // (2,5)
    parent[13] = 6;  // (2,7)
    return parent;
}

// backtracking pebble assignment for a fixed forest
bool assign_pebbles(const LabelledGraph& g, const std::vector<int>& parent, int k,
                    std::vector<int>& pebble, size_t idx, const std::vector<int>& order) {
    if (idx == order.size()) return true;
    int v = order[idx];
    auto anc = [&](int x, int y) {
        for (int t = y; t >= 0; t = parent[t])
            if (t == x) return true;
        return false;
    };
    for (int c = 1; c <= k; ++c) {
        pebble[v] = c;
        bool ok = true;
        for (auto& [a, b] : g.edges()) {
            if (!ok) break;
            if (a == b) continue;
            int lo, hi;
            if (anc(a, b)) lo = a, hi = b;
            else if (anc(b, a)) lo = b, hi = a;
            else { ok = false; break; }
            if (pebble[lo] == 0) continue;
            for (int w = hi; w != lo && ok; w = parent[w])
                if (pebble[w] != 0 && pebble[w] == pebble[lo]) ok = false;
        }
        if (ok && assign_pebbles(g, parent, k, pebble, idx + 1, order)) return true;
    }
    pebble[v] = 0;
    return false;
}

}  // namespace

TEST_CASE("tree-decomposition validation and measures") {
    auto g = grid(2, 5);
    auto td = grid25_decomposition();
    auto check = validate_td(g, td);
    CHECK(check.ok);
    CHECK(td_width(td) == 2);      // bags of three vertices
    CHECK(td_depth(td) == 6);      // rooted at the middle rung
    CHECK(td_depth(td, -1) == 6);  // and that rooting is optimal

    // single bag of K_n: width n-1, depth n
    for (int n = 1; n <= 5; ++n) {
        TreeDecomposition one;
        one.bags = {bit(n) - 1};
        one.tree.parent = {-1};
        one.tree.root = 0;
        CHECK(validate_td(complete_graph(n), one).ok);
        CHECK(td_width(one) == n - 1);
        CHECK(td_depth(one) == n);
    }

    // path decomposition of P_3: bags {a,b},{b,c} rooted at the first bag
    TreeDecomposition p3;
    p3.bags = {bag({0, 1}), bag({1, 2})};
    p3.tree.parent = {-1, 0};
    p3.tree.root = 0;
    CHECK(validate_td(path_graph(3), p3).ok);
    CHECK(td_depth(p3, 0) == 3);

    // violations are reported with the failed axiom
    TreeDecomposition broken = td;
    for (auto& b : broken.bags) b &= ~bit(9);
    auto v1 = validate_td(g, broken);
    CHECK(!v1.ok);
    CHECK(v1.error.find("TD.1") != std::string::npos);
    TreeDecomposition split;
    split.bags = {bag({0, 1}), bag({1, 2}), bag({0})};
    split.tree.parent = {-1, 0, 1};
    split.tree.root = 0;
    auto v2 = validate_td(path_graph(3), split);
    CHECK(!v2.ok);
    CHECK(v2.error.find("TD.2") != std::string::npos);
}

TEST_CASE("pebble forest covers") {
    // alternating two pebbles along a path: valid cover of depth n
    for (int n = 2; n <= 6; ++n) {
        auto p = path_graph(n);
        PebbleForestCover pfc;
        pfc.parent.resize(n);
        pfc.pebble.resize(n);
        for (int v = 0; v < n; ++v) {
            pfc.parent[v] = v == 0 ? -1 : v - 1;
            pfc.pebble[v] = v % 2 + 1;
        }
        CHECK(validate_pfc(p, pfc, 2).ok);
        CHECK(pfc_depth(pfc) == n);
        PebbleForestCover mono = pfc;
        for (auto& c : mono.pebble) c = 1;
        CHECK(!validate_pfc(p, mono, 1).ok);
    }
    PebbleForestCover none;
    CHECK(validate_pfc(LabelledGraph(0), none, 1).ok);
    CHECK(pfc_depth(none) == 0);
}

TEST_CASE("the drawn forest cover of the 2x7 grid") {
    auto g = grid(2, 7);
    auto parent = grid27_forest_parent();
    std::vector<int> order;
    {
        std::vector<int> depth(14, 0);
        for (int v = 0; v < 14; ++v) {
            int d = 0;
            for (int x = v; x >= 0; x = parent[x]) ++d;
            depth[v] = d;
            order.push_back(v);
        }
        std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] < depth[b]; });
        CHECK(*std::max_element(depth.begin(), depth.end()) == 6);
    }
    // this particular forest admits no 4-pebbling but a 5-pebbling
    std::vector<int> pebble(14, 0);
    CHECK(!assign_pebbles(g, parent, 4, pebble, 0, order));
    pebble.assign(14, 0);
    REQUIRE(assign_pebbles(g, parent, 5, pebble, 0, order));
    PebbleForestCover pfc{parent, pebble};
    CHECK(validate_pfc(g, pfc, 5).ok);
    CHECK(pfc_depth(pfc) == 6);
}

TEST_CASE("make_nice preserves width and rooted depth") {
    auto g = grid(2, 5);
    auto td = grid25_decomposition();
    auto nice = make_nice(g, td);
    CHECK(is_nice(g, nice));
    CHECK(validate_td(g, nice).ok);
    CHECK(td_width(nice) == td_width(td));
    CHECK(td_depth(nice, nice.tree.root) == td_depth(td, td.tree.root));

    auto again = make_nice(g, nice);
    CHECK(is_nice(g, again));
    CHECK(td_width(again) == td_width(nice));
    CHECK(td_depth(again, again.tree.root) == td_depth(nice, nice.tree.root));

    // one-bag decomposition of K_3 unrolls into introduce/forget chains
    TreeDecomposition one;
    one.bags = {bag({0, 1, 2})};
    one.tree.parent = {-1};
    one.tree.root = 0;
    auto niceK3 = make_nice(complete_graph(3), one);
    CHECK(is_nice(complete_graph(3), niceK3));
    CHECK(td_width(niceK3) == 2);
    CHECK(td_depth(niceK3, niceK3.tree.root) == 3);
}

TEST_CASE("construction trees from decompositions") {
    auto g = grid(2, 5);
    auto td = grid25_decomposition();
    auto ct = td_to_ct(g, td, 3, 6);
    CHECK(validate_ct(ct, 3).ok);
    CHECK(ct.nodes[ct.root].graph == g);
    CHECK(elimination_depth(ct) <= 6);

    auto back = ct_to_td(ct);
    CHECK(validate_td(g, back).ok);
    CHECK(td_width(back) <= 2);
    CHECK(td_depth(back, back.tree.root) <= 6);

    // round trip keeps the bounds on random small members
    std::mt19937 rng(5);
    int tested = 0;
    for (int round = 0; round < 60 && tested < 25; ++round) {
        int n = 2 + (int)(rng() % 4);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) edges.emplace_back(i, j);
        LabelledGraph h(n, std::move(edges));
        int k = 1 + (int)(rng() % 3), q = 1 + (int)(rng() % 4);
        if (!solve(h, k, q, Variant::CR).cop_wins) continue;
        ++tested;
        auto m = membership(h, k, q);
        REQUIRE(m.in);
        REQUIRE(m.witness);
        CHECK(validate_ct(*m.witness, k).ok);
        CHECK(elimination_depth(*m.witness) <= q);
        CHECK(m.witness->nodes[m.witness->root].graph == h);
        auto td2 = ct_to_td(*m.witness);
        CHECK(validate_td(h, td2).ok);
        CHECK(td_width(td2) <= k - 1);
        CHECK(td_depth(td2, td2.tree.root) <= q);
        auto ct2 = td_to_ct(h, td2, k, q);
        CHECK(validate_ct(ct2, k).ok);
        CHECK(elimination_depth(ct2) <= q);
    }
    CHECK(tested >= 10);
}

TEST_CASE("one-bag decomposition of K_2 turns into two eliminations") {
    TreeDecomposition one;
    one.bags = {bag({0, 1})};
    one.tree.parent = {-1};
    one.tree.root = 0;
    auto ct = td_to_ct(complete_graph(2), one, 2, 2);
    CHECK(validate_ct(ct, 2).ok);
    CHECK(elimination_depth(ct) == 2);
}

TEST_CASE("pebble covers from decompositions and back") {
    auto g = grid(2, 5);
    auto nice = make_nice(g, grid25_decomposition());
    auto pfc = td_to_pfc(g, nice, 3);
    CHECK(validate_pfc(g, pfc, 3).ok);
    CHECK(pfc_depth(pfc) <= 6);
    auto back = pfc_to_td(g, pfc);
    CHECK(validate_td(g, back).ok);
    CHECK(td_width(back) <= 2);
    CHECK(td_depth(back, back.tree.root) <= 6);

    auto k1 = complete_graph(1);
    PebbleForestCover single{{-1}, {1}};
    auto tdK1 = pfc_to_td(k1, single);
    CHECK(validate_td(k1, tdK1).ok);
    CHECK(td_width(tdK1) == 0);
    auto pfcBack = td_to_pfc(k1, make_nice(k1, tdK1), 1);
    CHECK(validate_pfc(k1, pfcBack, 1).ok);
}

TEST_CASE("cop strategy from pebble cover wins monotonously") {
    // chain cover of P_5 with two alternating pebbles: wins in 5 rounds
    auto p5 = path_graph(5);
    PebbleForestCover chain;
    chain.parent = {-1, 0, 1, 2, 3};
    chain.pebble = {1, 2, 1, 2, 1};
    REQUIRE(validate_pfc(p5, chain, 2).ok);
    auto sigma = cop_strategy_from_pfc(p5, chain, 2);
    auto check = verify_strategy(p5, sigma, 2, 5, Variant::MonCR);
    CHECK(check.ok);
    if (!check.ok) MESSAGE(check.error);

    auto k1 = complete_graph(1);
    PebbleForestCover single{{-1}, {1}};
    CHECK(verify_strategy(k1, cop_strategy_from_pfc(k1, single, 1), 1, 1, Variant::MonCR).ok);

    // a 4-pebble depth-6 cover of the 2x7 grid from the membership pipeline
    auto g = grid(2, 7);
    auto m = membership(g, 4, 6);
    REQUIRE(m.in);
    auto nice = make_nice(g, *m.decomposition);
    auto pfc = td_to_pfc(g, nice, 4);
    REQUIRE(validate_pfc(g, pfc, 4).ok);
    CHECK(pfc_depth(pfc) <= 6);
    auto sigmaGrid = cop_strategy_from_pfc(g, pfc, 4);
    auto checkGrid = verify_strategy(g, sigmaGrid, 4, 6, Variant::MonCR);
    CHECK(checkGrid.ok);
    if (!checkGrid.ok) MESSAGE(checkGrid.error);
}

TEST_CASE("membership decisions on the path family") {
    CHECK(!membership(path_graph(7), 2, 3).in);
    auto in = membership(path_graph(7), 2, 4);
    REQUIRE(in.in);
    CHECK(validate_ct(*in.witness, 2).ok);
    CHECK(elimination_depth(*in.witness) <= 4);
    CHECK(membership(complete_graph(1), 1, 1).in);
    CHECK(membership(path_graph(7), 2, 3).evidence.has_value());
}

TEST_CASE("bounded-depth class membership equals treedepth at k = q") {
    for (int n = 1; n <= 5; ++n)
        for (auto& g : all_graphs(n))
            for (int q = 1; q <= 4; ++q)
                CHECK(solve(g, q, q, Variant::CR).cop_wins == (treedepth_oracle(g) <= q));
}

TEST_CASE("the game class is minor closed") {
    for (int n = 2; n <= 6; ++n)
        for (auto& g : all_graphs(n))
            for (int k = 1; k <= 3; ++k)
                for (int q = 1; q <= 4; ++q) {
                    if (!solve(g, k, q, Variant::CR).cop_wins) continue;
                    for (int v = 0; v < g.num_vertices(); ++v)
                        CHECK(solve(delete_vertex(g, v), k, q, Variant::CR).cop_wins);
                    for (auto& [u, v] : g.edges()) {
                        CHECK(solve(delete_edge(g, u, v), k, q, Variant::CR).cop_wins);
                        CHECK(solve(contract_edge(g, u, v), k, q, Variant::CR).cop_wins);
                    }
                }
}

TEST_CASE("tighten drops padded vertices") {
    LabelledGraph k2plus(3, {{0, 1}});  // K_2 plus an isolated vertex
    TreeDecomposition padded;
    padded.bags = {bag({0, 1, 2})};
    padded.tree.parent = {-1};
    padded.tree.root = 0;
    auto tight = tighten(k2plus, padded);
    CHECK(validate_td(k2plus, tight).ok);
    CHECK(popcount64(tight.bags[0]) == 3);  // single bag: nothing removable

    TreeDecomposition two;
    two.bags = {bag({0, 1, 2}), bag({0, 1})};
    two.tree.parent = {-1, 0};
    two.tree.root = 0;
    auto tight2 = tighten(k2plus, two);
    CHECK(validate_td(k2plus, tight2).ok);
    CHECK(popcount64(tight2.bags[0]) + popcount64(tight2.bags[1]) < 5);

    auto td = grid25_decomposition();
    auto g = grid(2, 5);
    auto tightened = tighten(g, td);
    CHECK(validate_td(g, tightened).ok);
    CHECK(td_width(tightened) <= td_width(td));
}

TEST_CASE("bags meeting a connected subgraph form a connected subtree") {
    std::mt19937 rng(47);
    int done = 0;
    while (done < 12) {
        int n = 3 + (int)(rng() % 4);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) edges.emplace_back(i, j);
        LabelledGraph g(n, std::move(edges));
        int k = 2 + (int)(rng() % 2), q = 2 + (int)(rng() % 3);
        auto m = membership(g, k, q);
        if (!m.in) continue;
        ++done;
        auto td = ct_to_td(*m.witness);
        REQUIRE(validate_td(g, td).ok);
        // random connected vertex sets
        auto adjacency = g.adjacency();
        for (int round = 0; round < 10; ++round) {
            std::uint64_t sub = bit(rng() % n);
            for (int grow = 0; grow < n; ++grow) {
                std::uint64_t frontier = 0;
                for (int v : bits_of(sub)) frontier |= adjacency[v];
                frontier &= ~sub;
                if (!frontier || rng() % 2) break;
                auto opts = bits_of(frontier);
                sub |= bit(opts[rng() % opts.size()]);
            }
            // nodes whose bags meet the set must induce a connected subtree
            std::vector<int> hit;
            for (int t = 0; t < td.tree.size(); ++t)
                if (td.bags[t] & sub) hit.push_back(t);
            REQUIRE(!hit.empty());
            std::vector<bool> inHit(td.tree.size(), false);
            for (int t : hit) inHit[t] = true;
            // climb from each hit node towards the root until another hit
            // node appears; the meeting points must all be hit nodes
            int top = hit[0];
            for (int t : hit)
                if (td.tree.is_ancestor(t, top)) top = t;
            int reachable = 0;
            std::vector<int> stack{top};
            auto ch = td.tree.children();
            std::vector<bool> seen(td.tree.size(), false);
            seen[top] = true;
            while (!stack.empty()) {
                int t = stack.back();
                stack.pop_back();
                ++reachable;
                for (int c : ch[t])
                    if (!seen[c] && inHit[c]) {
                        seen[c] = true;
                        stack.push_back(c);
                    }
            }
            CHECK(reachable == (int)hit.size());
        }
    }
}

TEST_CASE("witness serialization round trips") {
    auto g = grid(2, 5);
    auto td = grid25_decomposition();
    auto td2 = TreeDecomposition::from_json(td.to_json());
    CHECK(td2.bags == td.bags);
    CHECK(td2.tree.parent == td.tree.parent);
    CHECK(td.to_dot().find("shape=box") != std::string::npos);

    auto ct = td_to_ct(g, td, 3, 6);
    auto ct2 = ConstructionTree::from_json(ct.to_json());
    CHECK(ct2.nodes.size() == ct.nodes.size());
    CHECK(validate_ct(ct2, 3).ok);

    PebbleForestCover pfc{{-1, 0}, {1, 2}};
    auto pfc2 = PebbleForestCover::from_json(pfc.to_json());
    CHECK(pfc2.parent == pfc.parent);
    CHECK(pfc2.pebble == pfc.pebble);
}
