// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Criterion 12 contains a sub-check that is provably unattainable as
// specified; it is run as stated and reported honestly (see the line it
// prints and the README).

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include <omp.h>

#include "deepwide/canonical.hpp"
#include "deepwide/cfi.hpp"
#include "deepwide/decomp.hpp"
#include "deepwide/equiv.hpp"
#include "deepwide/game.hpp"
#include "deepwide/hom.hpp"
#include "deepwide/homlogic.hpp"
#include "deepwide/oracle.hpp"
#include "deepwide/pretree.hpp"
#include "deepwide/quantum.hpp"

using namespace deepwide;

namespace {

int failures = 0;

void report(int number, const char* name, bool pass, const std::string& note = "") {
    std::printf("criterion %2d (%s): %s%s%s\n", number, name, pass ? "PASS" : "FAIL",
                note.empty() ? "" : " - ", note.c_str());
    if (!pass) ++failures;
}

bool path_thresholds() {
    for (int len = 2; len <= 11; ++len) {
        int threshold = (len - 1 + 1) / 2;  // ceil((len-1)/2)
        for (int q = 1; q <= threshold + 2; ++q) {
            bool robber = !solve(path_graph(len), 2, q, Variant::CR).cop_wins;
            if (robber != (q <= threshold)) return false;
        }
    }
    return true;
}

bool grid_lower_bounds() {
    struct Inst {
        int h, l;
    };
    std::vector<Inst> insts = {{2, 7}, {2, 9}, {3, 8}};
    std::atomic<bool> ok{true};
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < (int)insts.size(); ++i) {
        auto [h, l] = insts[i];
        int bound = h * (l - h + 2) / 4;
        for (int q = 1; q <= bound; ++q)
            if (solve(grid(h, l), h + 1, q, Variant::CR).cop_wins) ok = false;
    }
    return ok;
}

bool grid_explicit_strategy() {
    auto sigma = grid_cop_strategy(4, 9);
    int bound = 9 * 4 / 4 + 4 + 1;
    auto check = verify_strategy(grid(4, 9), sigma, 5, bound, Variant::CR);
    return check.ok && check.max_rounds_used <= bound;
}

struct SweepOutcome {
    bool monotone_equal = true;
    bool pipeline_ok = true;
    bool roundtrip_ok = true;
    std::string note;
};

// criteria 4, 5 and 6 share one sweep over the 1044 seven-vertex graphs
SweepOutcome big_sweep() {
    auto graphs = all_graphs(7);
    SweepOutcome out;
    if (graphs.size() != 1044) {
        out.monotone_equal = false;
        out.note = "enumeration did not yield 1044 graphs";
        return out;
    }
    std::atomic<bool> monoEq{true}, pipeOk{true}, tripOk{true};
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < (int)graphs.size(); ++i) {
        const auto& g = graphs[i];
        for (int k = 1; k <= 3; ++k)
            for (int q = 1; q <= 5; ++q) {
                bool cr = solve(g, k, q, Variant::CR).cop_wins;
                bool mon = solve(g, k, q, Variant::MonCR).cop_wins;
                if (cr != mon) monoEq = false;
                if (!cr) continue;

                // criterion 5: strategy tree -> cleanup -> decomposition
                try {
                    auto gl = with_loops(g);
                    auto edge = solve(gl, k, q, Variant::ECR);
                    if (!edge.cop_wins) {
                        pipeOk = false;
                        continue;
                    }
                    auto st = strategy_tree(gl, *edge.strategy);
                    auto exact = exactify(st);
                    if (!is_exact(exact) || ptd_width(exact) > ptd_width(st) ||
                        ptd_depth(exact) > ptd_depth(st))
                        pipeOk = false;
                    auto td = exact_ptd_to_td(exact);
                    if (!validate_td(g, td).ok || td_width(td) > k - 1 ||
                        td_depth(td, td.tree.root) > q)
                        pipeOk = false;

                    // criterion 6: witness conversions preserve the bounds
                    auto ct = td_to_ct(g, td, k, q);
                    if (!validate_ct(ct, k).ok || elimination_depth(ct) > q) tripOk = false;
                    auto td2 = ct_to_td(ct);
                    if (!validate_td(g, td2).ok || td_width(td2) > k - 1 ||
                        td_depth(td2, td2.tree.root) > q)
                        tripOk = false;
                    auto nice = make_nice(g, td2);
                    auto pfc = td_to_pfc(g, nice, k);
                    if (!validate_pfc(g, pfc, k).ok || pfc_depth(pfc) > q) tripOk = false;
                    auto td3 = pfc_to_td(g, pfc);
                    if (!validate_td(g, td3).ok || td_width(td3) > k - 1 ||
                        td_depth(td3, td3.tree.root) > q)
                        tripOk = false;
                } catch (const std::exception&) {
                    pipeOk = false;
                    tripOk = false;
                }
            }
    }
    out.monotone_equal = monoEq;
    out.pipeline_ok = pipeOk;
    out.roundtrip_ok = tripOk;
    return out;
}

// The reference monotonization input: a deliberately wasteful five-cop
// nine-round edge-game strategy on the looped contracted grid whose
// strategy tree has width 4 and depth 9; the cleanup must stay within
// those bounds (this deterministic run lands at width 2, depth 7).
bool reference_run(std::string& note) {
    auto g = contract_edge(grid(2, 5), grid_vertex(5, 1, 3), grid_vertex(5, 2, 3));
    auto gl = with_loops(g);
    GameBoard board(gl, true);
    auto cops = [](std::initializer_list<int> vs) {
        std::uint64_t m = 0;
        for (int v : vs) m |= bit(v);
        return m;
    };
    struct Rule {
        std::uint64_t cops;
        int touches;
        std::uint64_t next;
    };
    std::vector<Rule> rules = {
        {cops({}), -1, cops({1})},
        {cops({1}), -1, cops({1, 3})},
        {cops({1, 3}), -1, cops({1, 3, 6})},
        {cops({1, 3, 6}), 0, cops({1, 3, 6, 0})},
        {cops({1, 3, 6}), 7, cops({1, 3, 6, 0})},
        {cops({1, 3, 6, 0}), 5, cops({3, 6, 0, 5})},
        {cops({1, 3, 6, 0}), 7, cops({1, 6, 0, 2})},
        {cops({1, 6, 0, 2}), 7, cops({1, 6, 0, 2, 3})},
        {cops({1, 6, 0, 2, 3}), 7, cops({1, 6, 2, 3, 7})},
        {cops({1, 6, 2, 3, 7}), 8, cops({6, 2, 3, 7, 4})},
        {cops({6, 2, 3, 7, 4}), 8, cops({2, 3, 7, 4, 8})},
    };
    auto touched = [&](std::uint64_t space, int v) {
        if (v < 0) return true;
        for (int e : bits_of(space)) {
            auto [a, b] = gl.edges()[e];
            if (a == v || b == v) return true;
        }
        return false;
    };
    CopStrategy sigma;
    sigma.variant = Variant::ECR;
    sigma.k = 5;
    sigma.q = 9;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> queue;
    for (auto s : board.initial_spaces()) queue.emplace_back(0, s);
    while (!queue.empty()) {
        auto [X, space] = queue.back();
        queue.pop_back();
        auto key = std::make_pair(X, board.space_rep(space));
        if (sigma.moves.count(key)) continue;
        bool found = false;
        std::uint64_t next = 0;
        for (auto& rule : rules)
            if (rule.cops == X && touched(space, rule.touches)) {
                next = rule.next;
                found = true;
                break;
            }
        if (!found) return false;
        sigma.moves.emplace(key, next);
        std::uint64_t transit = board.transit_space(X & next, space);
        if (!board.captured(next, transit))
            for (auto s : board.successor_spaces(next, transit)) queue.emplace_back(next, s);
    }
    if (!verify_strategy(gl, sigma, 5, 9, Variant::ECR).ok) return false;
    auto st = strategy_tree(gl, sigma);
    if (!validate_ptd(st).ok || ptd_width(st) != 4 || ptd_depth(st) != 9) return false;
    auto exact = exactify(st);
    if (!is_exact(exact) || ptd_width(exact) > 4 || ptd_depth(exact) > 9) return false;
    auto td = exact_ptd_to_td(exact);
    if (!validate_td(g, td).ok || td_width(td) > 4 || td_depth(td, td.tree.root) > 9)
        return false;
    std::ostringstream out;
    out << "reference input width 4 depth 9 -> exact width " << ptd_width(exact) << " depth "
        << ptd_depth(exact);
    note = out.str();
    return true;
}

bool figure_instances() {
    // the drawn path-shaped decomposition of the 2x5 grid
    TreeDecomposition td;
    auto bag = [](std::initializer_list<int> vs) {
        std::uint64_t m = 0;
        for (int v : vs) m |= bit(v);
        return m;
    };
    td.bags = {bag({2, 7}),    bag({2, 7, 6}), bag({2, 1, 6}),
               bag({1, 6, 5}), bag({1, 0, 5}), bag({2, 7, 8}),
               bag({2, 3, 8}), bag({3, 8, 9}), bag({3, 4, 9})};
    td.tree.parent = {-1, 0, 1, 2, 3, 0, 5, 6, 7};
    td.tree.root = 0;
    auto g25 = grid(2, 5);
    if (!validate_td(g25, td).ok) return false;
    if (td_width(td) > 3 || td_depth(td, 0) != 6) return false;

    // both grid instances are members at the drawn parameters and the
    // conversions hold there
    for (auto& [g, k, q] : {std::tuple<LabelledGraph, int, int>{g25, 3, 6},
                            std::tuple<LabelledGraph, int, int>{grid(2, 7), 4, 6}}) {
        auto m = membership(g, k, q);
        if (!m.in || !validate_ct(*m.witness, k).ok || elimination_depth(*m.witness) > q)
            return false;
        auto td2 = ct_to_td(*m.witness);
        if (!validate_td(g, td2).ok || td_width(td2) > k - 1 || td_depth(td2, td2.tree.root) > q)
            return false;
        auto pfc = td_to_pfc(g, make_nice(g, td2), k);
        if (!validate_pfc(g, pfc, k).ok || pfc_depth(pfc) > q) return false;
        auto td3 = pfc_to_td(g, pfc);
        if (!validate_td(g, td3).ok || td_width(td3) > k - 1 ||
            td_depth(td3, td3.tree.root) > q)
            return false;
    }
    return true;
}

bool oracle_equivalence() {
    std::atomic<bool> ok{true};
    for (int n = 1; n <= 6; ++n) {
        auto graphs = all_graphs(n);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < (int)graphs.size(); ++i)
            for (int k = 1; k <= 3; ++k)
                for (int q = 1; q <= 4; ++q)
                    if (solve(graphs[i], k, q, Variant::CR).cop_wins !=
                        exists_decomposition(graphs[i], k, q))
                        ok = false;
    }
    return ok;
}

bool cfi_parity() {
    std::atomic<bool> ok{true};
    for (int n = 2; n <= 5; ++n) {
        auto graphs = all_connected_graphs(n);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < (int)graphs.size(); ++i) {
            const auto& g = graphs[i];
            auto base = cfi(g, 0).graph;
            auto odd0 = cfi(g, bit(0)).graph;
            long long homBase = hom_count_serial(g, base);
            long long homOdd = hom_count_serial(g, odd0);
            if (homBase == homOdd) ok = false;  // odd twist must change the count
            for (std::uint64_t twist = 0; twist < bit(n); ++twist) {
                auto gu = cfi(g, twist).graph;
                auto map = cfi_normalize_map(g, twist);
                if (popcount64(twist) % 2 == 0) {
                    if (!verify_isomorphism(gu, base, map)) ok = false;
                } else {
                    if (!verify_isomorphism(gu, odd0, map)) ok = false;
                    if (hom_count_serial(g, gu) == homBase) ok = false;
                }
            }
        }
    }
    return ok;
}

bool separation_instance(std::string& note) {
    auto report = separation_experiment(2, 3);
    if (!report.witness_found || !report.robber_wins) return false;
    if (report.treewidth != 1 || report.treedepth != 3) return false;
    if (!report.pebble_checked || !report.duplicator_wins) return false;
    // derived oracle values, pinned after first computation
    if (report.hom_g0 != 378 || report.hom_g1 != 376) return false;
    std::ostringstream out;
    out << "hom counts " << report.hom_g0 << " vs " << report.hom_g1;
    note = out.str();
    return true;
}

bool logic_hom_duality_a() {
    std::vector<LabelledGraph> patterns;
    for (int n = 1; n <= 4; ++n)
        for (auto& g : all_graphs(n)) patterns.push_back(g);
    std::vector<LabelledGraph> targets;
    for (int n = 1; n <= 5; ++n)
        for (auto& g : all_graphs(n)) targets.push_back(g);
    std::atomic<bool> ok{true};
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < (int)patterns.size(); ++i) {
        const auto& f = patterns[i];
        for (int k = 1; k <= 3 && ok; ++k)
            for (int q = 1; q <= 3; ++q) {
                auto m = membership(f, k, q);
                if (!m.in) continue;
                FormulaArena arena;
                for (auto& g : targets) {
                    long long hom = hom_count_serial(f, g);
                    for (long long mm = 0; mm <= 10; ++mm) {
                        int phi = formula_from_ct(arena, *m.witness, mm, 5);
                        if (arena.evaluate(g, phi) != (hom == mm)) ok = false;
                    }
                }
                break;  // one witness per (f, k) suffices: deeper q only relaxes
            }
    }
    return ok;
}

// random sentences with two variables and quantifier rank at most two
int random_sentence(FormulaArena& arena, std::mt19937& rng) {
    auto atom = [&](int a, int b) {
        return rng() % 2 ? arena.edge(a, b) : arena.eq(a, b);
    };
    auto qf = [&](int a, int b) {  // quantifier-free over two variables
        int f = atom(a, b);
        if (rng() % 2) f = arena.lor(f, atom(a, b));
        if (rng() % 3 == 0) f = arena.neg(f);
        if (rng() % 3 == 0) f = arena.land(f, atom(a, a));
        return f;
    };
    auto inner = [&](int outerVar, int innerVar) {  // rank-one subformula
        int body = qf(outerVar, innerVar);
        int f = arena.exists_geq(1 + rng() % 3, innerVar, body);
        if (rng() % 4 == 0) f = arena.neg(f);
        return f;
    };
    int one = 1, two = 2;
    int body = rng() % 2 ? inner(one, two) : qf(one, one);
    if (rng() % 3 == 0) body = arena.lor(body, qf(one, one));
    int phi = arena.exists_geq(1 + rng() % 3, one, body);
    if (rng() % 4 == 0) phi = arena.neg(phi);
    if (rng() % 4 == 0) phi = arena.lor(phi, arena.exists_geq(1 + rng() % 2, one, qf(one, one)));
    return phi;
}

bool logic_hom_duality_b() {
    std::vector<std::vector<LabelledGraph>> byOrder(6);
    for (int n = 1; n <= 5; ++n) byOrder[n] = all_graphs(n);
    std::atomic<bool> ok{true};
#pragma omp parallel for schedule(dynamic)
    for (int round = 0; round < 200; ++round) {
        std::mt19937 rng(1000 + round);
        FormulaArena arena;
        int phi = random_sentence(arena, rng);
        if (!arena.in_fragment(phi, 2, 2) || arena.free_vars(phi) != 0) {
            ok = false;  // generator contract
            continue;
        }
        for (int n = 1; n <= 5 && ok; ++n) {
            QuantumGraph q;
            try {
                q = qg_from_formula(arena, phi, n, 2, 2);
            } catch (const std::exception&) {
                ok = false;
                break;
            }
            for (auto& g : byOrder[n]) {
                Rational v = hom_count_quantum(q, g);
                Rational expect = arena.evaluate(g, phi) ? Rational(1) : Rational(0);
                if (v != expect) ok = false;
            }
        }
    }
    return ok;
}

bool logic_hom_duality_c() {
    auto family = enumerate_family(FamilyKind::Tkq, 2, 2, 6);
    std::mt19937 rng(2024);
    auto random_graph = [&](int n) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) edges.emplace_back(i, j);
        return LabelledGraph(n, std::move(edges));
    };
    for (int round = 0; round < 50; ++round) {
        auto g = random_graph(1 + rng() % 6);
        auto h = random_graph(1 + rng() % 6);
        auto res = hom_indistinguishable(g, h, family);
        auto winner = bijective_pebble_game(g, h, 2, 2);
        // a bounded counterexample forces a spoiler win; a duplicator win
        // forbids any counterexample
        if (!res.indistinguishable && winner != PebbleWinner::Spoiler) return false;
        if (winner == PebbleWinner::Duplicator && !res.indistinguishable) return false;
    }
    return true;
}

bool interpolation_criterion() {
    std::mt19937 rng(31337);
    int landed = 0;
    for (int round = 0; round < 100; ++round) {
        // small combinations keep the hom values inside the window often
        std::vector<QuantumGraph::Term> terms;
        terms.push_back({Rational(1), complete_graph(1), {}});
        if (rng() % 2) terms.push_back({Rational(1), complete_graph(2), {}});
        if (rng() % 2) terms.push_back({Rational(-1), path_graph(2 + rng() % 2), {}});
        QuantumGraph q(std::move(terms));

        // random disjoint subsets of {0..6}
        std::vector<Rational> plus, minus;
        for (int v = 0; v <= 6; ++v) {
            int pick = rng() % 3;
            if (pick == 0) plus.push_back(Rational(v));
            if (pick == 1) minus.push_back(Rational(v));
        }
        if (plus.empty()) plus.push_back(Rational(0));
        if (!minus.empty() && minus.front() == plus.front()) minus.erase(minus.begin());
        auto out = interpolate(q, plus, minus);

        for (int n = 0; n <= 3; ++n) {
            for (auto& g : n == 0 ? std::vector<LabelledGraph>{LabelledGraph(0)} : all_graphs(n)) {
                Rational x = hom_count_quantum(q, g);
                Rational y = hom_count_quantum(out, g);
                bool inPlus = std::find(plus.begin(), plus.end(), x) != plus.end();
                bool inMinus = std::find(minus.begin(), minus.end(), x) != minus.end();
                if (inPlus) {
                    ++landed;
                    if (y != Rational(1)) return false;
                }
                if (inMinus) {
                    ++landed;
                    if (y != Rational(0)) return false;
                }
            }
        }
    }
    return landed >= 100;  // the windows are actually exercised
}

bool classic_pair(std::string& note) {
    auto c3 = cycle_graph(3);
    auto [g0, g1] = cfi_pair(c3);
    LabelledGraph twoTriangles(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    bool pass = true;
    std::ostringstream out;
    if (!isomorphic(g0, twoTriangles) || !isomorphic(g1, cycle_graph(6))) {
        pass = false;
        out << "pair not the expected graphs; ";
    }
    for (int q = 1; q <= 5; ++q)
        if (bijective_pebble_game(g0, g1, 2, q) != PebbleWinner::Duplicator) {
            pass = false;
            out << "duplicator fails at two pebbles, " << q << " rounds; ";
        }
    if (hom_count(c3, g0) != 12 || hom_count(c3, g1) != 0) {
        pass = false;
        out << "hom counts differ from 12 vs 0; ";
    }
    // As specified: Spoiler wins with 3 pebbles within 2 rounds. This is
    // unattainable under the game definition: two rounds from the empty
    // position place only two pebbles, and the graphs are 2-regular, so
    // every rank-2 counting sentence agrees on them. The faithful check
    // runs and fails; the threshold one round later holds.
    bool asStated = bijective_pebble_game(g0, g1, 3, 2) == PebbleWinner::Spoiler;
    bool oneLater = bijective_pebble_game(g0, g1, 3, 3) == PebbleWinner::Spoiler;
    if (!asStated) {
        pass = false;
        out << "spoiler does NOT win (3 pebbles, 2 rounds) as specified - two rounds place "
               "two pebbles and rank-2 counting sentences cannot separate 2-regular graphs; "
               "spoiler does win at (3 pebbles, 3 rounds): "
            << (oneLater ? "yes" : "no");
    }
    note = out.str();
    return pass;
}

}  // namespace

int main() {
    double start = omp_get_wtime();

    report(1, "path thresholds", path_thresholds());
    report(2, "grid lower bounds", grid_lower_bounds());
    report(3, "grid explicit strategy", grid_explicit_strategy());

    auto sweep = big_sweep();
    report(4, "monotone equivalence on 1044 graphs", sweep.monotone_equal, sweep.note);
    std::string note5;
    bool ref5 = reference_run(note5);
    report(5, "monotonization pipeline", sweep.pipeline_ok && ref5, note5);
    report(6, "witness round-trips", sweep.roundtrip_ok && figure_instances());

    report(7, "oracle equivalence", oracle_equivalence());
    report(8, "gadget parity", cfi_parity());

    std::string note9;
    bool ok9 = separation_instance(note9);
    report(9, "semantic separation instance", ok9, note9);

    report(10, "logic/hom duality",
           logic_hom_duality_a() && logic_hom_duality_b() && logic_hom_duality_c());
    report(11, "interpolation", interpolation_criterion());

    std::string note12;
    bool ok12 = classic_pair(note12);
    report(12, "classic pair via gadgets", ok12, note12);

    std::printf("total: %d failed, %.1f s\n", failures, omp_get_wtime() - start);
    return failures == 0 ? 0 : 1;
}
