#include "deepwide/equiv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "deepwide/canonical.hpp"
#include "deepwide/cfi.hpp"
#include "deepwide/game.hpp"
#include "deepwide/hom.hpp"
#include "deepwide/oracle.hpp"
#include "json.hpp"

namespace deepwide {

bool is_partial_isomorphism(const LabelledGraph& g, const LabelledGraph& h,
                            const PebblePosition& gamma) {
    for (auto& [p, vw] : gamma.pairs) {
        (void)p;
        auto [v, w] = vw;
        if (v < 0 || v >= g.num_vertices() || w < 0 || w >= h.num_vertices()) return false;
    }
    for (auto& [p1, vw1] : gamma.pairs)
        for (auto& [p2, vw2] : gamma.pairs) {
            if (p1 >= p2) continue;
            auto [v1, w1] = vw1;
            auto [v2, w2] = vw2;
            if ((v1 == v2) != (w1 == w2)) return false;
            if (g.has_edge(v1, v2) != h.has_edge(w1, w2)) return false;
        }
    return true;
}

namespace {

struct PebbleSolver {
    const LabelledGraph &g, &h;
    int k;
    bool symmetry;
    std::map<std::pair<std::vector<std::uint64_t>, int>, bool> memo;  // (key, rounds)

    std::vector<std::uint64_t> key_of(const PebblePosition& gamma) const {
        std::vector<std::uint64_t> key;
        for (auto& [p, vw] : gamma.pairs) {
            std::uint64_t packed = (std::uint64_t)vw.first << 20 | (std::uint64_t)vw.second;
            if (!symmetry) packed |= (std::uint64_t)p << 40;
            key.push_back(packed);
        }
        std::sort(key.begin(), key.end());
        return key;
    }

    // Kuhn matching on the wins relation; rows and columns are vertices.
    static bool perfect_matching(const std::vector<std::uint64_t>& rows, int n) {
        std::vector<int> matchCol(n, -1);
        for (int r = 0; r < n; ++r) {
            std::vector<bool> seen(n, false);
            if (!augment(rows, r, seen, matchCol)) return false;
        }
        return true;
    }
    static bool augment(const std::vector<std::uint64_t>& rows, int r, std::vector<bool>& seen,
                        std::vector<int>& matchCol) {
        for (int c : bits_of(rows[r])) {
            if (seen[c]) continue;
            seen[c] = true;
            if (matchCol[c] < 0 || augment(rows, matchCol[c], seen, matchCol)) {
                matchCol[c] = r;
                return true;
            }
        }
        return false;
    }

    bool duplicator_wins(const PebblePosition& gamma, int rounds) {
        if (!is_partial_isomorphism(g, h, gamma)) return false;
        if (rounds <= 0) return true;
        if (g.num_vertices() != h.num_vertices()) return false;
        auto key = std::make_pair(key_of(gamma), rounds);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        int n = g.num_vertices();
        // Spoiler's distinct pebble choices
        std::vector<int> picks;
        if (symmetry) {
            for (auto& [p, vw] : gamma.pairs) {
                (void)vw;
                picks.push_back(p);
            }
            if ((int)gamma.pairs.size() < k) {
                int fresh = 1;
                while (gamma.pairs.count(fresh)) ++fresh;
                picks.push_back(fresh);
            }
        } else {
            for (int p = 1; p <= k; ++p) picks.push_back(p);
        }
        bool result = true;
        for (int p : picks) {
            std::vector<std::uint64_t> rows(n, 0);
            for (int v = 0; v < n; ++v)
                for (int w = 0; w < n; ++w) {
                    PebblePosition next = gamma;
                    next.pairs[p] = {v, w};
                    if (duplicator_wins(next, rounds - 1)) rows[v] |= bit(w);
                }
            if (!perfect_matching(rows, n)) {
                result = false;
                break;
            }
        }
        memo.emplace(key, result);
        return result;
    }
};

}  // namespace

PebbleWinner bijective_pebble_game(const LabelledGraph& g, const LabelledGraph& h, int k, int q,
                                   const PebblePosition& start, bool use_symmetry) {
    if (k < 1 || q < 0) throw std::invalid_argument("bijective_pebble_game: k >= 1, q >= 0");
    if (g.num_vertices() > 30 || h.num_vertices() > 30)
        throw std::invalid_argument("bijective_pebble_game: size cap exceeded");
    for (auto& [p, vw] : start.pairs) {
        (void)vw;
        if (p < 1 || p > k) throw std::invalid_argument("bijective_pebble_game: bad pebble index");
    }
    PebbleSolver solver{g, h, k, use_symmetry, {}};
    return solver.duplicator_wins(start, q) ? PebbleWinner::Duplicator : PebbleWinner::Spoiler;
}

namespace {

// Merge-free construction-tree search. States are labelled subgraph
// configurations of the base graph; the depth budget is part of the memo
// key, so the recursion is well-founded: eliminations consume budget,
// product children are strictly smaller configurations.
struct CtSearch {
    const LabelledGraph& base;
    int k;
    bool guarded;
    std::map<std::tuple<std::uint64_t, std::uint64_t, std::vector<int>, int>, bool> memo;

    std::uint64_t edges_within(std::uint64_t verts) const {
        std::uint64_t out = 0;
        for (int e = 0; e < base.num_edges(); ++e) {
            auto [a, b] = base.edges()[e];
            if ((verts >> a & 1) && (verts >> b & 1)) out |= bit(e);
        }
        return out;
    }

    bool feasible(std::uint64_t S, std::uint64_t A, const std::vector<int>& nu, int d) {
        std::uint64_t labelled = 0;
        for (int v : nu)
            if (v >= 0) labelled |= bit(v);
        if ((S & ~labelled) == 0) return true;  // fully labelled: a leaf
        auto key = std::make_tuple(S, A, nu, d);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        memo.emplace(key, false);
        bool ok = false;

        // reverse elimination: assign a free label index to any vertex
        int freeIdx = -1;
        for (int i = 0; i < k; ++i)
            if (nu[i] < 0) freeIdx = i;
        if (freeIdx >= 0 && d >= 1) {
            for (int v : bits_of(S)) {
                if (guarded) {
                    bool hasLabelledNb = false;
                    for (int e : bits_of(A)) {
                        auto [a, b] = base.edges()[e];
                        int other = a == v ? b : (b == v ? a : -1);
                        if (other >= 0 && other != v && (labelled >> other & 1))
                            hasLabelledNb = true;
                    }
                    if (!hasLabelledNb) continue;
                }
                auto nu2 = nu;
                nu2[freeIdx] = v;
                if (feasible(S, A, nu2, d - 1)) {
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) ok = try_products(S, A, nu, d);
        memo[key] = ok;
        return ok;
    }

    bool try_products(std::uint64_t S, std::uint64_t A, const std::vector<int>& nu, int d) {
        std::vector<int> labels;
        for (int i = 0; i < k; ++i)
            if (nu[i] >= 0) labels.push_back(i);
        std::uint64_t unlabelled = S;
        for (int i : labels) unlabelled &= ~bit(nu[i]);
        auto unl = bits_of(unlabelled);
        auto edgeList = bits_of(A);

        double count = std::pow(3.0, (double)labels.size()) *
                       std::pow(2.0, (double)unl.size() + (double)edgeList.size());
        if (count > 4e6) throw std::runtime_error("construction_depth: split search too large");

        // label sides: 0 left, 1 right, 2 both; vertices and edges: 0/1
        std::vector<int> labelSide(labels.size(), 0);
        std::vector<int> vertSide(unl.size(), 0);
        std::vector<int> edgeSide(edgeList.size(), 0);
        bool found = false;

        auto evaluate_split = [&]() {
            if (found) return;
            std::uint64_t V1 = 0, V2 = 0;
            std::vector<int> nu1(k, -1), nu2(k, -1);
            for (size_t i = 0; i < labels.size(); ++i) {
                int l = labels[i], v = nu[l];
                if (labelSide[i] != 1) {
                    nu1[l] = v;
                    V1 |= bit(v);
                }
                if (labelSide[i] != 0) {
                    nu2[l] = v;
                    V2 |= bit(v);
                }
            }
            for (size_t i = 0; i < unl.size(); ++i)
                (vertSide[i] == 0 ? V1 : V2) |= bit(unl[i]);
            for (int v : bits_of(V1 & V2)) {
                // shared vertices must be identified by a common label
                bool shared = false;
                for (size_t i = 0; i < labels.size(); ++i)
                    if (labelSide[i] == 2 && nu[labels[i]] == v) shared = true;
                if (!shared) return;
            }
            std::uint64_t A1 = 0, A2 = 0;
            for (size_t i = 0; i < edgeList.size(); ++i) {
                int e = edgeList[i];
                auto [a, b] = base.edges()[e];
                std::uint64_t verts = edgeSide[i] == 0 ? V1 : V2;
                if (!((verts >> a & 1) && (verts >> b & 1))) return;
                (edgeSide[i] == 0 ? A1 : A2) |= bit(e);
            }
            bool leftWhole = V1 == S && A1 == A && nu1 == nu;
            bool rightWhole = V2 == S && A2 == A && nu2 == nu;
            if (leftWhole || rightWhole) return;  // no progress
            if (feasible(V1, A1, nu1, d) && feasible(V2, A2, nu2, d)) found = true;
        };

        auto enumerate = [&](auto&& self, int stage, size_t idx) -> void {
            if (found) return;
            if (stage == 0) {
                if (idx == labels.size()) return self(self, 1, 0);
                for (int s = 0; s < 3 && !found; ++s) {
                    labelSide[idx] = s;
                    self(self, 0, idx + 1);
                }
                return;
            }
            if (stage == 1) {
                if (idx == unl.size()) return self(self, 2, 0);
                for (int s = 0; s < 2 && !found; ++s) {
                    vertSide[idx] = s;
                    self(self, 1, idx + 1);
                }
                return;
            }
            if (idx == edgeList.size()) return evaluate_split();
            for (int s = 0; s < 2 && !found; ++s) {
                edgeSide[idx] = s;
                self(self, 2, idx + 1);
            }
        };
        enumerate(enumerate, 0, 0);
        return found;
    }
};

}  // namespace

int construction_depth(const LabelledGraph& g, int k, int cap, bool guarded) {
    if (g.num_vertices() > 12) throw std::invalid_argument("construction_depth: size cap exceeded");
    CtSearch search{g, k, guarded, {}};
    std::vector<int> nu(k, -1);
    for (int i = 1; i <= std::min(k, g.max_label_index()); ++i)
        if (g.has_label(i)) nu[i - 1] = g.label(i);
    for (int i = k + 1; i <= g.max_label_index(); ++i)
        if (g.has_label(i)) throw std::invalid_argument("construction_depth: label index above k");
    std::uint64_t all = g.num_vertices() == 0 ? 0 : bit(g.num_vertices()) - 1;
    std::uint64_t edges = search.edges_within(all);
    for (int d = 0; d <= cap; ++d)
        if (search.feasible(all, edges, nu, d)) return d;
    return -1;
}

FamilyEnumeration enumerate_family(FamilyKind kind, int k, int q, int max_n) {
    if (max_n > 8) throw std::invalid_argument("enumerate_family: size cap exceeded");
    FamilyEnumeration out;
    out.kind = kind;
    out.k = k;
    out.q = q;
    out.max_n = max_n;
    for (int n = 1; n <= max_n; ++n) {
        auto graphs = all_graphs(n);
        std::vector<char> keep(graphs.size(), 0);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < (int)graphs.size(); ++i) {
            const auto& g = graphs[i];
            bool in = false;
            switch (kind) {
                case FamilyKind::Tkq: in = solve(g, k, q, Variant::CR).cop_wins; break;
                case FamilyKind::GEkq: in = construction_depth(g, k, q, true) >= 0; break;
                case FamilyKind::TwTd: {
                    int d = min_decomposition_depth(g, k);
                    in = d >= 0 && treedepth_oracle(g) <= q;
                    break;
                }
            }
            keep[i] = in ? 1 : 0;
        }
        for (size_t i = 0; i < graphs.size(); ++i)
            if (keep[i]) out.members.push_back(graphs[i]);
    }
    return out;
}

HomIndResult hom_indistinguishable(const LabelledGraph& g, const LabelledGraph& h,
                                   const FamilyEnumeration& family) {
    HomIndResult out;
    int m = (int)family.members.size();
    std::vector<long long> cg(m), chh(m);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) {
        cg[i] = hom_count_serial(family.members[i], g);
        chh[i] = hom_count_serial(family.members[i], h);
    }
    for (int i = 0; i < m; ++i)
        if (cg[i] != chh[i]) {
            out.indistinguishable = false;
            out.counterexample = family.members[i];
            out.count_g = cg[i];
            out.count_h = chh[i];
            return out;
        }
    return out;
}

GcResult gc_equivalent(const LabelledGraph& g, const LabelledGraph& h, int k, int q, int max_n) {
    GcResult out;
    out.bound = max_n;
    if (g.num_vertices() != h.num_vertices()) {
        // a single labelled vertex already distinguishes the sizes
        out.refuted = true;
        LabelledGraph f(1);
        f.set_label_inplace(1, 0);
        out.witness = f;
        return out;
    }
    // single-labelled guarded-constructible graphs up to max_n
    std::vector<LabelledGraph> family;
    for (int n = 1; n <= max_n; ++n)
        for (auto& base : all_graphs(n)) {
            std::set<std::string> seen;
            for (int v = 0; v < n; ++v) {
                LabelledGraph f = set_label(base, 1, v);
                std::string key = labelled_key(f);
                if (!seen.insert(key).second) continue;
                if (construction_depth(f, k, q, true) >= 0) family.push_back(f);
            }
        }
    int nv = g.num_vertices();
    std::vector<std::vector<long long>> profG(nv), profH(nv);
    for (auto& f : family) {
        auto pg = hom_profile(f, g);
        auto ph = hom_profile(f, h);
        for (int v = 0; v < nv; ++v) {
            profG[v].push_back(pg[v]);
            profH[v].push_back(ph[v]);
        }
        // refutation check per witness: multisets of the new column
        auto cg = pg, chh = ph;
        std::sort(cg.begin(), cg.end());
        std::sort(chh.begin(), chh.end());
        if (cg != chh) {
            out.refuted = true;
            out.witness = f;
            return out;
        }
    }
    // profiles match as multisets column-by-column; build a bijection on
    // full-profile equality classes
    std::vector<int> order_g(nv), order_h(nv);
    for (int v = 0; v < nv; ++v) order_g[v] = order_h[v] = v;
    std::sort(order_g.begin(), order_g.end(),
              [&](int a, int b) { return profG[a] < profG[b]; });
    std::sort(order_h.begin(), order_h.end(),
              [&](int a, int b) { return profH[a] < profH[b]; });
    std::vector<int> bijection(nv, -1);
    for (int i = 0; i < nv; ++i) {
        if (profG[order_g[i]] != profH[order_h[i]]) {
            // full profiles disagree although every column matched; witness
            // is the first differing column
            size_t col = 0;
            while (profG[order_g[i]][col] == profH[order_h[i]][col]) ++col;
            out.refuted = true;
            out.witness = family[col];
            return out;
        }
        bijection[order_g[i]] = order_h[i];
    }
    out.bijection = bijection;
    return out;
}

SeparationReport separation_experiment(int k, int q, int pebble_size_cap) {
    SeparationReport report;
    if (k == q) {
        report.note = "no witness exists: with k = q the game class equals the bounded-depth class";
        return report;
    }
    if (k == 2 && q >= 3) {
        int len = 2 * q + 1;  // robber holds out on this path, depth still fits
        LabelledGraph f = path_graph(len);
        if (treedepth_oracle(f) > q) {
            report.note = "no witness within caps";
            return report;
        }
        report.witness_found = true;
        report.witness = f;
        report.robber_wins = !solve(f, k, q, Variant::CR).cop_wins;
        report.treewidth = treewidth_oracle(f);
        report.treedepth = treedepth_oracle(f);
        auto [g0, g1] = cfi_pair(f);
        report.hom_g0 = hom_count(f, g0);
        report.hom_g1 = hom_count(f, g1);
        if (g0.num_vertices() <= pebble_size_cap) {
            report.pebble_checked = true;
            report.duplicator_wins =
                bijective_pebble_game(g0, g1, k, q) == PebbleWinner::Duplicator;
        }
        return report;
    }
    report.note = "no witness within caps";
    return report;
}

std::string SeparationReport::to_json() const {
    nlohmann::json j;
    j["witness_found"] = witness_found;
    j["note"] = note;
    if (witness_found) {
        std::ostringstream g;
        write_graph_text(witness, g);
        j["witness"] = g.str();
        j["robber_wins"] = robber_wins;
        j["treewidth"] = treewidth;
        j["treedepth"] = treedepth;
        j["pebble_checked"] = pebble_checked;
        if (pebble_checked) j["duplicator_wins"] = duplicator_wins;
        j["hom_g0"] = hom_g0;
        j["hom_g1"] = hom_g1;
    }
    return j.dump(2);
}

}  // namespace deepwide
