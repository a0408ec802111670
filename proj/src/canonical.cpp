#include "deepwide/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

namespace deepwide {

namespace {

// Iterated neighbourhood signatures: isomorphism-invariant strings, so the
// values are comparable across different graphs. Hashing keeps them short;
// collisions only coarsen the colouring, which is always sound.
std::vector<std::string> signature_colors(const LabelledGraph& g, int rounds = 3) {
    int n = g.num_vertices();
    auto adj = g.neighbour_lists();
    std::vector<bool> loop(n, false);
    for (auto& [u, v] : g.edges())
        if (u == v) loop[u] = true;
    std::vector<std::string> sig(n);
    for (int v = 0; v < n; ++v) {
        long long labelBits = 0;
        for (int i = 1; i <= g.max_label_index(); ++i)
            if (g.label(i) == v) labelBits |= 1ll << i;
        sig[v] = std::to_string(adj[v].size()) + "." + std::to_string(labelBits) + "." +
                 (loop[v] ? "1" : "0");
    }
    for (int round = 0; round < rounds; ++round) {
        std::vector<std::string> next(n);
        for (int v = 0; v < n; ++v) {
            std::vector<std::string> nb;
            for (int u : adj[v]) nb.push_back(sig[u]);
            std::sort(nb.begin(), nb.end());
            std::string joined = sig[v] + "(";
            for (auto& s : nb) joined += s + ",";
            joined += ")";
            next[v] = std::to_string(std::hash<std::string>{}(joined));
        }
        sig = std::move(next);
    }
    return sig;
}

// Dense ids from the signature colours, for pruning within one graph.
std::vector<int> refine_colors(const LabelledGraph& g) {
    auto sig = signature_colors(g);
    std::map<std::string, int> ids;
    std::vector<int> color(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v)
        color[v] = ids.emplace(sig[v], (int)ids.size()).first->second;
    return color;
}

struct CanonState {
    const LabelledGraph* g;
    int n;
    std::vector<std::uint64_t> adj;
    std::vector<bool> loop;
    std::vector<int> color;

    // Composite per-position value ordered lexicographically: adjacency
    // column against the placed prefix, loop bit, labels carried.
    struct Val {
        std::uint64_t col;
        int loopBit;
        long long labels;
        auto operator<=>(const Val&) const = default;
    };

    std::vector<int> cur;
    std::vector<bool> used;
    std::vector<Val> curVals, bestVals;
    bool haveBest = false;

    Val value(int v, int pos) const {
        std::uint64_t c = 0;
        for (int i = 0; i < pos; ++i)
            if (adj[v] >> cur[i] & 1) c |= bit(i);
        long long labelBits = 0;
        for (int i = 1; i <= g->max_label_index(); ++i)
            if (g->label(i) == v) labelBits |= 1ll << i;
        return Val{c, loop[v] ? 1 : 0, labelBits};
    }

    // DFS for the lexicographically smallest value string. eq: the values
    // so far coincide with the current best prefix; returns whether the
    // best was replaced inside this subtree (which makes the prefix on the
    // current path the new best prefix).
    bool search(int pos, bool eq) {
        if (pos == n) {
            if (!haveBest || !eq) {
                bestVals = curVals;
                haveBest = true;
                return true;
            }
            return false;
        }
        std::vector<std::pair<Val, int>> cands;
        for (int v = 0; v < n; ++v)
            if (!used[v]) cands.emplace_back(value(v, pos), v);
        std::sort(cands.begin(), cands.end());
        bool any = false;
        for (auto& [val, v] : cands) {
            bool childEq = false;
            if (haveBest && eq) {
                if (val > bestVals[pos]) break;  // sorted: the rest is worse
                childEq = val == bestVals[pos];
            }
            cur[pos] = v;
            used[v] = true;
            curVals[pos] = val;
            if (search(pos + 1, childEq)) {
                any = true;
                eq = true;  // best now runs through the current prefix
            }
            used[v] = false;
        }
        return any;
    }
};

std::string canonical_impl(const LabelledGraph& g) {
    int n = g.num_vertices();
    CanonState st;
    st.g = &g;
    st.n = n;
    st.adj = g.adjacency();
    st.loop.assign(n, false);
    for (auto& [u, v] : g.edges())
        if (u == v) st.loop[u] = true;
    st.color = refine_colors(g);
    st.cur.resize(n);
    st.used.assign(n, false);
    st.curVals.resize(n);
    st.search(0, true);

    std::ostringstream out;
    out << n << ";" << (g.loops_allowed() ? 1 : 0) << ";";
    for (int pos = 0; pos < n; ++pos) {
        auto& val = st.bestVals[pos];
        out << val.col << "," << val.loopBit << "," << val.labels << ";";
    }
    return out.str();
}

}  // namespace

std::string canonical_form(const LabelledGraph& g, int size_cap) {
    if (g.num_vertices() > size_cap)
        throw std::invalid_argument("canonical_form: size cap exceeded");
    return canonical_impl(g);
}

std::string labelled_key(const LabelledGraph& g) {
    if (g.num_vertices() > LabelledGraph::kMaxMaskVertices)
        throw std::invalid_argument("labelled_key: graph too large for the exact form");
    return canonical_impl(g);
}

std::string iso_invariant_key(const LabelledGraph& g) {
    auto sig = signature_colors(g);
    std::sort(sig.begin(), sig.end());
    std::ostringstream out;
    out << g.num_vertices() << ";" << g.num_edges() << ";";
    for (auto& s : sig) out << s << "|";
    return out.str();
}

bool verify_isomorphism(const LabelledGraph& g, const LabelledGraph& h,
                        const std::vector<int>& map) {
    int n = g.num_vertices();
    if (h.num_vertices() != n || (int)map.size() != n) return false;
    std::vector<bool> hit(n, false);
    for (int v = 0; v < n; ++v) {
        if (map[v] < 0 || map[v] >= n || hit[map[v]]) return false;
        hit[map[v]] = true;
    }
    if (g.num_edges() != h.num_edges()) return false;
    for (auto& [u, v] : g.edges())
        if (!h.has_edge(map[u], map[v])) return false;
    int maxIdx = std::max(g.max_label_index(), h.max_label_index());
    for (int i = 1; i <= maxIdx; ++i) {
        int gv = g.label(i), hv = h.label(i);
        if ((gv < 0) != (hv < 0)) return false;
        if (gv >= 0 && map[gv] != hv) return false;
    }
    return true;
}

std::optional<std::vector<int>> isomorphic(const LabelledGraph& g, const LabelledGraph& h,
                                           int size_cap) {
    if (g.num_vertices() > size_cap || h.num_vertices() > size_cap)
        throw std::invalid_argument("isomorphic: size cap exceeded");
    if (g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges())
        return std::nullopt;
    int n = g.num_vertices();

    // signature colours are comparable across graphs: mismatching multisets
    // already refute, matching ones prune the search
    auto sigG = signature_colors(g), sigH = signature_colors(h);
    {
        auto sg = sigG, sh = sigH;
        std::sort(sg.begin(), sg.end());
        std::sort(sh.begin(), sh.end());
        if (sg != sh) return std::nullopt;
    }
    auto adjG = g.neighbour_lists(), adjH = h.neighbour_lists();

    std::vector<int> map(n, -1);
    std::vector<bool> usedH(n, false);
    // labels pin vertices outright
    int maxIdx = std::max(g.max_label_index(), h.max_label_index());
    for (int i = 1; i <= maxIdx; ++i) {
        int gv = g.label(i), hv = h.label(i);
        if ((gv < 0) != (hv < 0)) return std::nullopt;
        if (gv >= 0) {
            if (map[gv] >= 0 && map[gv] != hv) return std::nullopt;
            if (usedH[hv] && map[gv] != hv) return std::nullopt;
            map[gv] = hv;
            usedH[hv] = true;
        }
    }
    for (int v = 0; v < n; ++v) {
        if (map[v] < 0) continue;
        for (int u = 0; u < n; ++u) {
            if (map[u] < 0) continue;
            if (g.has_edge(u, v) != h.has_edge(map[u], map[v])) return std::nullopt;
        }
    }

    std::vector<int> invH(n, -1);
    for (int v = 0; v < n; ++v)
        if (map[v] >= 0) invH[map[v]] = v;

    // unmapped vertices, previously-placed neighbours first
    std::vector<int> order;
    {
        std::vector<bool> in(n, false);
        for (int v = 0; v < n; ++v)
            if (map[v] >= 0) in[v] = true;
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (map[v] < 0) rest.push_back(v);
        while (!rest.empty()) {
            size_t pick = 0;
            for (size_t i = 0; i < rest.size(); ++i) {
                bool anchored = false;
                for (int u : adjG[rest[i]])
                    if (in[u]) anchored = true;
                if (anchored) {
                    pick = i;
                    break;
                }
            }
            int v = rest[pick];
            rest.erase(rest.begin() + pick);
            in[v] = true;
            order.push_back(v);
        }
    }

    auto consistent = [&](int gv, int hv) {
        if (sigG[gv] != sigH[hv]) return false;
        if (g.has_edge(gv, gv) != h.has_edge(hv, hv)) return false;
        if (adjG[gv].size() != adjH[hv].size()) return false;
        for (int u : adjG[gv])
            if (map[u] >= 0 && !h.has_edge(hv, map[u])) return false;
        for (int w : adjH[hv])
            if (invH[w] >= 0 && !g.has_edge(gv, invH[w])) return false;
        return true;
    };

    std::function<bool(size_t)> rec = [&](size_t idx) -> bool {
        if (idx == order.size()) return true;
        int gv = order[idx];
        for (int hv = 0; hv < n; ++hv) {
            if (usedH[hv] || !consistent(gv, hv)) continue;
            map[gv] = hv;
            usedH[hv] = true;
            invH[hv] = gv;
            if (rec(idx + 1)) return true;
            usedH[hv] = false;
            invH[hv] = -1;
            map[gv] = -1;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    if (!verify_isomorphism(g, h, map)) return std::nullopt;
    return map;
}

std::vector<LabelledGraph> all_graphs(int n) {
    if (n < 1) throw std::invalid_argument("all_graphs: n >= 1");
    std::vector<LabelledGraph> cur = {LabelledGraph(1)};
    for (int m = 2; m <= n; ++m) {
        std::map<std::string, LabelledGraph> seen;
        for (const auto& g : cur) {
            // Extend by one vertex with every possible neighbourhood.
            for (std::uint64_t mask = 0; mask < bit(m - 1); ++mask) {
                auto edges = g.edges();
                for (int u : bits_of(mask)) edges.emplace_back(u, m - 1);
                LabelledGraph h(m, std::move(edges));
                seen.emplace(canonical_form(h), h);
            }
        }
        cur.clear();
        for (auto& [k, g] : seen) cur.push_back(g);
    }
    return cur;
}

std::vector<LabelledGraph> all_connected_graphs(int n) {
    std::vector<LabelledGraph> out;
    for (auto& g : all_graphs(n))
        if (is_connected(g)) out.push_back(g);
    return out;
}

}  // namespace deepwide
