#include "deepwide/hom.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include <omp.h>

#include "deepwide/decomp.hpp"

namespace deepwide {

namespace {

long long checked_mul(long long a, long long b) {
    __int128 r = (__int128)a * b;
    if (r > std::numeric_limits<long long>::max()) throw std::overflow_error("hom count overflow");
    return (long long)r;
}

long long checked_add(long long a, long long b) {
    __int128 r = (__int128)a + b;
    if (r > std::numeric_limits<long long>::max()) throw std::overflow_error("hom count overflow");
    return (long long)r;
}

// The pattern side may be arbitrarily large (quantum-graph terms); the
// target side stays within the bitmask bound.
struct HomInstance {
    const LabelledGraph* f;
    const LabelledGraph* g;
    std::vector<std::vector<int>> adjF;  // no loops
    std::vector<std::uint64_t> allowedG;  // adjacency masks of g, plus loop identity
    std::vector<bool> loopF, loopG;
    std::vector<int> forced;  // f vertex -> g vertex or -1
    bool infeasible = false;

    // per component of the unforced part: vertex order with assigned-first
    std::vector<std::vector<int>> comps;

    HomInstance(const LabelledGraph& f_, const LabelledGraph& g_) : f(&f_), g(&g_) {
        if (g_.num_vertices() > LabelledGraph::kMaxMaskVertices)
            throw std::invalid_argument("hom_count: target graph too large");
        adjF = f_.neighbour_lists();
        loopF.assign(f_.num_vertices(), false);
        for (auto& [u, v] : f_.edges())
            if (u == v) loopF[u] = true;
        loopG.assign(g_.num_vertices(), false);
        for (auto& [u, v] : g_.edges())
            if (u == v) loopG[u] = true;
        auto adjG = g_.adjacency();
        allowedG.resize(g_.num_vertices());
        for (int y = 0; y < g_.num_vertices(); ++y)
            allowedG[y] = adjG[y] | (loopG[y] ? bit(y) : 0);

        forced.assign(f_.num_vertices(), -1);
        for (int i = 1; i <= f_.max_label_index(); ++i) {
            if (!f_.has_label(i)) continue;
            if (!g_.has_label(i))
                throw std::invalid_argument("hom_count: label " + std::to_string(i) +
                                            " of f is unassigned in g");
            int u = f_.label(i), y = g_.label(i);
            if (forced[u] >= 0 && forced[u] != y) {
                infeasible = true;  // one vertex, two labels pinned apart
                return;
            }
            forced[u] = y;
        }
        // constraints among forced vertices
        for (auto& [u, v] : f_.edges()) {
            if (forced[u] < 0 || forced[v] < 0) continue;
            if (u == v || forced[u] == forced[v]) {
                if (!loopG[forced[u]]) infeasible = true;
            } else if (!g_.has_edge(forced[u], forced[v])) {
                infeasible = true;
            }
        }
        if (infeasible) return;
        // components over the unforced vertices, assigned-neighbour-first order
        int n = f_.num_vertices();
        std::vector<int> comp(n, -1);
        for (int seed = 0; seed < n; ++seed) {
            if (forced[seed] >= 0 || comp[seed] >= 0) continue;
            std::vector<int> stack{seed}, members;
            comp[seed] = seed;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                members.push_back(v);
                for (int u : adjF[v])
                    if (forced[u] < 0 && comp[u] < 0) {
                        comp[u] = seed;
                        stack.push_back(u);
                    }
            }
            // reorder: vertices with an already-placed neighbour first
            std::vector<int> order;
            std::vector<bool> in(n, false);
            auto anchored = [&](int v) {
                for (int u : adjF[v])
                    if (forced[u] >= 0 || in[u]) return true;
                return false;
            };
            while (order.size() < members.size()) {
                int pick = -1;
                for (int v : members) {
                    if (in[v]) continue;
                    if (anchored(v)) {
                        pick = v;
                        break;
                    }
                    if (pick < 0) pick = v;
                }
                in[pick] = true;
                order.push_back(pick);
            }
            comps.push_back(order);
        }
    }

    bool image_ok(int u, int y, const std::vector<int>& image) const {
        if (loopF[u] && !loopG[y]) return false;
        for (int w : adjF[u]) {
            int x = image[w];
            if (x < 0) continue;
            if (x == y) {
                if (!loopG[y]) return false;
            } else if (!(allowedG[y] >> x & 1)) {
                return false;
            }
        }
        return true;
    }

    template <class Num>
    Num count_component(const std::vector<int>& order, std::vector<int>& image,
                        size_t idx) const {
        if (idx == order.size()) return Num(1);
        int u = order[idx];
        Num total(0);
        for (int y = 0; y < g->num_vertices(); ++y) {
            if (!image_ok(u, y, image)) continue;
            image[u] = y;
            total = add(total, count_component<Num>(order, image, idx + 1));
            image[u] = -1;
        }
        return total;
    }

    static long long add(long long a, long long b) { return checked_add(a, b); }
    static BigInt add(BigInt a, const BigInt& b) { return a + b; }

    long long run(bool parallel) const {
        if (infeasible) return 0;
        long long total = 1;
        for (auto& order : comps) {
            long long sub = 0;
            if (parallel) {
#pragma omp parallel for schedule(dynamic) reduction(+ : sub)
                for (int y = 0; y < g->num_vertices(); ++y) {
                    std::vector<int> image = forced;
                    if (!image_ok(order[0], y, image)) continue;
                    image[order[0]] = y;
                    sub += count_component<long long>(order, image, 1);
                }
            } else {
                std::vector<int> image = forced;
                sub = count_component<long long>(order, image, 0);
            }
            if (sub == 0) return 0;
            total = checked_mul(total, sub);
        }
        return total;
    }

    BigInt run_big() const {
        if (infeasible) return BigInt(0);
        BigInt total(1);
        for (auto& order : comps) {
            std::vector<int> image = forced;
            BigInt sub = count_component<BigInt>(order, image, 0);
            if (sub.is_zero()) return BigInt(0);
            total = total * sub;
        }
        return total;
    }
};

}  // namespace

long long hom_count_serial(const LabelledGraph& f, const LabelledGraph& g) {
    return HomInstance(f, g).run(false);
}

long long hom_count(const LabelledGraph& f, const LabelledGraph& g) {
    return HomInstance(f, g).run(true);
}

BigInt hom_count_big(const LabelledGraph& f, const LabelledGraph& g) {
    return HomInstance(f, g).run_big();
}

namespace {

// Min-degree elimination decomposition of f, good enough for the DP.
TreeDecomposition greedy_decomposition(const LabelledGraph& f) {
    int n = f.num_vertices();
    std::vector<std::uint64_t> adj = f.adjacency();
    std::uint64_t alive = n == 0 ? 0 : bit(n) - 1;
    std::vector<std::uint64_t> bagOf(n, 0);
    std::vector<int> elimOrder;
    for (int step = 0; step < n; ++step) {
        int best = -1, bestDeg = n + 1;
        for (int v : bits_of(alive)) {
            int d = popcount64(adj[v] & alive);
            if (d < bestDeg) {
                bestDeg = d;
                best = v;
            }
        }
        std::uint64_t nb = adj[best] & alive;
        bagOf[best] = nb | bit(best);
        for (int a : bits_of(nb)) adj[a] |= nb & ~bit(a);  // fill-in
        alive &= ~bit(best);
        elimOrder.push_back(best);
    }
    TreeDecomposition td;
    td.tree.parent.assign(n == 0 ? 1 : n, -1);
    td.bags.assign(n == 0 ? 1 : n, 0);
    if (n == 0) {
        td.tree.root = 0;
        return td;
    }
    std::vector<int> posOf(n, 0);
    for (int i = 0; i < n; ++i) posOf[elimOrder[i]] = i;
    for (int i = 0; i < n; ++i) {
        int v = elimOrder[i];
        td.bags[i] = bagOf[v];
        int parent = -1;
        int bestPos = n;  // the neighbour in the bag eliminated next
        for (int u : bits_of(bagOf[v] & ~bit(v)))
            if (posOf[u] > i && posOf[u] < bestPos) bestPos = posOf[u];
        if (bestPos < n) parent = bestPos;
        td.tree.parent[i] = parent;
    }
    int prev = -1;  // link parentless nodes into a chain ending at the root
    for (int i = 0; i < n; ++i)
        if (td.tree.parent[i] == -1) {
            if (prev >= 0) td.tree.parent[prev] = i;
            prev = i;
        }
    td.tree.root = prev;
    return td;
}

}  // namespace

long long hom_count_dp(const LabelledGraph& f, const LabelledGraph& g) {
    if (f.num_vertices() > LabelledGraph::kMaxMaskVertices)
        throw std::invalid_argument("hom_count_dp: pattern too large, use hom_count");
    HomInstance inst(f, g);  // reuse label handling
    if (inst.infeasible) return 0;
    if (f.num_vertices() == 0) return 1;
    TreeDecomposition nice = make_nice(f, greedy_decomposition(f));
    auto ch = nice.tree.children();
    auto order = nice.tree.bfs_order();

    using Table = std::map<std::vector<int>, long long>;
    std::vector<Table> tables(nice.tree.size());
    std::vector<bool> loopG(g.num_vertices(), false);
    for (auto& [u, v] : g.edges())
        if (u == v) loopG[u] = true;
    auto edge_ok = [&](int x, int y) { return x == y ? loopG[x] : g.has_edge(x, y); };

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int t = *it;
        auto bagList = bits_of(nice.bags[t]);
        if (ch[t].empty()) {
            tables[t][{}] = 1;
            continue;
        }
        if (ch[t].size() == 2) {
            Table out;
            for (auto& [key, c1] : tables[ch[t][0]]) {
                auto it2 = tables[ch[t][1]].find(key);
                if (it2 != tables[ch[t][1]].end()) out[key] = checked_mul(c1, it2->second);
            }
            tables[t] = std::move(out);
            tables[ch[t][0]].clear();
            tables[ch[t][1]].clear();
            continue;
        }
        int s = ch[t][0];
        auto childList = bits_of(nice.bags[s]);
        std::uint64_t gained = nice.bags[t] & ~nice.bags[s];
        Table out;
        if (gained) {  // introduce node: extend assignments by the new vertex
            int v = lowest_bit(gained);
            int vSlot = (int)(std::find(bagList.begin(), bagList.end(), v) - bagList.begin());
            for (auto& [key, cnt] : tables[s]) {
                for (int y = 0; y < g.num_vertices(); ++y) {
                    if (inst.forced[v] >= 0 && inst.forced[v] != y) continue;
                    if (inst.loopF[v] && !loopG[y]) continue;
                    bool ok = true;
                    for (size_t i = 0; i < childList.size() && ok; ++i)
                        if (f.has_edge(v, childList[i]) && !edge_ok(y, key[i])) ok = false;
                    if (!ok) continue;
                    std::vector<int> nk = key;
                    nk.insert(nk.begin() + vSlot, y);
                    out[nk] += cnt;
                }
            }
        } else {  // forget node: sum the dropped vertex out
            int v = lowest_bit(nice.bags[s] & ~nice.bags[t]);
            int vSlot = (int)(std::find(childList.begin(), childList.end(), v) - childList.begin());
            for (auto& [key, cnt] : tables[s]) {
                std::vector<int> nk = key;
                nk.erase(nk.begin() + vSlot);
                out[nk] = checked_add(out[nk], cnt);
            }
        }
        tables[t] = std::move(out);
        tables[s].clear();
    }
    auto& rootTable = tables[nice.tree.root];
    return rootTable.count({}) ? rootTable[{}] : 0;
}

std::vector<long long> hom_profile(const LabelledGraph& f, const LabelledGraph& g) {
    auto idx = f.label_indices();
    if (idx.size() != 1)
        throw std::invalid_argument("hom_profile: f must carry exactly one label");
    int l = idx[0];
    std::vector<long long> out(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) out[v] = hom_count(f, set_label(g, l, v));
    return out;
}

}  // namespace deepwide
