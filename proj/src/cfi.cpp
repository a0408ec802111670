#include "deepwide/cfi.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace deepwide {

namespace {

// Edge ids of the base incident to v (base edges are sorted, ids are stable).
std::vector<int> incident_edges(const LabelledGraph& g, int v) {
    std::vector<int> ids;
    for (int e = 0; e < g.num_edges(); ++e) {
        auto& [a, b] = g.edges()[e];
        if (a == v || b == v) ids.push_back(e);
    }
    return ids;
}

}  // namespace

int CfiGraph::vertex_index(int v, std::uint64_t subset) const {
    for (int i = 0; i < (int)projection.size(); ++i)
        if (projection[i] == v && edge_subset[i] == subset) return i;
    return -1;
}

CfiGraph cfi(const LabelledGraph& g, std::uint64_t twist_set) {
    if (!is_connected(g)) throw std::invalid_argument("cfi: base graph must be connected");
    if (g.has_loop()) throw std::invalid_argument("cfi: base graph must be loopless");
    if (g.num_edges() > 64) throw std::invalid_argument("cfi: too many base edges");

    CfiGraph out;
    out.base = g;
    out.twist_set = twist_set;

    for (int v = 0; v < g.num_vertices(); ++v) {
        auto ids = incident_edges(g, v);
        int parity = (twist_set >> v) & 1;
        int d = (int)ids.size();
        for (std::uint64_t sub = 0; sub < bit(d); ++sub) {
            if (popcount64(sub) % 2 != parity) continue;
            std::uint64_t mask = 0;
            for (int j = 0; j < d; ++j)
                if (sub >> j & 1) mask |= bit(ids[j]);
            out.projection.push_back(v);
            out.edge_subset.push_back(mask);
        }
    }
    int nv = (int)out.projection.size();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j) {
            int u = out.projection[i], v = out.projection[j];
            if (u == v || !g.has_edge(u, v)) continue;
            int eid = -1;
            for (int e = 0; e < g.num_edges(); ++e)
                if (g.edges()[e] == std::make_pair(std::min(u, v), std::max(u, v))) eid = e;
            bool inI = out.edge_subset[i] >> eid & 1;
            bool inJ = out.edge_subset[j] >> eid & 1;
            if (inI == inJ) edges.emplace_back(i, j);
        }
    out.graph = LabelledGraph(nv, std::move(edges));
    return out;
}

std::pair<LabelledGraph, LabelledGraph> cfi_pair(const LabelledGraph& g) {
    return {cfi(g, 0).graph, cfi(g, bit(0)).graph};
}

std::vector<int> twist_toggle_map(const LabelledGraph& g, std::uint64_t U,
                                  const std::vector<int>& path) {
    if (path.empty()) throw std::invalid_argument("twist_toggle_map: empty path");
    for (size_t i = 0; i + 1 < path.size(); ++i)
        if (!g.has_edge(path[i], path[i + 1]))
            throw std::invalid_argument("twist_toggle_map: not a path in g");
    {
        auto sorted = path;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("twist_toggle_map: path repeats a vertex");
    }
    std::uint64_t target = U ^ bit(path.front()) ^ bit(path.back());
    CfiGraph a = cfi(g, U);
    CfiGraph b = cfi(g, target);

    auto edge_id = [&](int x, int y) {
        auto e = std::make_pair(std::min(x, y), std::max(x, y));
        for (int i = 0; i < g.num_edges(); ++i)
            if (g.edges()[i] == e) return i;
        return -1;
    };
    // Toggle mask per base vertex: the path edges incident to it.
    std::vector<std::uint64_t> toggle(g.num_vertices(), 0);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        int e = edge_id(path[i], path[i + 1]);
        toggle[path[i]] |= bit(e);
        toggle[path[i + 1]] |= bit(e);
    }

    std::vector<int> map(a.projection.size(), -1);
    for (int i = 0; i < (int)a.projection.size(); ++i) {
        int w = a.projection[i];
        int j = b.vertex_index(w, a.edge_subset[i] ^ toggle[w]);
        if (j < 0) throw std::logic_error("twist_toggle_map: parity mismatch");
        map[i] = j;
    }
    return map;
}

std::vector<int> twist_isomorphism(const LabelledGraph& g, int u, int v,
                                   const std::vector<int>& path) {
    if (path.front() != u || path.back() != v)
        throw std::invalid_argument("twist_isomorphism: path endpoints do not match");
    return twist_toggle_map(g, bit(u), path);
}

namespace {

std::vector<int> shortest_path(const LabelledGraph& g, int from, int to) {
    auto adj = g.adjacency();
    std::vector<int> prev(g.num_vertices(), -1);
    std::vector<int> queue{from};
    prev[from] = from;
    for (size_t qi = 0; qi < queue.size(); ++qi)
        for (int w : bits_of(adj[queue[qi]]))
            if (prev[w] < 0) {
                prev[w] = queue[qi];
                queue.push_back(w);
            }
    if (prev[to] < 0) throw std::logic_error("shortest_path: target unreachable");
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

std::vector<int> cfi_normalize_map(const LabelledGraph& g, std::uint64_t U) {
    std::vector<int> total;
    {
        CfiGraph start = cfi(g, U);
        total.resize(start.projection.size());
        for (size_t i = 0; i < total.size(); ++i) total[i] = (int)i;
    }
    std::uint64_t cur = U;
    auto apply = [&](const std::vector<int>& step) {
        for (auto& x : total) x = step[x];
    };
    while (popcount64(cur) >= 2) {
        int u = lowest_bit(cur);
        int v = lowest_bit(cur & ~bit(u));
        apply(twist_toggle_map(g, cur, shortest_path(g, u, v)));
        cur ^= bit(u) | bit(v);
    }
    if (cur != 0 && cur != bit(0)) {
        int w = lowest_bit(cur);
        apply(twist_toggle_map(g, cur, shortest_path(g, w, 0)));
        cur = bit(0);
    }
    return total;
}

}  // namespace deepwide
