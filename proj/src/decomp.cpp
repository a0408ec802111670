#include "deepwide/decomp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace deepwide {

std::vector<std::vector<int>> RootedTree::children() const {
    std::vector<std::vector<int>> ch(parent.size());
    for (int v = 0; v < (int)parent.size(); ++v)
        if (parent[v] >= 0) ch[parent[v]].push_back(v);
    return ch;
}

std::vector<int> RootedTree::bfs_order() const {
    auto ch = children();
    std::vector<int> order;
    std::deque<int> queue{root};
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        order.push_back(t);
        for (int c : ch[t]) queue.push_back(c);
    }
    return order;
}

bool RootedTree::is_ancestor(int a, int d) const {
    for (int x = d; x >= 0; x = parent[x])
        if (x == a) return true;
    return false;
}

void RootedTree::validate() const {
    int n = size();
    if (root < 0 || root >= n || parent[root] != -1)
        throw std::invalid_argument("RootedTree: bad root");
    int roots = 0;
    for (int v = 0; v < n; ++v) {
        if (parent[v] == -1) ++roots;
        else if (parent[v] < 0 || parent[v] >= n)
            throw std::invalid_argument("RootedTree: bad parent");
    }
    if (roots != 1) throw std::invalid_argument("RootedTree: exactly one root required");
    if ((int)bfs_order().size() != n) throw std::invalid_argument("RootedTree: not connected");
}

Validation validate_td(const LabelledGraph& g, const TreeDecomposition& td) {
    td.tree.validate();
    if ((int)td.bags.size() != td.tree.size()) return Validation::fail("bag count mismatch");
    std::uint64_t all = g.num_vertices() == 0 ? 0 : bit(g.num_vertices()) - 1;
    std::uint64_t covered = 0;
    for (auto b : td.bags) {
        if (b & ~all) return Validation::fail("bag references unknown vertex");
        covered |= b;
    }
    if (covered != all) return Validation::fail("TD.1: vertex not covered by any bag");
    for (auto& [u, v] : g.edges()) {
        bool found = false;
        for (auto b : td.bags)
            if ((b >> u & 1) && (b >> v & 1)) found = true;
        if (!found)
            return Validation::fail("TD.1: edge " + std::to_string(u) + "-" + std::to_string(v) +
                                    " not inside any bag");
    }
    // TD.2: occurrences of every vertex induce a connected subtree.
    auto ch = td.tree.children();
    for (int v = 0; v < g.num_vertices(); ++v) {
        int count = 0, top = -1;
        for (int t = 0; t < td.tree.size(); ++t)
            if (td.bags[t] >> v & 1) {
                ++count;
                if (top == -1) top = t;
            }
        if (count == 0) continue;
        // find the occurrence closest to the root, then BFS inside occurrences
        for (int t = 0; t < td.tree.size(); ++t) {
            if (!(td.bags[t] >> v & 1)) continue;
            if (td.tree.is_ancestor(t, top)) top = t;
        }
        int reached = 0;
        std::deque<int> queue{top};
        std::vector<bool> seen(td.tree.size(), false);
        seen[top] = true;
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop_front();
            ++reached;
            for (int c : ch[t])
                if (!seen[c] && (td.bags[c] >> v & 1)) {
                    seen[c] = true;
                    queue.push_back(c);
                }
        }
        if (reached != count)
            return Validation::fail("TD.2: occurrences of vertex " + std::to_string(v) +
                                    " are disconnected");
    }
    return {};
}

int td_width(const TreeDecomposition& td) {
    int w = -1;
    for (auto b : td.bags) w = std::max(w, popcount64(b) - 1);
    return w;
}

namespace {

int rooted_depth(const TreeDecomposition& td, int root) {
    // parent structure re-derived from the undirected tree, rooted at root
    int n = td.tree.size();
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v)
        if (td.tree.parent[v] >= 0) {
            adj[v].push_back(td.tree.parent[v]);
            adj[td.tree.parent[v]].push_back(v);
        }
    int best = 0;
    std::deque<std::pair<int, std::pair<int, std::uint64_t>>> queue;  // node, (prev, union)
    queue.push_back({root, {-1, td.bags[root]}});
    while (!queue.empty()) {
        auto [t, st] = queue.front();
        auto [prev, uni] = st;
        queue.pop_front();
        best = std::max(best, popcount64(uni));
        for (int c : adj[t])
            if (c != prev) queue.push_back({c, {t, uni | td.bags[c]}});
    }
    return best;
}

}  // namespace

int td_depth(const TreeDecomposition& td, int root) {
    if (root == -2) root = td.tree.root;
    if (root >= 0) return rooted_depth(td, root);
    int best = -1;
    for (int r = 0; r < td.tree.size(); ++r) {
        int d = rooted_depth(td, r);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

TreeDecomposition reroot(const TreeDecomposition& td, int new_root) {
    int n = td.tree.size();
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v)
        if (td.tree.parent[v] >= 0) {
            adj[v].push_back(td.tree.parent[v]);
            adj[td.tree.parent[v]].push_back(v);
        }
    TreeDecomposition out;
    out.bags = td.bags;
    out.tree.parent.assign(n, -1);
    out.tree.root = new_root;
    std::deque<int> queue{new_root};
    std::vector<bool> seen(n, false);
    seen[new_root] = true;
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        for (int c : adj[t])
            if (!seen[c]) {
                seen[c] = true;
                out.tree.parent[c] = t;
                queue.push_back(c);
            }
    }
    return out;
}

TreeDecomposition tighten(const LabelledGraph& g, const TreeDecomposition& td) {
    TreeDecomposition cur = td;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = 0; t < cur.tree.size() && !changed; ++t) {
            for (int v : bits_of(cur.bags[t])) {
                TreeDecomposition cand = cur;
                cand.bags[t] &= ~bit(v);
                if (validate_td(g, cand).ok) {
                    cur = cand;
                    changed = true;
                    break;
                }
            }
        }
    }
    return cur;
}

Validation validate_pfc(const LabelledGraph& g, const PebbleForestCover& pfc, int k) {
    int n = g.num_vertices();
    if ((int)pfc.parent.size() != n || (int)pfc.pebble.size() != n)
        return Validation::fail("cover arrays sized differently from the vertex set");
    for (int v = 0; v < n; ++v) {
        if (pfc.pebble[v] < 1 || pfc.pebble[v] > k)
            return Validation::fail("pebble out of range at vertex " + std::to_string(v));
        // acyclicity via root walk with step cap
        int steps = 0;
        for (int x = v; x >= 0; x = pfc.parent[x])
            if (++steps > n) return Validation::fail("parent map has a cycle");
    }
    auto ancestor = [&](int a, int d) {
        for (int x = d; x >= 0; x = pfc.parent[x])
            if (x == a) return true;
        return false;
    };
    for (auto& [u, v] : g.edges()) {
        if (u == v) continue;
        int lo = -1, hi = -1;
        if (ancestor(u, v)) {
            lo = u;
            hi = v;
        } else if (ancestor(v, u)) {
            lo = v;
            hi = u;
        } else {
            return Validation::fail("FC.1: edge " + std::to_string(u) + "-" + std::to_string(v) +
                                    " joins incomparable vertices");
        }
        for (int w = hi; w != lo; w = pfc.parent[w])
            if (pfc.pebble[w] == pfc.pebble[lo])
                return Validation::fail("FC.2: pebble of " + std::to_string(lo) +
                                        " reused at " + std::to_string(w) + " on edge " +
                                        std::to_string(u) + "-" + std::to_string(v));
    }
    return {};
}

int pfc_depth(const PebbleForestCover& pfc) {
    int best = 0;
    for (int v = 0; v < (int)pfc.parent.size(); ++v) {
        int d = 0;
        for (int x = v; x >= 0; x = pfc.parent[x]) ++d;
        best = std::max(best, d);
    }
    return best;
}

RootedTree ConstructionTree::shape() const {
    RootedTree t;
    t.root = root;
    t.parent.resize(nodes.size());
    for (int i = 0; i < (int)nodes.size(); ++i) t.parent[i] = nodes[i].parent;
    return t;
}

namespace {

// Edge set of a construction-tree node in root coordinates.
std::vector<std::pair<int, int>> edges_in_root(const ConstructionTree::Node& node) {
    std::vector<std::pair<int, int>> out;
    for (auto& [u, v] : node.graph.edges()) {
        int a = node.to_root[u], b = node.to_root[v];
        out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t vertices_in_root(const ConstructionTree::Node& node) {
    std::uint64_t m = 0;
    for (int x : node.to_root) m |= bit(x);
    return m;
}

// label index -> root vertex
std::map<int, int> labels_in_root(const ConstructionTree::Node& node) {
    std::map<int, int> out;
    for (int i = 1; i <= node.graph.max_label_index(); ++i)
        if (node.graph.has_label(i)) out[i] = node.to_root[node.graph.label(i)];
    return out;
}

}  // namespace

Validation validate_ct(const ConstructionTree& ct, int k, bool guarded) {
    RootedTree shape = ct.shape();
    shape.validate();
    auto ch = shape.children();
    for (int t = 0; t < (int)ct.nodes.size(); ++t) {
        const auto& node = ct.nodes[t];
        if ((int)node.to_root.size() != node.graph.num_vertices())
            return Validation::fail("to_root size mismatch at node " + std::to_string(t));
        for (int i = 1; i <= node.graph.max_label_index(); ++i)
            if (node.graph.has_label(i) && i > k)
                return Validation::fail("label index above k at node " + std::to_string(t));
        if (ch[t].empty()) {
            if (!node.graph.fully_labelled())
                return Validation::fail("CT.2: leaf " + std::to_string(t) + " not fully labelled");
            continue;
        }
        if (ch[t].size() == 1) {
            const auto& child = ct.nodes[ch[t][0]];
            if (vertices_in_root(node) != vertices_in_root(child) ||
                edges_in_root(node) != edges_in_root(child))
                return Validation::fail("CT.3: elimination changes the graph at node " +
                                        std::to_string(t));
            auto lp = labels_in_root(node), lc = labels_in_root(child);
            std::vector<int> removed;
            for (auto& [i, v] : lc)
                if (!lp.count(i)) removed.push_back(i);
            for (auto& [i, v] : lp)
                if (!lc.count(i) || lc[i] != v)
                    return Validation::fail("CT.3: label moved at node " + std::to_string(t));
            if (removed.size() != 1)
                return Validation::fail("CT.3: exactly one label must be removed at node " +
                                        std::to_string(t));
            if (guarded) {
                int rootV = lc[removed[0]];
                bool ok = false;
                for (auto& [a, b] : edges_in_root(child)) {
                    int other = a == rootV ? b : (b == rootV ? a : -1);
                    if (other < 0 || other == rootV) continue;
                    for (auto& [i2, v2] : lc)
                        if (v2 == other) ok = true;
                }
                if (!ok)
                    return Validation::fail("guarded: removed label has no labelled neighbour at node " +
                                            std::to_string(t));
            }
            continue;
        }
        // product node: union of children in root coordinates
        std::uint64_t verts = 0;
        std::vector<std::pair<int, int>> edges;
        std::map<int, int> labels;
        for (int c : ch[t]) {
            verts |= vertices_in_root(ct.nodes[c]);
            auto ce = edges_in_root(ct.nodes[c]);
            edges.insert(edges.end(), ce.begin(), ce.end());
            for (auto& [i, v] : labels_in_root(ct.nodes[c])) {
                auto it = labels.find(i);
                if (it != labels.end() && it->second != v)
                    return Validation::fail("CT.4: children disagree on label " + std::to_string(i));
                labels[i] = v;
            }
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        if (verts != vertices_in_root(node) || edges != edges_in_root(node) ||
            labels != labels_in_root(node))
            return Validation::fail("CT.4: node " + std::to_string(t) +
                                    " is not the product of its children");
    }
    return {};
}

int elimination_depth(const ConstructionTree& ct) {
    auto ch = ct.shape().children();
    std::vector<int> elim(ct.nodes.size(), 0);
    int best = 0;
    for (int t : ct.shape().bfs_order()) {
        if (t != ct.root) {
            int p = ct.nodes[t].parent;
            elim[t] = elim[p] + (ch[p].size() == 1 ? 1 : 0);
        }
        best = std::max(best, elim[t]);
    }
    return best;
}

TreeDecomposition ct_to_td(const ConstructionTree& ct) {
    TreeDecomposition td;
    td.tree = ct.shape();
    td.bags.resize(ct.nodes.size(), 0);
    for (int t = 0; t < (int)ct.nodes.size(); ++t) {
        std::uint64_t bag = 0;
        for (auto& [i, v] : labels_in_root(ct.nodes[t])) bag |= bit(v);
        td.bags[t] = bag;
    }
    return td;
}

bool is_nice(const LabelledGraph& g, const TreeDecomposition& td) {
    (void)g;
    auto ch = td.tree.children();
    for (int t = 0; t < td.tree.size(); ++t) {
        if (ch[t].empty()) {
            if (td.bags[t] != 0) return false;
            continue;
        }
        if (ch[t].size() == 1) {
            int s = ch[t][0];
            std::uint64_t bt = td.bags[t], bs = td.bags[s];
            bool intro = popcount64(bt & ~bs) == 1 && (bs & ~bt) == 0;
            bool forget = popcount64(bs & ~bt) == 1 && (bt & ~bs) == 0;
            if (!intro && !forget) return false;
            continue;
        }
        if (ch[t].size() != 2) return false;
        if (td.bags[t] != td.bags[ch[t][0]] || td.bags[t] != td.bags[ch[t][1]]) return false;
    }
    return td.bags[td.tree.root] == 0;
}

namespace {

struct NiceBuilder {
    std::vector<int> parent;
    std::vector<std::uint64_t> bags;

    int add(std::uint64_t bag, int par) {
        parent.push_back(par);
        bags.push_back(bag);
        return (int)parent.size() - 1;
    }
    // Chain from a node holding bag A down to bag B: drop A\B in increasing
    // vertex order, then add B\A. Returns the node holding B.
    int chain(int from, std::uint64_t B) {
        std::uint64_t A = bags[from];
        int cur = from;
        for (int v : bits_of(A & ~B)) {
            A &= ~bit(v);
            cur = add(A, cur);
        }
        for (int v : bits_of(B & ~A)) {
            A |= bit(v);
            cur = add(A, cur);
        }
        return cur;
    }
};

}  // namespace

TreeDecomposition make_nice(const LabelledGraph& g, const TreeDecomposition& td) {
    auto check = validate_td(g, td);
    if (!check.ok) throw std::invalid_argument("make_nice: invalid input: " + check.error);
    auto ch = td.tree.children();
    NiceBuilder nb;
    int root0 = nb.add(0, -1);

    // recursive construction; 'at' is a new-tree node whose bag equals the
    // original bag of 't'
    std::vector<std::pair<int, int>> stack;  // (original node, new node)
    int rTop = nb.chain(root0, td.bags[td.tree.root]);
    stack.push_back({td.tree.root, rTop});
    while (!stack.empty()) {
        auto [t, at] = stack.back();
        stack.pop_back();
        const auto& kids = ch[t];
        if (kids.empty()) {
            nb.chain(at, 0);
            continue;
        }
        if (kids.size() == 1) {
            int down = nb.chain(at, td.bags[kids[0]]);
            stack.push_back({kids[0], down});
            continue;
        }
        // binary join ladder over the children
        int handle = at;
        for (size_t i = 0; i + 1 < kids.size(); ++i) {
            int left = nb.add(nb.bags[handle], handle);
            int right = nb.add(nb.bags[handle], handle);
            int down = nb.chain(left, td.bags[kids[i]]);
            stack.push_back({kids[i], down});
            if (i + 2 == kids.size()) {
                int down2 = nb.chain(right, td.bags[kids[i + 1]]);
                stack.push_back({kids[i + 1], down2});
            } else {
                handle = right;
            }
        }
    }
    TreeDecomposition out;
    out.tree.parent = nb.parent;
    out.tree.root = root0;
    out.bags = nb.bags;
    return out;
}

ConstructionTree td_to_ct(const LabelledGraph& g, const TreeDecomposition& td, int k, int q) {
    if (!g.trimmed_labels().empty())
        throw std::invalid_argument("td_to_ct: input graph must be unlabelled");
    if (td_width(td) > k - 1) throw std::invalid_argument("td_to_ct: width exceeds k-1");
    if (td_depth(td) > q) throw std::invalid_argument("td_to_ct: depth exceeds q");
    TreeDecomposition nice = is_nice(g, td) ? td : make_nice(g, td);

    auto ch = nice.tree.children();
    int N = nice.tree.size();

    // colour per vertex, assigned top-down at its forget node
    std::vector<int> colour(g.num_vertices(), 0);
    for (int t : nice.tree.bfs_order()) {
        if (ch[t].size() != 1) continue;
        int s = ch[t][0];
        std::uint64_t gained = nice.bags[s] & ~nice.bags[t];
        if (!gained) continue;  // introduce node
        int v = lowest_bit(gained);
        std::uint64_t used = 0;
        for (int u : bits_of(nice.bags[t])) used |= bit(colour[u]);
        int c = 1;
        while (used >> c & 1) ++c;
        if (c > k) throw std::logic_error("td_to_ct: ran out of labels");
        colour[v] = c;
    }

    // subtree vertex unions
    std::vector<std::uint64_t> gamma(N, 0);
    auto order = nice.tree.bfs_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int t = *it;
        gamma[t] |= nice.bags[t];
        if (t != nice.tree.root) gamma[nice.tree.parent[t]] |= gamma[t];
    }

    ConstructionTree ct;
    auto graph_at = [&](std::uint64_t verts, std::uint64_t labelled) {
        ConstructionTree::Node node;
        node.to_root = bits_of(verts);
        node.graph = induced_subgraph(g, verts);
        std::vector<int> back(g.num_vertices(), -1);
        for (int i = 0; i < (int)node.to_root.size(); ++i) back[node.to_root[i]] = i;
        for (int v : bits_of(labelled)) node.graph.set_label_inplace(colour[v], back[v]);
        return node;
    };
    // map original nice node -> ct node id, built top-down
    std::vector<int> at(N, -1);
    for (int t : order) {
        auto node = graph_at(gamma[t], nice.bags[t]);
        node.parent = t == nice.tree.root ? -1 : at[nice.tree.parent[t]];
        ct.nodes.push_back(node);
        at[t] = (int)ct.nodes.size() - 1;
        // introduce nodes additionally get a fully labelled leaf child
        if (ch[t].size() == 1) {
            int s = ch[t][0];
            if (nice.bags[t] & ~nice.bags[s]) {
                auto leaf = graph_at(nice.bags[t], nice.bags[t]);
                leaf.parent = at[t];
                ct.nodes.push_back(leaf);
            }
        }
    }
    ct.root = at[nice.tree.root];
    return ct;
}

PebbleForestCover td_to_pfc(const LabelledGraph& g, const TreeDecomposition& td, int k) {
    TreeDecomposition nice = is_nice(g, td) ? td : make_nice(g, td);
    if (td_width(nice) > k - 1) throw std::invalid_argument("td_to_pfc: width exceeds k-1");
    int N = nice.tree.size();
    std::vector<int> tau(g.num_vertices(), -1);
    for (int t : nice.tree.bfs_order()) {
        std::uint64_t fresh =
            nice.bags[t] & ~(t == nice.tree.root ? 0 : nice.bags[nice.tree.parent[t]]);
        for (int v : bits_of(fresh)) {
            if (tau[v] != -1) throw std::logic_error("td_to_pfc: vertex introduced twice");
            tau[v] = t;
        }
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (tau[v] < 0) throw std::logic_error("td_to_pfc: vertex missing from every bag");

    // forest parent: the nearest strict tree-ancestor of tau(v) that is some tau(u)
    std::vector<int> owner(N, -1);
    for (int v = 0; v < g.num_vertices(); ++v) owner[tau[v]] = v;
    PebbleForestCover pfc;
    pfc.parent.assign(g.num_vertices(), -1);
    pfc.pebble.assign(g.num_vertices(), 0);
    for (int v = 0; v < g.num_vertices(); ++v) {
        for (int t = nice.tree.parent[tau[v]]; t >= 0; t = nice.tree.parent[t])
            if (owner[t] >= 0) {
                pfc.parent[v] = owner[t];
                break;
            }
    }
    // pebbles top-down
    for (int t : nice.tree.bfs_order()) {
        int v = owner[t];
        if (v < 0) continue;
        std::uint64_t used = 0;
        for (int u : bits_of(nice.bags[t] & ~bit(v))) used |= bit(pfc.pebble[u]);
        int c = 1;
        while (used >> c & 1) ++c;
        if (c > k) throw std::logic_error("td_to_pfc: ran out of pebbles");
        pfc.pebble[v] = c;
    }
    return pfc;
}

TreeDecomposition pfc_to_td(const LabelledGraph& g, const PebbleForestCover& pfc) {
    int n = g.num_vertices();
    TreeDecomposition td;
    // node v of the tree is vertex v; node n is a fresh root with empty bag
    td.tree.parent.assign(n + 1, -1);
    td.tree.root = n;
    for (int v = 0; v < n; ++v) td.tree.parent[v] = pfc.parent[v] >= 0 ? pfc.parent[v] : n;
    td.bags.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) {
        std::uint64_t seen = 0, bag = 0;
        for (int u = v; u >= 0; u = pfc.parent[u]) {
            if (!(seen >> pfc.pebble[u] & 1)) bag |= bit(u);
            seen |= bit(pfc.pebble[u]);
        }
        td.bags[v] = bag;
    }
    return td;
}

CopStrategy cop_strategy_from_pfc(const LabelledGraph& g, const PebbleForestCover& pfc, int k) {
    auto check = validate_pfc(g, pfc, k);
    if (!check.ok) throw std::invalid_argument("cop_strategy_from_pfc: " + check.error);
    int n = g.num_vertices();
    GameBoard board(g, false);

    auto beta = [&](int v) {
        std::uint64_t seen = 0, bag = 0;
        for (int u = v; u >= 0; u = pfc.parent[u]) {
            if (!(seen >> pfc.pebble[u] & 1)) bag |= bit(u);
            seen |= bit(pfc.pebble[u]);
        }
        return bag;
    };
    auto root_of = [&](int v) {
        int x = v;
        while (pfc.parent[x] >= 0) x = pfc.parent[x];
        return x;
    };
    // chain from the root to v
    auto chain = [&](int v) {
        std::vector<int> c;
        for (int x = v; x >= 0; x = pfc.parent[x]) c.push_back(x);
        std::reverse(c.begin(), c.end());
        return c;
    };
    auto is_anc = [&](int a, int d) {
        for (int x = d; x >= 0; x = pfc.parent[x])
            if (x == a) return true;
        return false;
    };

    CopStrategy sigma;
    sigma.variant = Variant::MonCR;
    sigma.k = k;
    sigma.q = pfc_depth(pfc);

    struct Item {
        std::uint64_t cops, space;
        int anchor;  // r_i; -1 before the first placement
    };
    std::deque<Item> queue;
    for (auto space : board.initial_spaces()) queue.push_back({0, space, -1});
    while (!queue.empty()) {
        auto item = queue.front();
        queue.pop_front();
        auto key = std::make_pair(item.cops, board.space_rep(item.space));
        if (sigma.moves.count(key)) continue;

        int nextAnchor;
        if (item.anchor < 0) {
            nextAnchor = root_of(lowest_bit(item.space));
        } else {
            // minimal vertex strictly above the anchor on the chain to the
            // robber; every space vertex must lie above the anchor
            nextAnchor = -1;
            for (int y : bits_of(item.space)) {
                if (!is_anc(item.anchor, y)) continue;
                auto c = chain(y);
                for (size_t i = 0; i + 1 < c.size(); ++i)
                    if (c[i] == item.anchor) {
                        int cand = c[i + 1];
                        if (nextAnchor == -1 || cand < nextAnchor) nextAnchor = cand;
                    }
            }
            if (nextAnchor < 0)
                throw std::logic_error("cop_strategy_from_pfc: robber escaped the anchor chain");
        }
        std::uint64_t newCops = beta(nextAnchor);
        sigma.moves.emplace(key, newCops);
        std::uint64_t transit = board.transit_space(item.cops & newCops, item.space);
        if (!board.captured(newCops, transit))
            for (auto next : board.successor_spaces(newCops, transit))
                queue.push_back({newCops, next, nextAnchor});
    }
    (void)n;
    return sigma;
}

// ---- JSON ----

std::string TreeDecomposition::to_json() const {
    nlohmann::json j;
    j["root"] = tree.root;
    j["parent"] = tree.parent;
    auto& b = j["bags"] = nlohmann::json::array();
    for (auto bagMask : bags) b.push_back(bits_of(bagMask));
    return j.dump(2);
}

TreeDecomposition TreeDecomposition::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    TreeDecomposition td;
    td.tree.root = j.at("root");
    td.tree.parent = j.at("parent").get<std::vector<int>>();
    for (auto& bagList : j.at("bags")) {
        std::uint64_t m = 0;
        for (int v : bagList.get<std::vector<int>>()) m |= bit(v);
        td.bags.push_back(m);
    }
    return td;
}

std::string TreeDecomposition::to_dot() const {
    std::ostringstream out;
    out << "graph td {\n";
    for (int t = 0; t < tree.size(); ++t) {
        out << "  n" << t << " [shape=box,label=\"{";
        bool first = true;
        for (int v : bits_of(bags[t])) {
            out << (first ? "" : ",") << v;
            first = false;
        }
        out << "}\"];\n";
    }
    for (int t = 0; t < tree.size(); ++t)
        if (tree.parent[t] >= 0) out << "  n" << tree.parent[t] << " -- n" << t << ";\n";
    out << "}\n";
    return out.str();
}

std::string PebbleForestCover::to_json() const {
    nlohmann::json j;
    j["parent"] = parent;
    j["pebble"] = pebble;
    return j.dump(2);
}

PebbleForestCover PebbleForestCover::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    PebbleForestCover p;
    p.parent = j.at("parent").get<std::vector<int>>();
    p.pebble = j.at("pebble").get<std::vector<int>>();
    return p;
}

std::string PebbleForestCover::to_dot() const {
    std::ostringstream out;
    out << "digraph pfc {\n";
    for (size_t v = 0; v < parent.size(); ++v)
        out << "  v" << v << " [label=\"" << v << " p" << pebble[v] << "\"];\n";
    for (size_t v = 0; v < parent.size(); ++v)
        if (parent[v] >= 0) out << "  v" << parent[v] << " -> v" << v << ";\n";
    out << "}\n";
    return out.str();
}

std::string ConstructionTree::to_json() const {
    nlohmann::json j;
    j["root"] = root;
    auto& list = j["nodes"] = nlohmann::json::array();
    for (auto& node : nodes) {
        nlohmann::json nj;
        nj["parent"] = node.parent;
        nj["to_root"] = node.to_root;
        std::ostringstream g;
        write_graph_text(node.graph, g);
        nj["graph"] = g.str();
        list.push_back(nj);
    }
    return j.dump(2);
}

ConstructionTree ConstructionTree::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ConstructionTree ct;
    ct.root = j.at("root");
    for (auto& nj : j.at("nodes")) {
        ConstructionTree::Node node;
        node.parent = nj.at("parent");
        node.to_root = nj.at("to_root").get<std::vector<int>>();
        std::istringstream g(nj.at("graph").get<std::string>());
        node.graph = read_graph_text(g);
        ct.nodes.push_back(node);
    }
    return ct;
}

std::string ConstructionTree::to_dot() const {
    auto ch = shape().children();
    std::ostringstream out;
    out << "digraph ct {\n";
    for (size_t t = 0; t < nodes.size(); ++t) {
        const char* kind = ch[t].empty() ? "leaf" : ch[t].size() == 1 ? "elim" : "product";
        out << "  n" << t << " [shape=box,label=\"" << kind << " "
            << nodes[t].graph.num_vertices() << "v/" << nodes[t].graph.num_edges() << "e\"];\n";
    }
    for (size_t t = 0; t < nodes.size(); ++t)
        if (nodes[t].parent >= 0) {
            bool dashed = ch[nodes[t].parent].size() == 1;
            out << "  n" << nodes[t].parent << " -> n" << t << (dashed ? " [style=dashed]" : "")
                << ";\n";
        }
    out << "}\n";
    return out.str();
}

}  // namespace deepwide
