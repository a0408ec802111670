#include "deepwide/pretree.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace deepwide {

std::uint64_t PreTreeDecomposition::cone(int s, int t) const {
    auto it = cones.find({s, t});
    if (it == cones.end()) throw std::out_of_range("ptd: no cone for that tree edge");
    return it->second;
}

std::vector<std::uint64_t> PreTreeDecomposition::node_partition(int t) const {
    std::uint64_t all = graph.num_edges() == 0 ? 0 : bit(graph.num_edges()) - 1;
    auto ch = tree.children();
    std::vector<std::uint64_t> parts;
    if (ch[t].empty()) {
        std::uint64_t up = cone(t, tree.parent[t]);
        parts.push_back(up);
        parts.push_back(all & ~up);
        return parts;
    }
    if (tree.parent[t] >= 0) parts.push_back(cone(t, tree.parent[t]));
    for (int c : ch[t]) parts.push_back(cone(t, c));
    return parts;
}

std::uint64_t edge_boundary(const LabelledGraph& g, std::uint64_t X) {
    std::uint64_t all = g.num_edges() == 0 ? 0 : bit(g.num_edges()) - 1;
    std::uint64_t out = 0;
    std::uint64_t comp = all & ~X;
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::uint64_t inc = 0;
        for (int e = 0; e < g.num_edges(); ++e) {
            auto [a, b] = g.edges()[e];
            if (a == v || b == v) inc |= bit(e);
        }
        if ((inc & X) && (inc & comp)) out |= bit(v);
    }
    return out;
}

std::uint64_t partition_boundary(const LabelledGraph& g, const std::vector<std::uint64_t>& parts) {
    std::uint64_t out = 0;
    for (auto X : parts) out |= edge_boundary(g, X);
    return out;
}

int partition_width(const LabelledGraph& g, const std::vector<std::uint64_t>& parts) {
    return popcount64(partition_boundary(g, parts));
}

std::vector<std::uint64_t> f_extension(const std::vector<std::uint64_t>& parts, int i,
                                       std::uint64_t F) {
    std::vector<std::uint64_t> out = parts;
    for (int j = 0; j < (int)out.size(); ++j) out[j] = j == i ? (out[j] | F) : (out[j] & ~F);
    return out;
}

Validation validate_ptd(const PreTreeDecomposition& ptd) {
    ptd.tree.validate();
    const auto& g = ptd.graph;
    std::uint64_t allE = g.num_edges() == 0 ? 0 : bit(g.num_edges()) - 1;
    if ((int)ptd.bags.size() != ptd.tree.size()) return Validation::fail("bag count mismatch");
    auto ch = ptd.tree.children();
    int r = ptd.tree.root;

    // PD.1
    if (ptd.bags[r] != 0) return Validation::fail("PD.1: root bag not empty");
    if (ch[r].empty() && g.num_edges() > 0) return Validation::fail("PD.1: root has no children");
    {
        auto adj = g.adjacency();
        std::uint64_t all = g.num_vertices() == 0 ? 0 : bit(g.num_vertices()) - 1;
        std::vector<std::uint64_t> compEdges;
        for (auto comp : components(adj, all)) {
            std::uint64_t es = 0;
            for (int e = 0; e < g.num_edges(); ++e) {
                auto [a, b] = g.edges()[e];
                if ((comp >> a & 1) || (comp >> b & 1)) es |= bit(e);
            }
            if (es) compEdges.push_back(es);
        }
        for (auto es : compEdges) {
            bool found = false;
            for (int c : ch[r])
                if (ptd.cone(r, c) == es) found = true;
            if (!found) return Validation::fail("PD.1: component without a root cone");
        }
    }
    // PD.2
    for (int t = 0; t < ptd.tree.size(); ++t)
        if (t != r && ch[t].empty() && popcount64(ptd.cone(ptd.tree.parent[t], t)) > 1)
            return Validation::fail("PD.2: leaf " + std::to_string(t) + " with cone larger than one edge");
    // PD.3
    for (int t = 0; t < ptd.tree.size(); ++t) {
        auto parts = ptd.node_partition(t);
        std::uint64_t uni = 0, overlap = 0;
        for (auto p : parts) {
            overlap |= uni & p;
            uni |= p;
        }
        if (uni != allE || overlap)
            return Validation::fail("PD.3: node partition invalid at node " + std::to_string(t));
        if (partition_boundary(g, parts) & ~ptd.bags[t])
            return Validation::fail("PD.3: boundary not inside bag at node " + std::to_string(t));
    }
    // PD.4
    for (int t = 0; t < ptd.tree.size(); ++t)
        if (t != r) {
            int p = ptd.tree.parent[t];
            if (ptd.cone(p, t) & ptd.cone(t, p))
                return Validation::fail("PD.4: overlapping cones on tree edge " +
                                        std::to_string(p) + "-" + std::to_string(t));
        }
    return {};
}

bool is_exact_edge(const PreTreeDecomposition& ptd, int s, int t) {
    std::uint64_t allE = ptd.graph.num_edges() == 0 ? 0 : bit(ptd.graph.num_edges()) - 1;
    return (ptd.cone(s, t) | ptd.cone(t, s)) == allE;
}

bool is_exact(const PreTreeDecomposition& ptd) {
    for (int t = 0; t < ptd.tree.size(); ++t) {
        if (t != ptd.tree.root && !is_exact_edge(ptd, ptd.tree.parent[t], t)) return false;
        if (ptd.bags[t] != partition_boundary(ptd.graph, ptd.node_partition(t))) return false;
    }
    return true;
}

int ptd_width(const PreTreeDecomposition& ptd) {
    int w = -1;
    for (auto b : ptd.bags) w = std::max(w, popcount64(b) - 1);
    return w;
}

int ptd_depth(const PreTreeDecomposition& ptd) {
    int best = 0;
    for (int t : ptd.tree.bfs_order()) {
        if (t == ptd.tree.root) continue;
        int sum = 0;
        for (int s = t; s != ptd.tree.root; s = ptd.tree.parent[s])
            sum += popcount64(ptd.bags[s] & ~ptd.bags[ptd.tree.parent[s]]);
        best = std::max(best, sum);
    }
    return best;
}

PreTreeDecomposition strategy_tree(const LabelledGraph& g, const CopStrategy& sigma) {
    if (!is_edge_variant(sigma.variant))
        throw std::invalid_argument("strategy_tree: edge-game strategy required");
    GameBoard board(g, true);
    std::uint64_t allE = g.num_edges() == 0 ? 0 : bit(g.num_edges()) - 1;
    if (!allE) throw std::invalid_argument("strategy_tree: graph without edges");

    PreTreeDecomposition ptd;
    ptd.graph = g;
    auto add_node = [&](int parent, std::uint64_t bag) {
        ptd.tree.parent.push_back(parent);
        ptd.bags.push_back(bag);
        ptd.branching.push_back(false);
        return (int)ptd.tree.parent.size() - 1;
    };
    int root = add_node(-1, 0);
    ptd.tree.root = root;

    struct Item {
        int node;                    // tree node carrying this position
        std::uint64_t cops, space;   // position: cops = bag of parent
        std::set<std::pair<std::uint64_t, std::uint64_t>> seen;  // anti-cycle along branch
    };
    std::deque<Item> queue;
    for (auto space : board.initial_spaces()) {
        int c = add_node(root, 0);  // bag filled on processing
        ptd.cones[{root, c}] = space;
        queue.push_back({c, 0, space, {}});
    }

    size_t nodeCap = size_t(4096) * (g.num_edges() + 1);
    while (!queue.empty()) {
        Item item = queue.front();
        queue.pop_front();
        int t = item.node;
        int s = ptd.tree.parent[t];

        bool caught = board.captured(item.cops, item.space);
        if (caught) {
            // bag: the endpoints of the caught edge
            if (popcount64(item.space) != 1)
                throw std::logic_error("strategy_tree: caught cone is not a single edge");
            auto [a, b] = g.edges()[lowest_bit(item.space)];
            ptd.bags[t] = bit(a) | bit(b);
            ptd.cones[{t, s}] = allE & ~item.space;
            continue;
        }
        if (item.seen.count({item.cops, item.space}))
            throw std::invalid_argument("strategy_tree: strategy revisits a position (not winning)");
        auto move = sigma.next(item.cops, board.space_rep(item.space));
        if (!move) throw std::invalid_argument("strategy_tree: strategy undefined on a reachable position");
        std::uint64_t newCops = *move;
        ptd.bags[t] = newCops;
        std::uint64_t placed = newCops & ~item.cops;
        if (popcount64(placed) > 1) throw std::invalid_argument("strategy_tree: illegal move");

        std::uint64_t transit = board.transit_space(item.cops & newCops, item.space);
        // branching: the placed cop lands inside the robber's transit space
        if (placed) {
            int w = lowest_bit(placed);
            for (int e : bits_of(transit)) {
                auto [a, b] = g.edges()[e];
                if (a == w || b == w) ptd.branching[t] = true;
            }
        }
        // children: the escape classes against the landed cops covering the
        // transit space, including caught single-edge classes
        std::vector<std::uint64_t> classes = board.successor_spaces(newCops, transit);
        std::uint64_t rest = transit;
        for (auto c : classes) rest &= ~c;
        for (int e : bits_of(rest)) classes.push_back(bit(e));  // fully covered edges
        std::sort(classes.begin(), classes.end(),
                  [](std::uint64_t a, std::uint64_t b) { return lowest_bit(a) < lowest_bit(b); });

        std::uint64_t coneUnion = 0;
        auto seen = item.seen;
        seen.insert({item.cops, item.space});
        for (auto cls : classes) {
            int c = add_node(t, 0);
            ptd.cones[{t, c}] = cls;
            coneUnion |= cls;
            queue.push_back({c, newCops, cls, seen});
            if (ptd.tree.parent.size() > nodeCap)
                throw std::invalid_argument("strategy_tree: tree exceeds size cap (not winning?)");
        }
        ptd.cones[{t, s}] = allE & ~coneUnion;
    }
    return ptd;
}

TreeDecomposition exact_ptd_to_td(const PreTreeDecomposition& ptd) {
    if (!is_exact(ptd)) throw std::invalid_argument("exact_ptd_to_td: input not exact");
    const auto& g = ptd.graph;
    auto ch = ptd.tree.children();
    TreeDecomposition td;
    td.tree = ptd.tree;
    td.bags = ptd.bags;
    // A leaf holding a self-loop carries that vertex: its boundary bag is
    // empty when the vertex has no other edge, which would lose isolated
    // vertices of the underlying graph.
    for (int t = 0; t < ptd.tree.size(); ++t) {
        if (!ch[t].empty() || t == ptd.tree.root) continue;
        std::uint64_t cone = ptd.cone(ptd.tree.parent[t], t);
        if (popcount64(cone) == 1) {
            auto [a, b] = g.edges()[lowest_bit(cone)];
            if (a == b) td.bags[t] = bit(a);
        }
    }
    return td;
}

PreTreeDecomposition td_to_exact_ptd(const LabelledGraph& g, const TreeDecomposition& tdIn) {
    auto check = validate_td(g, tdIn);
    if (!check.ok) throw std::invalid_argument("td_to_exact_ptd: invalid input: " + check.error);
    TreeDecomposition td = tighten(g, tdIn);
    LabelledGraph gl = g.has_loop() ? g : with_loops(g);

    PreTreeDecomposition ptd;
    ptd.graph = gl;
    auto add_node = [&](int parent) {
        ptd.tree.parent.push_back(parent);
        ptd.bags.push_back(0);
        ptd.branching.push_back(false);
        return (int)ptd.tree.parent.size() - 1;
    };
    int root = add_node(-1);
    ptd.tree.root = root;
    std::uint64_t allE = bit(gl.num_edges()) - 1;

    auto loop_id = [&](int v) {
        for (int e = 0; e < gl.num_edges(); ++e)
            if (gl.edges()[e] == std::make_pair(v, v)) return e;
        throw std::logic_error("td_to_exact_ptd: missing loop edge");
    };
    auto edge_id = [&](int a, int b) {
        auto e = std::make_pair(std::min(a, b), std::max(a, b));
        for (int i = 0; i < gl.num_edges(); ++i)
            if (gl.edges()[i] == e) return i;
        throw std::logic_error("td_to_exact_ptd: missing edge");
    };

    auto adj = g.adjacency();
    std::uint64_t all = g.num_vertices() == 0 ? 0 : bit(g.num_vertices()) - 1;
    // depth-ordered tree nodes for deterministic "closest to root" picks
    auto order = td.tree.bfs_order();

    std::vector<std::pair<int, int>> copyEdges;  // (new node, original node) for cone assembly
    for (auto comp : components(adj, all)) {
        if (popcount64(comp) == 1 && !(adj[lowest_bit(comp)])) {
            // isolated vertex: a single leaf under the root
            int v = lowest_bit(comp);
            int tv = add_node(root);
            ptd.cones[{root, tv}] = bit(loop_id(v));
            ptd.cones[{tv, root}] = allE & ~bit(loop_id(v));
            continue;
        }
        // nodes of td meeting the component
        std::vector<int> vc;
        for (int t : order)
            if (td.bags[t] & comp) vc.push_back(t);
        if (vc.empty()) throw std::logic_error("td_to_exact_ptd: component not covered");
        // root of the copied subtree: the vc node closest to the root
        std::vector<int> inVc(td.tree.size(), 0);
        for (int t : vc) inVc[t] = 1;
        // copy the induced subtree (it is connected)
        std::vector<int> copyOf(td.tree.size(), -1);
        for (int t : vc) {
            // parent inside vc: nearest ancestor in vc
            int p = -1;
            for (int x = td.tree.parent[t]; x >= 0; x = td.tree.parent[x])
                if (inVc[x]) {
                    p = x;
                    break;
                }
            int node = add_node(p < 0 ? root : copyOf[p]);
            copyOf[t] = node;
            copyEdges.push_back({node, t});
        }
        // vertex leaves and edge leaves, attached at the shallowest bag
        for (int v : bits_of(comp)) {
            int tv = -1;
            for (int t : vc)
                if (td.bags[t] >> v & 1) {
                    tv = t;
                    break;
                }
            int leaf = add_node(copyOf[tv]);
            ptd.bags[leaf] = bit(v);
            ptd.cones[{copyOf[tv], leaf}] = bit(loop_id(v));
            ptd.cones[{leaf, copyOf[tv]}] = allE & ~bit(loop_id(v));
        }
        for (auto& [a, b] : g.edges()) {
            if (!(comp >> a & 1)) continue;
            int te = -1;
            for (int t : vc)
                if ((td.bags[t] >> a & 1) && (td.bags[t] >> b & 1)) {
                    te = t;
                    break;
                }
            if (te < 0) throw std::logic_error("td_to_exact_ptd: edge not inside a bag");
            int leaf = add_node(copyOf[te]);
            ptd.bags[leaf] = bit(a) | bit(b);
            int eid = edge_id(a, b);
            ptd.cones[{copyOf[te], leaf}] = bit(eid);
            ptd.cones[{leaf, copyOf[te]}] = allE & ~bit(eid);
        }
    }
    // cones on copied tree edges: everything decomposed below
    auto ch = ptd.tree.children();
    std::vector<std::uint64_t> below(ptd.tree.size(), 0);
    auto porder = ptd.tree.bfs_order();
    for (auto it = porder.rbegin(); it != porder.rend(); ++it) {
        int t = *it;
        for (int c : ch[t]) {
            auto key = ptd.cones.find({t, c});
            std::uint64_t sub = key != ptd.cones.end() ? key->second : below[c];
            below[t] |= sub;
        }
    }
    for (int t = 0; t < ptd.tree.size(); ++t) {
        if (t == root) continue;
        int p = ptd.tree.parent[t];
        if (!ptd.cones.count({p, t})) {
            ptd.cones[{p, t}] = below[t];
            ptd.cones[{t, p}] = allE & ~below[t];
        }
    }
    // bags of inner copies: the boundary of their partitions
    for (auto& [node, orig] : copyEdges)
        ptd.bags[node] = partition_boundary(gl, ptd.node_partition(node));
    return ptd;
}

TreeDecomposition cop_win_to_td(const LabelledGraph& g, int k, int q) {
    auto plain = solve(g, k, q, Variant::CR);
    if (!plain.cop_wins) throw std::invalid_argument("cop_win_to_td: Cop does not win");
    LabelledGraph gl = with_loops(g);
    auto edge = solve(gl, k, q, Variant::ECR);
    if (!edge.cop_wins)
        throw std::logic_error("cop_win_to_td: edge game on looped graph disagrees with vertex game");
    PreTreeDecomposition st = strategy_tree(gl, *edge.strategy);
    PreTreeDecomposition ex = exactify(st);
    TreeDecomposition td = exact_ptd_to_td(ex);
    // drop loops for the underlying graph; bags are unchanged
    return td;
}

std::string PreTreeDecomposition::to_json() const {
    nlohmann::json j;
    j["root"] = tree.root;
    j["parent"] = tree.parent;
    std::ostringstream gs;
    write_graph_text(graph, gs);
    j["graph"] = gs.str();
    auto& b = j["bags"] = nlohmann::json::array();
    for (auto bagMask : bags) b.push_back(bits_of(bagMask));
    auto& c = j["cones"] = nlohmann::json::array();
    for (auto& [key, mask] : cones) {
        nlohmann::json e;
        e["from"] = key.first;
        e["to"] = key.second;
        e["edges"] = bits_of(mask);
        c.push_back(e);
    }
    j["branching"] = branching;
    return j.dump(2);
}

PreTreeDecomposition PreTreeDecomposition::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    PreTreeDecomposition p;
    p.tree.root = j.at("root");
    p.tree.parent = j.at("parent").get<std::vector<int>>();
    std::istringstream gs(j.at("graph").get<std::string>());
    p.graph = read_graph_text(gs);
    for (auto& bagList : j.at("bags")) {
        std::uint64_t m = 0;
        for (int v : bagList.get<std::vector<int>>()) m |= bit(v);
        p.bags.push_back(m);
    }
    for (auto& e : j.at("cones")) {
        std::uint64_t m = 0;
        for (int x : e.at("edges").get<std::vector<int>>()) m |= bit(x);
        p.cones[{e.at("from").get<int>(), e.at("to").get<int>()}] = m;
    }
    if (j.contains("branching")) p.branching = j.at("branching").get<std::vector<bool>>();
    return p;
}

std::string PreTreeDecomposition::to_dot() const {
    std::ostringstream out;
    out << "digraph ptd {\n";
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
        if (tree.parent[t] >= 0) {
            bool exact = is_exact_edge(*this, tree.parent[t], t);
            out << "  n" << tree.parent[t] << " -> n" << t << (exact ? "" : " [style=dashed]")
                << ";\n";
        }
    out << "}\n";
    return out.str();
}

}  // namespace deepwide
