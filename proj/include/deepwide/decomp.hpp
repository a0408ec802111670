#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deepwide/game.hpp"
#include "deepwide/graph.hpp"

namespace deepwide {

/// Rooted tree over dense node ids; parent[v] == -1 exactly at the root.
struct RootedTree {
    std::vector<int> parent;
    int root = -1;

    int size() const { return (int)parent.size(); }
    std::vector<std::vector<int>> children() const;
    std::vector<int> bfs_order() const;
    bool is_ancestor(int a, int d) const;  // a on the root path of d (or equal)
    void validate() const;                 // throws on malformed structure
};

struct Validation {
    bool ok = true;
    std::string error;
    static Validation fail(std::string msg) { return {false, std::move(msg)}; }
};

/// Tree-decomposition with bags stored as vertex bitmasks of the decomposed
/// graph. The rooting is carried along; width-only uses may ignore it.
struct TreeDecomposition {
    RootedTree tree;
    std::vector<std::uint64_t> bags;

    std::string to_json() const;
    static TreeDecomposition from_json(const std::string& text);
    std::string to_dot() const;
};

Validation validate_td(const LabelledGraph& g, const TreeDecomposition& td);
int td_width(const TreeDecomposition& td);
/// Depth of the rooted decomposition; with root = -1 the minimum over all
/// rootings is taken.
int td_depth(const TreeDecomposition& td, int root = -2);
TreeDecomposition reroot(const TreeDecomposition& td, int new_root);

/// Repeatedly drops single vertices from bags while the result stays a
/// tree-decomposition; fixpoint.
TreeDecomposition tighten(const LabelledGraph& g, const TreeDecomposition& td);

/// Pebble forest cover: rooted forest over V(g) plus a pebbling.
struct PebbleForestCover {
    std::vector<int> parent;  // over vertices of g; -1 at roots
    std::vector<int> pebble;  // 1-based pebble index per vertex

    std::string to_json() const;
    static PebbleForestCover from_json(const std::string& text);
    std::string to_dot() const;
};

Validation validate_pfc(const LabelledGraph& g, const PebbleForestCover& pfc, int k);
int pfc_depth(const PebbleForestCover& pfc);

/// Construction tree: every node carries a labelled graph; leaves are fully
/// labelled, single-child nodes remove one label, multi-child nodes are the
/// product of their children. to_root maps node-local vertices to vertices
/// of the root graph so conversions can work in one coordinate system.
struct ConstructionTree {
    struct Node {
        LabelledGraph graph;
        std::vector<int> to_root;
        int parent = -1;
    };
    std::vector<Node> nodes;
    int root = -1;

    RootedTree shape() const;
    std::string to_json() const;
    static ConstructionTree from_json(const std::string& text);
    std::string to_dot() const;
};

/// When guarded is set, a label may only be removed if the labelled vertex
/// has a labelled neighbour in the child graph.
Validation validate_ct(const ConstructionTree& ct, int k, bool guarded = false);
int elimination_depth(const ConstructionTree& ct);

/// Bags are the labelled vertex sets, in root coordinates.
TreeDecomposition ct_to_td(const ConstructionTree& ct);

/// Every non-leaf is an introduce/forget/join node, root and leaf bags are
/// empty; width and rooted depth are preserved.
TreeDecomposition make_nice(const LabelledGraph& g, const TreeDecomposition& td);
bool is_nice(const LabelledGraph& g, const TreeDecomposition& td);

/// Requires width(td) <= k-1 and depth(td) <= q; g must be unlabelled.
ConstructionTree td_to_ct(const LabelledGraph& g, const TreeDecomposition& td, int k, int q);

/// Requires a nice rooted decomposition of width <= k-1.
PebbleForestCover td_to_pfc(const LabelledGraph& g, const TreeDecomposition& td, int k);
TreeDecomposition pfc_to_td(const LabelledGraph& g, const PebbleForestCover& pfc);

/// Monotone winning strategy for the vertex game derived from a valid
/// k-pebble forest cover of depth q.
CopStrategy cop_strategy_from_pfc(const LabelledGraph& g, const PebbleForestCover& pfc, int k);

struct MembershipResult {
    bool in = false;
    std::optional<ConstructionTree> witness;           // present iff in
    std::optional<RobberCertificate> evidence;         // present iff !in
    std::optional<TreeDecomposition> decomposition;    // intermediate, iff in
};

/// Game-based decision with a full constructive witness on the positive
/// side: solve -> strategy tree -> exactification -> tree-decomposition ->
/// construction tree.
MembershipResult membership(const LabelledGraph& g, int k, int q);

}  // namespace deepwide
