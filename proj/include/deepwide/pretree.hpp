#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deepwide/decomp.hpp"
#include "deepwide/game.hpp"
#include "deepwide/graph.hpp"

namespace deepwide {

/// Rooted tree with vertex bags and, per directed tree edge, a cone of
/// graph edges. Cones are bitmasks over edge ids of the decomposed graph
/// (typically the graph with all self-loops added).
struct PreTreeDecomposition {
    LabelledGraph graph;  // the decomposed graph
    RootedTree tree;
    std::vector<std::uint64_t> bags;
    std::map<std::pair<int, int>, std::uint64_t> cones;  // (from,to) over tree edges
    std::vector<bool> branching;                         // per node; set by strategy_tree

    std::uint64_t cone(int s, int t) const;
    /// Ordered node partition: cones to all neighbours; for a leaf, the cone
    /// to the parent plus its complement.
    std::vector<std::uint64_t> node_partition(int t) const;

    std::string to_json() const;
    static PreTreeDecomposition from_json(const std::string& text);
    std::string to_dot() const;
};

/// Vertices incident to an edge inside X and an edge outside X.
std::uint64_t edge_boundary(const LabelledGraph& g, std::uint64_t X);
/// Boundary of an ordered partition: union of part boundaries.
std::uint64_t partition_boundary(const LabelledGraph& g, const std::vector<std::uint64_t>& parts);
int partition_width(const LabelledGraph& g, const std::vector<std::uint64_t>& parts);
/// F-extension in part i: add F there, remove it everywhere else.
std::vector<std::uint64_t> f_extension(const std::vector<std::uint64_t>& parts, int i,
                                       std::uint64_t F);

Validation validate_ptd(const PreTreeDecomposition& ptd);
bool is_exact_edge(const PreTreeDecomposition& ptd, int s, int t);
bool is_exact(const PreTreeDecomposition& ptd);
int ptd_width(const PreTreeDecomposition& ptd);
int ptd_depth(const PreTreeDecomposition& ptd);

/// Unrolls a positional winning strategy for the edge game into a
/// pre-tree-decomposition: bags are cop positions, cones are escape spaces,
/// leaves are caught edges. Throws if sigma is undefined on a reachable
/// position or revisits one (not winning).
PreTreeDecomposition strategy_tree(const LabelledGraph& g, const CopStrategy& sigma);

/// One BFS step of the cleanup: the chosen extension sets for the children
/// of the considered node.
struct ExtensionChoice {
    std::vector<std::uint64_t> F;  // per child, same order as children
    int boundary_size = 0;
};
ExtensionChoice select_extensions(const PreTreeDecomposition& ptd, int node);

/// Per-step audit record of the cleanup run.
struct ExactifyAudit {
    struct Step {
        int node;
        std::vector<std::uint64_t> F;
        int boundary_size;
        std::vector<std::uint64_t> bags;
        std::map<std::pair<int, int>, std::uint64_t> cones;
    };
    std::vector<Step> steps;
    std::string to_jsonl() const;
};

/// Breadth-first cleanup making every tree edge exact; never increases
/// width, never increases the depth bound of a strategy tree.
PreTreeDecomposition exactify(const PreTreeDecomposition& ptd, ExactifyAudit* audit = nullptr);

/// An exact pre-tree-decomposition of g-with-loops yields a
/// tree-decomposition of g with the same width/depth bounds, and vice versa.
TreeDecomposition exact_ptd_to_td(const PreTreeDecomposition& ptd);
PreTreeDecomposition td_to_exact_ptd(const LabelledGraph& g, const TreeDecomposition& td);

/// Full pipeline: winning strategy for the edge game on g-with-loops ->
/// strategy tree -> exactify -> tree-decomposition of g. Requires that Cop
/// wins the k-cop q-round game on g.
TreeDecomposition cop_win_to_td(const LabelledGraph& g, int k, int q);

}  // namespace deepwide
