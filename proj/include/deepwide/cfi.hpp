#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "deepwide/graph.hpp"

namespace deepwide {

/// The twisted gadget graph over a connected loopless base. Vertices are
/// pairs (v, S) with S a subset of the edges at v whose parity matches the
/// membership of v in the twist set; (v,S)(u,T) is an edge iff uv is an
/// edge of the base not in the symmetric difference of S and T.
struct CfiGraph {
    LabelledGraph base;
    std::uint64_t twist_set = 0;           // vertex bitmask over the base
    LabelledGraph graph;                   // the gadget graph itself
    std::vector<int> projection;           // gadget vertex -> base vertex
    std::vector<std::uint64_t> edge_subset;  // gadget vertex -> bitmask over base edge ids

    /// Index of gadget vertex (v, S); -1 if no such vertex.
    int vertex_index(int v, std::uint64_t subset) const;
};

CfiGraph cfi(const LabelledGraph& g, std::uint64_t twist_set);

/// Both halves of the classic pair: the untwisted gadget graph and the
/// gadget graph twisted at vertex 0.
std::pair<LabelledGraph, LabelledGraph> cfi_pair(const LabelledGraph& g);

/// Isomorphism cfi(g,{u}) -> cfi(g,{v}) that toggles gadget subsets along
/// the path and fixes every gadget off it; commutes with the projection.
/// path must run from u to v.
std::vector<int> twist_isomorphism(const LabelledGraph& g, int u, int v,
                                   const std::vector<int>& path);

/// Path-toggle isomorphism cfi(g, U) -> cfi(g, U xor {endpoints of path}).
std::vector<int> twist_toggle_map(const LabelledGraph& g, std::uint64_t U,
                                  const std::vector<int>& path);

/// Composition of path toggles reducing the twist set: an isomorphism from
/// cfi(g, U) onto cfi(g, {}) for even |U| and onto cfi(g, {0}) for odd |U|.
std::vector<int> cfi_normalize_map(const LabelledGraph& g, std::uint64_t U);

}  // namespace deepwide
