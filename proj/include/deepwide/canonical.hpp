#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deepwide/graph.hpp"

namespace deepwide {

/// Canonical key for graphs up to isomorphism: equal keys iff isomorphic.
/// Labels and loops are part of the key. Exhaustive minimisation with
/// colour-refinement pruning; intended for desk-scale graphs.
std::string canonical_form(const LabelledGraph& g, int size_cap = 16);

/// Internal variant without the public size cap, used for deduplication
/// of quantum-graph terms (still exact, may be slow on adversarial input).
std::string labelled_key(const LabelledGraph& g);

/// Isomorphism-invariant bucket key (equal for isomorphic graphs, usually
/// distinct otherwise): iterated neighbourhood signatures plus labels.
std::string iso_invariant_key(const LabelledGraph& g);

/// Searches for an isomorphism g -> h respecting labels; returns the
/// vertex bijection if one exists.
std::optional<std::vector<int>> isomorphic(const LabelledGraph& g, const LabelledGraph& h,
                                           int size_cap = 16);

/// Checks that map is a label- and edge-preserving bijection g -> h.
bool verify_isomorphism(const LabelledGraph& g, const LabelledGraph& h,
                        const std::vector<int>& map);

/// All non-isomorphic loopless unlabelled graphs with exactly n vertices,
/// in a deterministic order.
std::vector<LabelledGraph> all_graphs(int n);
std::vector<LabelledGraph> all_connected_graphs(int n);

}  // namespace deepwide
