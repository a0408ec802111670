#pragma once

#include "deepwide/graph.hpp"

namespace deepwide {

/// Independent brute-force check: does g admit a tree-decomposition of
/// width <= k-1 and depth <= q? Recursive bag-splitting with memoized
/// (separator, component) states; no game machinery involved.
bool exists_decomposition(const LabelledGraph& g, int k, int q);

/// Minimum depth over decompositions of width <= k-1 (same recursion);
/// returns -1 when no such decomposition exists (cannot happen for k > tw).
int min_decomposition_depth(const LabelledGraph& g, int k);

/// Exact treedepth by the vertex-removal recursion.
int treedepth_oracle(const LabelledGraph& g);

/// Exact treewidth via the decomposition search with unbounded depth.
int treewidth_oracle(const LabelledGraph& g);

}  // namespace deepwide
