#pragma once

#include "deepwide/decomp.hpp"
#include "deepwide/formula.hpp"
#include "deepwide/quantum.hpp"

namespace deepwide {

/// Formula that holds on an appropriately labelled g exactly when
/// hom(root graph of ct, g) = m. Decomposition disjunctions at elimination
/// nodes are capped by witness_cap, the largest number of witnessing
/// vertices a target can offer (pass the target size).
int formula_from_ct(FormulaArena& arena, const ConstructionTree& ct, long long m,
                    int witness_cap);

/// Same contract, produced inside the guarded fragment; the ct must remove
/// labels only when they have a labelled neighbour.
int guarded_formula_from_ct(FormulaArena& arena, const ConstructionTree& ct, long long m,
                            int witness_cap);

/// Quantum graph modelling phi for graphs of size n: hom(result, g) is 1
/// when g satisfies phi and 0 otherwise, for every appropriately labelled
/// g with n vertices. Requires phi to lie in the k-variable rank-q
/// fragment; every term carries a construction-tree witness within those
/// bounds.
QuantumGraph qg_from_formula(FormulaArena& arena, int phi, int n, int k, int q);

/// Guarded variant: quantifier guards are absorbed as labelled-edge factors
/// and all witnesses are guarded construction trees.
QuantumGraph qg_from_guarded_formula(FormulaArena& arena, int phi, int n, int k, int q);

}  // namespace deepwide
