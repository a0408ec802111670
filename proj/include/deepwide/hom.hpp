#pragma once

#include <vector>

#include "deepwide/bigint.hpp"
#include "deepwide/graph.hpp"

namespace deepwide {

/// Number of homomorphisms f -> g. Labelled vertices of f must map to the
/// equally labelled vertices of g; throws if f carries a label that g does
/// not assign. Loops in f require loops on the images.
///
/// hom_count_serial is the reference implementation (plain backtracking
/// over label-fixed components); hom_count runs the same search with the
/// top-level branch parallelized; hom_count_dp is a dynamic program over a
/// tree-decomposition of f. All three agree; the serial count is the
/// oracle of record. hom_count_big takes arbitrarily large patterns and
/// counts without overflow.
long long hom_count_serial(const LabelledGraph& f, const LabelledGraph& g);
long long hom_count(const LabelledGraph& f, const LabelledGraph& g);
long long hom_count_dp(const LabelledGraph& f, const LabelledGraph& g);
BigInt hom_count_big(const LabelledGraph& f, const LabelledGraph& g);

/// Per-vertex counts v -> hom(f, g(l -> v)) for an f with exactly one
/// assigned label index l.
std::vector<long long> hom_profile(const LabelledGraph& f, const LabelledGraph& g);

}  // namespace deepwide
