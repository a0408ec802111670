#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deepwide/graph.hpp"
#include "deepwide/rational.hpp"

namespace deepwide {

/// Position of the bijective pebble game: pebble index -> (vertex of g,
/// vertex of h).
struct PebblePosition {
    std::map<int, std::pair<int, int>> pairs;
};

bool is_partial_isomorphism(const LabelledGraph& g, const LabelledGraph& h,
                            const PebblePosition& gamma);

enum class PebbleWinner { Duplicator, Spoiler };

/// Exact winner of the q-round bijective k-pebble game. Duplicator's
/// bijection existence per Spoiler pebble choice is decided by a perfect
/// matching on the wins-after-placement relation. use_symmetry quotients
/// positions by pebble-index permutation (valid: all pebbles are
/// interchangeable); disable to cross-check the optimization.
PebbleWinner bijective_pebble_game(const LabelledGraph& g, const LabelledGraph& h, int k, int q,
                                   const PebblePosition& start = {}, bool use_symmetry = true);

/// Least elimination depth of a merge-free construction tree for the given
/// labelled graph, at most cap; -1 when none within cap. With guarded set,
/// labels may only be removed when the labelled vertex has a labelled
/// neighbour.
int construction_depth(const LabelledGraph& g, int k, int cap, bool guarded);

enum class FamilyKind { Tkq, GEkq, TwTd };

struct FamilyEnumeration {
    FamilyKind kind;
    int k = 0, q = 0, max_n = 0;
    std::vector<LabelledGraph> members;  // canonical, deduplicated, by size
};

FamilyEnumeration enumerate_family(FamilyKind kind, int k, int q, int max_n);

struct HomIndResult {
    bool indistinguishable = true;  // up to the family bound
    std::optional<LabelledGraph> counterexample;
    long long count_g = 0, count_h = 0;
};

HomIndResult hom_indistinguishable(const LabelledGraph& g, const LabelledGraph& h,
                                   const FamilyEnumeration& family);

struct GcResult {
    bool refuted = false;
    std::optional<LabelledGraph> witness;        // single-labelled, on refutation
    std::optional<std::vector<int>> bijection;   // profile-matching, otherwise
    int bound = 0;                               // affirmative verdicts hold up to this size
};

/// Guarded-equivalence decider through per-vertex homomorphism profiles
/// over single-labelled guarded-constructible graphs up to max_n vertices.
/// Refutations are final; the affirmative verdict is bounded.
GcResult gc_equivalent(const LabelledGraph& g, const LabelledGraph& h, int k, int q, int max_n);

struct SeparationReport {
    bool witness_found = false;
    std::string note;
    LabelledGraph witness;                 // F
    bool robber_wins = false;              // F outside the game class
    int treewidth = -1, treedepth = -1;    // oracle values for F
    bool pebble_checked = false;
    bool duplicator_wins = false;          // on the gadget pair, k pebbles, q rounds
    long long hom_g0 = 0, hom_g1 = 0;      // hom(F, -) on the gadget pair
    std::string to_json() const;
};

/// Instance-level separation: find a witness F of treewidth <= k-1 and
/// treedepth <= q on which Robber wins the k-cop q-round game, then play
/// the bijective game and compare homomorphism counts on the gadget pair
/// of F. pebble_size_cap bounds the gadget size for the game phase.
SeparationReport separation_experiment(int k, int q, int pebble_size_cap = 24);

}  // namespace deepwide
