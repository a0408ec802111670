#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deepwide/graph.hpp"

namespace deepwide {

enum class Variant { CR, MonCR, ECR, MonECR };

inline bool is_edge_variant(Variant v) { return v == Variant::ECR || v == Variant::MonECR; }
inline bool is_monotone_variant(Variant v) { return v == Variant::MonCR || v == Variant::MonECR; }
std::string variant_name(Variant v);

/// Escape space of a robber on vertex v against cop set X: {v} if v is
/// occupied, else the component of g - X containing v. Returned as a
/// vertex bitmask.
std::uint64_t escape(const LabelledGraph& g, std::uint64_t cops, int v);

/// Edge-game escape space: {e} if both endpoints are occupied, else all
/// edges incident to the component of g - X meeting e. Returned as a
/// bitmask over edge ids of g.
std::uint64_t escape_edges(const LabelledGraph& g, std::uint64_t cops, int edge_id);

/// Position arithmetic shared by the solver, the strategy verifier and the
/// strategy-tree construction. Robber spaces are vertex masks (vertex game)
/// or edge-id masks (edge game).
class GameBoard {
  public:
    GameBoard(const LabelledGraph& g, bool edge_game);

    const LabelledGraph& graph() const { return g_; }
    bool edge_game() const { return edge_; }
    std::uint64_t all_vertices() const { return all_; }

    /// One robber space per component the robber can start in.
    std::vector<std::uint64_t> initial_spaces() const;

    /// The space the robber roams while the cops are in transit: his
    /// escape space against the kept cops.
    std::uint64_t transit_space(std::uint64_t kept, std::uint64_t space) const;

    bool captured(std::uint64_t new_cops, std::uint64_t transit) const;

    /// The distinct escape spaces against the landed cops that cover the
    /// transit space; capture positions are not offered.
    std::vector<std::uint64_t> successor_spaces(std::uint64_t new_cops,
                                                std::uint64_t transit) const;

    std::uint64_t edges_touching(std::uint64_t comp) const;
    int space_rep(std::uint64_t space) const { return lowest_bit(space); }

  private:
    LabelledGraph g_;
    std::vector<std::uint64_t> adj_;
    std::uint64_t all_ = 0;
    bool edge_ = false;
};

/// A positional cop strategy: next cop set per (cop set, robber space).
/// The robber space is keyed by its smallest vertex (vertex game) or
/// smallest edge id (edge game); the space itself is recomputable from the
/// cop set and the representative.
struct CopStrategy {
    Variant variant = Variant::CR;
    int k = 0, q = 0;
    std::map<std::pair<std::uint64_t, int>, std::uint64_t> moves;

    std::optional<std::uint64_t> next(std::uint64_t cops, int space_rep) const {
        auto it = moves.find({cops, space_rep});
        if (it == moves.end()) return std::nullopt;
        return it->second;
    }
    std::string to_json() const;
    static CopStrategy from_json(const std::string& text);
};

class GameSolver;

/// Retains the solved game so that a surviving robber reply can be audited
/// for any reachable cop move.
class RobberCertificate {
  public:
    explicit RobberCertificate(std::shared_ptr<GameSolver> solver) : solver_(std::move(solver)) {}

    /// A robber space that survives the cop move new_cops from position
    /// (cops, space) with rounds_left rounds still to be played.
    std::optional<std::uint64_t> respond(std::uint64_t cops, std::uint64_t space,
                                         std::uint64_t new_cops, int rounds_left) const;

  private:
    std::shared_ptr<GameSolver> solver_;
};

struct SolveResult {
    bool cop_wins = false;
    std::optional<CopStrategy> strategy;           // present iff cop_wins
    std::optional<RobberCertificate> certificate;  // present iff !cop_wins
};

/// Exact winner of the q-round k-cop game by memoized backward induction.
/// One round is one cop move placing exactly one new cop (removals are
/// folded into the same move).
SolveResult solve(const LabelledGraph& g, int k, int q, Variant variant);

struct StrategyCheck {
    bool ok = false;
    std::string error;                     // set when !ok
    std::vector<std::string> losing_line;  // positions leading to the failure
    int max_rounds_used = 0;
};

/// Exhaustive adversary playout of sigma. Monotone variants additionally
/// require the transit space to equal the current robber space on every
/// move.
StrategyCheck verify_strategy(const LabelledGraph& g, const CopStrategy& sigma, int k, int q,
                              Variant variant);

/// The explicit diagonal-sweep strategy on the h x l grid with h+1 cops;
/// requires 3 < h < l-3. Wins the vertex game within floor(l*h/4) + h + 1
/// rounds.
CopStrategy grid_cop_strategy(int h, int l);

}  // namespace deepwide
