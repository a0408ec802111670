#include "deepwide/game.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace deepwide {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::CR: return "CR";
        case Variant::MonCR: return "monCR";
        case Variant::ECR: return "eCR";
        case Variant::MonECR: return "moneCR";
    }
    return "?";
}

std::uint64_t escape(const LabelledGraph& g, std::uint64_t cops, int v) {
    if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("escape: unknown vertex");
    if (cops >> v & 1) return bit(v);
    auto adj = g.adjacency();
    std::uint64_t all = g.num_vertices() == 64 ? ~0ull : bit(g.num_vertices()) - 1;
    return component_of(adj, all & ~cops, v);
}

std::uint64_t escape_edges(const LabelledGraph& g, std::uint64_t cops, int edge_id) {
    if (edge_id < 0 || edge_id >= g.num_edges())
        throw std::invalid_argument("escape_edges: unknown edge");
    GameBoard board(g, true);
    return board.transit_space(cops, bit(edge_id));
}

GameBoard::GameBoard(const LabelledGraph& g, bool edge_game)
    : g_(g), adj_(g.adjacency()), edge_(edge_game) {
    all_ = g.num_vertices() == 0 ? 0
           : g.num_vertices() == 64 ? ~0ull
                                    : bit(g.num_vertices()) - 1;
    if (edge_ && g.num_edges() > 64) throw std::invalid_argument("GameBoard: edge cap exceeded");
}

std::vector<std::uint64_t> GameBoard::initial_spaces() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t comp : components(adj_, all_)) {
        if (!edge_) {
            out.push_back(comp);
        } else {
            std::uint64_t es = edges_touching(comp);
            if (es) out.push_back(es);
        }
    }
    return out;
}

std::uint64_t GameBoard::edges_touching(std::uint64_t comp) const {
    std::uint64_t out = 0;
    for (int e = 0; e < g_.num_edges(); ++e) {
        auto [x, y] = g_.edges()[e];
        if ((comp >> x & 1) || (comp >> y & 1)) out |= bit(e);
    }
    return out;
}

std::uint64_t GameBoard::transit_space(std::uint64_t kept, std::uint64_t space) const {
    if (!edge_) {
        return component_of(adj_, all_ & ~kept, lowest_bit(space));
    }
    int seed = lowest_bit(space);
    auto [a, b] = g_.edges()[seed];
    int start = !(kept >> a & 1) ? a : (!(kept >> b & 1) ? b : -1);
    if (start < 0) return bit(seed);  // both endpoints held by kept cops
    std::uint64_t comp = component_of(adj_, all_ & ~kept, start);
    return edges_touching(comp);
}

bool GameBoard::captured(std::uint64_t new_cops, std::uint64_t transit) const {
    if (!edge_) return (transit & ~new_cops) == 0;
    for (int e : bits_of(transit)) {
        auto [a, b] = g_.edges()[e];
        if (!(new_cops >> a & 1) || !(new_cops >> b & 1)) return false;
    }
    return true;
}

std::vector<std::uint64_t> GameBoard::successor_spaces(std::uint64_t new_cops,
                                                       std::uint64_t transit) const {
    std::vector<std::uint64_t> out;
    if (!edge_) {
        std::uint64_t left = transit & ~new_cops;
        while (left) {
            std::uint64_t c = component_of(adj_, all_ & ~new_cops, lowest_bit(left));
            out.push_back(c);
            left &= ~c;
        }
        return out;
    }
    std::uint64_t seen = 0;
    for (int e : bits_of(transit)) {
        auto [a, b] = g_.edges()[e];
        int start = !(new_cops >> a & 1) ? a : (!(new_cops >> b & 1) ? b : -1);
        if (start < 0) continue;  // capture position, robber avoids it
        if (seen >> start & 1) continue;
        std::uint64_t comp = component_of(adj_, all_ & ~new_cops, start);
        seen |= comp;
        out.push_back(edges_touching(comp));
    }
    return out;
}

namespace {

struct Key {
    std::uint64_t cops, space;
    int rounds;
    bool operator==(const Key&) const = default;
};
struct KeyHash {
    size_t operator()(const Key& k) const {
        std::uint64_t h = k.cops * 0x9e3779b97f4a7c15ull;
        h ^= k.space + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= std::uint64_t(k.rounds) + (h << 6) + (h >> 2);
        return size_t(h);
    }
};

}  // namespace

/// Memoized backward induction over (cop set, robber space, rounds left).
class GameSolver {
  public:
    GameSolver(const LabelledGraph& g, int k, int q, Variant variant)
        : board_(g, is_edge_variant(variant)),
          k_(k),
          q_(q),
          mono_(is_monotone_variant(variant)) {
        if (k < 1 || q < 1) throw std::invalid_argument("solve: k, q >= 1");
        if (g.num_vertices() > 30) throw std::invalid_argument("solve: vertex cap exceeded");
    }

    const GameBoard& board() const { return board_; }
    int rounds() const { return q_; }

    bool cop_wins() {
        for (auto space : board_.initial_spaces())
            if (!wins_within(0, space, q_)) return false;
        return true;
    }

    bool wins_within(std::uint64_t cops, std::uint64_t space, int r) {
        if (r <= 0) return false;
        Key key{cops, space, r};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool win = false;
        for_each_move(cops, space, [&](std::uint64_t newCops, std::uint64_t transit) {
            if (win) return;
            if (board_.captured(newCops, transit)) {
                win = true;
                return;
            }
            if (r == 1) return;
            for (auto next : board_.successor_spaces(newCops, transit))
                if (!wins_within(newCops, next, r - 1)) return;
            win = true;
        });
        memo_.emplace(key, win);
        return win;
    }

    /// Smallest budget in [1,q] that wins, or 0 if none.
    int min_rounds(std::uint64_t cops, std::uint64_t space) {
        for (int r = 1; r <= q_; ++r)
            if (wins_within(cops, space, r)) return r;
        return 0;
    }

    /// The first winning move at the given budget, deterministic order.
    std::optional<std::uint64_t> winning_move(std::uint64_t cops, std::uint64_t space, int r) {
        std::optional<std::uint64_t> out;
        for_each_move(cops, space, [&](std::uint64_t newCops, std::uint64_t transit) {
            if (out) return;
            if (board_.captured(newCops, transit)) {
                out = newCops;
                return;
            }
            if (r == 1) return;
            for (auto next : board_.successor_spaces(newCops, transit))
                if (!wins_within(newCops, next, r - 1)) return;
            out = newCops;
        });
        return out;
    }

    /// A surviving robber space against newCops with r rounds left, if any.
    std::optional<std::uint64_t> surviving_space(std::uint64_t cops, std::uint64_t space,
                                                 std::uint64_t newCops, int r) {
        std::uint64_t transit = board_.transit_space(cops & newCops, space);
        if (mono_ && transit != space) return std::nullopt;  // illegal in the monotone game
        if (board_.captured(newCops, transit)) return std::nullopt;
        for (auto next : board_.successor_spaces(newCops, transit))
            if (r <= 1 || !wins_within(newCops, next, r - 1)) return next;
        return std::nullopt;
    }

    /// Moves: keep any subset of the cops, place exactly one new cop.
    template <class F>
    void for_each_move(std::uint64_t cops, std::uint64_t space, F&& fn) {
        std::vector<int> copList = bits_of(cops);
        int c = (int)copList.size();
        for (int dropMask = 0; dropMask < (1 << c); ++dropMask) {
            std::uint64_t kept = cops;
            for (int i = 0; i < c; ++i)
                if (dropMask >> i & 1) kept &= ~bit(copList[i]);
            if (popcount64(kept) + 1 > k_) continue;
            std::uint64_t transit = board_.transit_space(kept, space);
            if (mono_ && transit != space) continue;
            for (int w = 0; w < board_.graph().num_vertices(); ++w) {
                if (cops >> w & 1) continue;
                fn(kept | bit(w), transit);
            }
        }
    }

  private:
    GameBoard board_;
    int k_, q_;
    bool mono_;
    std::unordered_map<Key, bool, KeyHash> memo_;
};

std::optional<std::uint64_t> RobberCertificate::respond(std::uint64_t cops, std::uint64_t space,
                                                        std::uint64_t new_cops,
                                                        int rounds_left) const {
    return solver_->surviving_space(cops, space, new_cops, rounds_left);
}

SolveResult solve(const LabelledGraph& g, int k, int q, Variant variant) {
    auto solver = std::make_shared<GameSolver>(g, k, q, variant);
    SolveResult res;
    res.cop_wins = solver->cop_wins();
    if (!res.cop_wins) {
        res.certificate = RobberCertificate(solver);
        return res;
    }
    // Extract a positional strategy: at each reachable position play the
    // first move winning within the minimal budget.
    const GameBoard& board = solver->board();
    CopStrategy sigma;
    sigma.variant = variant;
    sigma.k = k;
    sigma.q = q;
    std::deque<std::pair<std::uint64_t, std::uint64_t>> queue;
    for (auto space : board.initial_spaces()) queue.emplace_back(0, space);
    while (!queue.empty()) {
        auto [cops, space] = queue.front();
        queue.pop_front();
        auto key = std::make_pair(cops, board.space_rep(space));
        if (sigma.moves.count(key)) continue;
        int r = solver->min_rounds(cops, space);
        if (r == 0) throw std::logic_error("solve: lost position while extracting strategy");
        auto move = solver->winning_move(cops, space, r);
        if (!move) throw std::logic_error("solve: no winning move at minimal budget");
        sigma.moves.emplace(key, *move);
        std::uint64_t transit = board.transit_space(cops & *move, space);
        if (!board.captured(*move, transit))
            for (auto next : board.successor_spaces(*move, transit))
                queue.emplace_back(*move, next);
    }
    res.strategy = std::move(sigma);
    return res;
}

namespace {

std::string position_string(const LabelledGraph& g, std::uint64_t cops, std::uint64_t space,
                            bool edgeGame, int roundsUsed) {
    std::ostringstream out;
    out << "round " << roundsUsed << " cops={";
    bool first = true;
    for (int v : bits_of(cops)) {
        out << (first ? "" : ",") << v;
        first = false;
    }
    out << "} space={";
    first = true;
    for (int x : bits_of(space)) {
        if (edgeGame) {
            auto [a, b] = g.edges()[x];
            out << (first ? "" : ",") << a << "-" << b;
        } else {
            out << (first ? "" : ",") << x;
        }
        first = false;
    }
    out << "}";
    return out.str();
}

}  // namespace

StrategyCheck verify_strategy(const LabelledGraph& g, const CopStrategy& sigma, int k, int q,
                              Variant variant) {
    GameBoard board(g, is_edge_variant(variant));
    bool mono = is_monotone_variant(variant);
    StrategyCheck out;

    struct Node {
        std::uint64_t cops, space;
        int rounds;
        int parent;
    };
    std::vector<Node> nodes;
    std::deque<int> queue;
    for (auto space : board.initial_spaces()) {
        nodes.push_back({0, space, 0, -1});
        queue.push_back((int)nodes.size() - 1);
    }
    auto line_to = [&](int idx) {
        std::vector<std::string> line;
        for (int i = idx; i >= 0; i = nodes[i].parent)
            line.push_back(
                position_string(g, nodes[i].cops, nodes[i].space, board.edge_game(), nodes[i].rounds));
        std::reverse(line.begin(), line.end());
        return line;
    };
    auto fail = [&](int idx, const std::string& msg) {
        out.ok = false;
        out.error = msg;
        out.losing_line = line_to(idx);
        return out;
    };

    while (!queue.empty()) {
        int idx = queue.front();
        queue.pop_front();
        auto node = nodes[idx];
        if (node.rounds >= q) return fail(idx, "robber still free after " + std::to_string(q) + " rounds");
        auto move = sigma.next(node.cops, board.space_rep(node.space));
        if (!move) return fail(idx, "strategy undefined on reachable position");
        std::uint64_t newCops = *move;
        if (popcount64(newCops) > k || popcount64(newCops & ~node.cops) > 1)
            return fail(idx, "illegal cop move");
        std::uint64_t transit = board.transit_space(node.cops & newCops, node.space);
        if (mono && transit != node.space) return fail(idx, "non-monotone move");
        out.max_rounds_used = std::max(out.max_rounds_used, node.rounds + 1);
        if (board.captured(newCops, transit)) continue;
        for (auto next : board.successor_spaces(newCops, transit)) {
            nodes.push_back({newCops, next, node.rounds + 1, idx});
            queue.push_back((int)nodes.size() - 1);
        }
    }
    out.ok = true;
    return out;
}

std::string CopStrategy::to_json() const {
    nlohmann::json j;
    j["variant"] = variant_name(variant);
    j["k"] = k;
    j["q"] = q;
    auto& list = j["moves"] = nlohmann::json::array();
    for (auto& [key, next] : moves) {
        nlohmann::json entry;
        entry["cops"] = bits_of(key.first);
        entry["space_rep"] = key.second;
        entry["next_cops"] = bits_of(next);
        list.push_back(entry);
    }
    return j.dump(2);
}

CopStrategy CopStrategy::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    CopStrategy s;
    std::string v = j.at("variant");
    if (v == "CR")
        s.variant = Variant::CR;
    else if (v == "monCR")
        s.variant = Variant::MonCR;
    else if (v == "eCR")
        s.variant = Variant::ECR;
    else if (v == "moneCR")
        s.variant = Variant::MonECR;
    else
        throw std::runtime_error("unknown variant: " + v);
    s.k = j.at("k");
    s.q = j.at("q");
    for (auto& entry : j.at("moves")) {
        std::uint64_t cops = 0, next = 0;
        for (int x : entry.at("cops").get<std::vector<int>>()) cops |= bit(x);
        for (int x : entry.at("next_cops").get<std::vector<int>>()) next |= bit(x);
        s.moves.emplace(std::make_pair(cops, entry.at("space_rep").get<int>()), next);
    }
    return s;
}

}  // namespace deepwide
