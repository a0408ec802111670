#include "deepwide/oracle.hpp"

#include <limits>
#include <unordered_map>

namespace deepwide {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct DecompSearch {
    std::vector<std::uint64_t> adj;
    int k;
    std::unordered_map<std::uint64_t, int> memo;

    std::uint64_t neighbours(std::uint64_t C) const {
        std::uint64_t nb = 0;
        for (int v : bits_of(C)) nb |= adj[v];
        return nb & ~C;
    }

    // Minimum extra depth needed to decompose component C whose boundary
    // N(C) is already covered further up.
    int min_depth(std::uint64_t C) {
        if (!C) return 0;
        auto it = memo.find(C);
        if (it != memo.end()) return it->second;
        std::uint64_t S = neighbours(C);
        int slack = k - popcount64(S);
        int best = kInf;
        if (slack >= 1) {
            // enumerate nonempty X subset of C with |X| <= slack
            for (std::uint64_t X = C; X; X = (X - 1) & C) {
                if (popcount64(X) > slack) continue;
                int cost = popcount64(X), worst = 0;
                for (std::uint64_t C2 : components(adj, C & ~X))
                    worst = std::max(worst, min_depth(C2));
                if (worst < kInf) best = std::min(best, cost + worst);
            }
        }
        memo.emplace(C, best);
        return best;
    }
};

}  // namespace

int min_decomposition_depth(const LabelledGraph& g, int k) {
    DecompSearch search;
    search.adj = g.adjacency();
    search.k = k;
    std::uint64_t all = g.num_vertices() == 0 ? 0 : bit(g.num_vertices()) - 1;
    int worst = 0;
    for (std::uint64_t C : components(search.adj, all))
        worst = std::max(worst, search.min_depth(C));
    return worst >= kInf ? -1 : worst;
}

bool exists_decomposition(const LabelledGraph& g, int k, int q) {
    int d = min_decomposition_depth(g, k);
    return d >= 0 && d <= q;
}

namespace {

struct TdSearch {
    std::vector<std::uint64_t> adj;
    std::unordered_map<std::uint64_t, int> memo;

    int depth(std::uint64_t C) {
        if (!C) return 0;
        auto it = memo.find(C);
        if (it != memo.end()) return it->second;
        int best;
        auto comps = components(adj, C);
        if (comps.size() > 1) {
            best = 0;
            for (auto c : comps) best = std::max(best, depth(c));
        } else {
            best = kInf;
            for (int v : bits_of(C)) best = std::min(best, 1 + depth(C & ~bit(v)));
        }
        memo.emplace(C, best);
        return best;
    }
};

}  // namespace

int treedepth_oracle(const LabelledGraph& g) {
    TdSearch search;
    search.adj = g.adjacency();
    std::uint64_t all = g.num_vertices() == 0 ? 0 : bit(g.num_vertices()) - 1;
    return search.depth(all);
}

int treewidth_oracle(const LabelledGraph& g) {
    for (int k = 1; k <= g.num_vertices(); ++k)
        if (min_decomposition_depth(g, k) >= 0) return k - 1;
    return -1;
}

}  // namespace deepwide
