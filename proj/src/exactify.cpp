#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "deepwide/pretree.hpp"
#include "json.hpp"

namespace deepwide {

namespace {

// BFS order with children visited in canonical order of their cone's
// smallest edge; fixed once on the input.
std::vector<int> bfs_order_by_cone(const PreTreeDecomposition& ptd) {
    auto ch = ptd.tree.children();
    std::vector<int> order;
    std::deque<int> queue{ptd.tree.root};
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        order.push_back(t);
        auto kids = ch[t];
        std::sort(kids.begin(), kids.end(), [&](int a, int b) {
            std::uint64_t ca = ptd.cone(t, a), cb = ptd.cone(t, b);
            int la = ca ? lowest_bit(ca) : 64, lb = cb ? lowest_bit(cb) : 64;
            if (la != lb) return la < lb;
            return a < b;
        });
        for (int c : kids) queue.push_back(c);
    }
    return order;
}

struct Chooser {
    const LabelledGraph& g;
    std::uint64_t allE;
    std::vector<std::uint64_t> childCones;  // current cones s_i -> t_j
    std::uint64_t parentCone;               // current cone s_i -> parent; ~0 if root
    bool hasParent;
    std::vector<std::uint64_t> gaps;        // candidate pool per child

    std::vector<int> candEdges;             // ascending edge ids
    std::vector<std::vector<int>> options;  // per candidate: child indices it may join

    std::vector<int> bestAssign, curAssign;
    int bestBoundary = -1, bestMoved = -1;

    void run() {
        std::uint64_t pool = 0;
        for (auto gp : gaps) pool |= gp;
        for (int e : bits_of(pool)) {
            candEdges.push_back(e);
            std::vector<int> opt;
            for (int j = 0; j < (int)gaps.size(); ++j)
                if (gaps[j] >> e & 1) opt.push_back(j);
            options.push_back(opt);
        }
        // enumeration guard; candidate pools live inside one escape space
        double count = 1;
        for (auto& opt : options) count *= (double)(opt.size() + 1);
        if (count > double(1 << 22))
            throw std::runtime_error("exactify: extension search too large for desk scale");
        curAssign.assign(candEdges.size(), -1);
        dfs(0);
    }

    void dfs(size_t idx) {
        if (idx == candEdges.size()) {
            evaluate();
            return;
        }
        curAssign[idx] = -1;  // keep the edge where it is
        dfs(idx + 1);
        for (int j : options[idx]) {
            curAssign[idx] = j;
            dfs(idx + 1);
        }
        curAssign[idx] = -1;
    }

    void evaluate() {
        std::uint64_t F = 0;
        std::vector<std::uint64_t> Fj(childCones.size(), 0);
        int moved = 0;
        for (size_t i = 0; i < candEdges.size(); ++i)
            if (curAssign[i] >= 0) {
                F |= bit(candEdges[i]);
                Fj[curAssign[i]] |= bit(candEdges[i]);
                ++moved;
            }
        std::vector<std::uint64_t> parts;
        for (size_t j = 0; j < childCones.size(); ++j)
            parts.push_back((childCones[j] & ~F) | Fj[j]);
        if (hasParent) parts.push_back(parentCone & ~F);
        int boundary = popcount64(partition_boundary(g, parts));
        if (bestBoundary < 0 || boundary < bestBoundary ||
            (boundary == bestBoundary &&
             (moved < bestMoved || (moved == bestMoved && lex_less(curAssign, bestAssign))))) {
            bestBoundary = boundary;
            bestMoved = moved;
            bestAssign = curAssign;
        }
    }

    static bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            int x = a[i] + 1, y = b[i] + 1;  // none sorts first
            if (x != y) return x < y;
        }
        return false;
    }

    std::vector<std::uint64_t> chosen() const {
        std::vector<std::uint64_t> Fj(childCones.size(), 0);
        for (size_t i = 0; i < candEdges.size(); ++i)
            if (bestAssign[i] >= 0) Fj[bestAssign[i]] |= bit(candEdges[i]);
        return Fj;
    }
};

Chooser make_chooser(const PreTreeDecomposition& ptd, int node, const std::vector<int>& kids) {
    std::uint64_t allE = ptd.graph.num_edges() == 0 ? 0 : bit(ptd.graph.num_edges()) - 1;
    Chooser chooser{ptd.graph, allE, {}, 0, false, {}, {}, {}, {}, {}, -1, -1};
    for (int c : kids) {
        std::uint64_t down = ptd.cone(node, c), up = ptd.cone(c, node);
        chooser.childCones.push_back(down);
        chooser.gaps.push_back(allE & ~(down | up));
    }
    if (ptd.tree.parent[node] >= 0) {
        chooser.hasParent = true;
        chooser.parentCone = ptd.cone(node, ptd.tree.parent[node]);
    }
    return chooser;
}

}  // namespace

ExtensionChoice select_extensions(const PreTreeDecomposition& ptd, int node) {
    auto ch = ptd.tree.children();
    auto kids = ch[node];
    std::sort(kids.begin(), kids.end(), [&](int a, int b) {
        std::uint64_t ca = ptd.cone(node, a), cb = ptd.cone(node, b);
        int la = ca ? lowest_bit(ca) : 64, lb = cb ? lowest_bit(cb) : 64;
        if (la != lb) return la < lb;
        return a < b;
    });
    auto chooser = make_chooser(ptd, node, kids);
    chooser.run();
    ExtensionChoice out;
    out.F = chooser.chosen();
    out.boundary_size = chooser.bestBoundary;
    return out;
}

PreTreeDecomposition exactify(const PreTreeDecomposition& input, ExactifyAudit* audit) {
    auto check = validate_ptd(input);
    if (!check.ok) throw std::invalid_argument("exactify: invalid input: " + check.error);
    PreTreeDecomposition cur = input;
    const LabelledGraph& g = cur.graph;
    auto ch = cur.tree.children();
    int N = cur.tree.size();

    std::vector<int> order = bfs_order_by_cone(input);
    std::vector<bool> visited(N, false);

    for (int step = 0; step < N; ++step) {
        int si = order[step];
        visited[si] = true;
        auto kids = ch[si];
        std::sort(kids.begin(), kids.end(), [&](int a, int b) {
            std::uint64_t ca = cur.cone(si, a), cb = cur.cone(si, b);
            int la = ca ? lowest_bit(ca) : 64, lb = cb ? lowest_bit(cb) : 64;
            if (la != lb) return la < lb;
            return a < b;
        });

        // membership in T_i: visited nodes and their children
        std::vector<bool> inTi(N, false);
        for (int t = 0; t < N; ++t)
            if (visited[t]) {
                inTi[t] = true;
                for (int c : ch[t]) inTi[c] = true;
            }

        if (!kids.empty()) {
            auto chooser = make_chooser(cur, si, kids);
            chooser.run();
            auto Fj = chooser.chosen();
            std::uint64_t F = 0;
            for (auto f : Fj) F |= f;
            std::vector<std::uint64_t> Fstar(kids.size());
            for (size_t j = 0; j < kids.size(); ++j)
                Fstar[j] = (chooser.gaps[j] | F) & ~Fj[j];

            auto child_index = [&](int c) {
                for (size_t j = 0; j < kids.size(); ++j)
                    if (kids[j] == c) return (int)j;
                return -1;
            };
            // push the change through every tree edge with its upper end in T_i
            std::map<std::pair<int, int>, std::uint64_t> next = cur.cones;
            for (int p = 0; p < N; ++p) {
                if (!inTi[p]) continue;
                for (int c : ch[p]) {
                    std::uint64_t down = cur.cone(p, c), up = cur.cone(c, p);
                    if (p == si) {
                        int j = child_index(c);
                        next[{p, c}] = (down & ~F) | Fj[j];
                        next[{c, p}] = up | Fstar[j];
                    } else if (child_index(p) >= 0) {
                        next[{p, c}] = down & ~Fstar[child_index(p)];
                        next[{c, p}] = up;
                    } else if (cur.tree.is_ancestor(c, si)) {
                        next[{p, c}] = down | F;
                        next[{c, p}] = up & ~F;
                    } else {
                        next[{p, c}] = down & ~F;
                        next[{c, p}] = up | F;
                    }
                }
            }
            cur.cones = std::move(next);
            if (audit) {
                ExactifyAudit::Step rec;
                rec.node = si;
                rec.F = Fj;
                rec.boundary_size = chooser.bestBoundary;
                audit->steps.push_back(rec);
            }
        } else if (audit) {
            audit->steps.push_back({si, {}, popcount64(cur.bags[si]), {}, {}});
        }

        for (int t = 0; t < N; ++t)
            if (inTi[t]) cur.bags[t] = partition_boundary(g, cur.node_partition(t));

        if (audit) {
            audit->steps.back().bags = cur.bags;
            audit->steps.back().cones = cur.cones;
            auto stepCheck = validate_ptd(cur);
            if (!stepCheck.ok)
                throw std::logic_error("exactify: intermediate state invalid at step " +
                                       std::to_string(step) + ": " + stepCheck.error);
        }
    }
    return cur;
}

std::string ExactifyAudit::to_jsonl() const {
    std::ostringstream out;
    for (auto& step : steps) {
        nlohmann::json j;
        j["node"] = step.node;
        auto& f = j["F"] = nlohmann::json::array();
        for (auto mask : step.F) f.push_back(bits_of(mask));
        j["boundary_size"] = step.boundary_size;
        auto& b = j["bags"] = nlohmann::json::array();
        for (auto mask : step.bags) b.push_back(bits_of(mask));
        out << j.dump() << "\n";
    }
    return out.str();
}

}  // namespace deepwide
