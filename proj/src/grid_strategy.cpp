#include <deque>
#include <map>
#include <stdexcept>

#include "deepwide/game.hpp"

namespace deepwide {

namespace {

// Orientation of the sweep. The mirrored sweep chases the robber towards
// (1,l) by running the same rules on the 180-degree rotated grid.
struct Coords {
    int h, l;
    bool mirrored;
    int id(int i, int j) const {
        if (mirrored) {
            i = h + 1 - i;
            j = l + 1 - j;
        }
        return grid_vertex(l, i, j);
    }
};

struct Controller {
    // phase < h: that many diagonal cops placed. phase == h: diagonal done,
    // side not yet chosen. phase == h+1: sweeping in state (i, j).
    int phase = 0;
    bool mirrored = false;
    int i = 0, j = 0;
};

}  // namespace

CopStrategy grid_cop_strategy(int h, int l) {
    if (!(3 < h && h < l - 3))
        throw std::invalid_argument("grid_cop_strategy: need 3 < h < l-3");
    LabelledGraph g = grid(h, l);
    GameBoard board(g, false);
    int cBase = l / 2 - h / 2;

    CopStrategy sigma;
    sigma.variant = Variant::CR;
    sigma.k = h + 1;
    sigma.q = (l * h) / 4 + h + 1;

    struct Item {
        std::uint64_t cops, space;
        Controller ctl;
    };
    std::deque<Item> queue;
    for (auto space : board.initial_spaces()) queue.push_back({0, space, Controller{}});

    auto diag_c = [&](bool mirrored) { return mirrored ? l - cBase - h : cBase; };

    while (!queue.empty()) {
        Item item = queue.front();
        queue.pop_front();
        auto key = std::make_pair(item.cops, board.space_rep(item.space));
        if (sigma.moves.count(key)) continue;

        std::uint64_t newCops = 0;
        Controller next = item.ctl;

        if (popcount64(item.space) == 1) {
            // Cornered: lift a cop that is not needed to seal the singleton,
            // land on the robber.
            int s = lowest_bit(item.space);
            auto adj = g.adjacency();
            int liftable = -1;
            for (int x : bits_of(item.cops))
                if (!(adj[s] >> x & 1)) liftable = x;
            std::uint64_t kept = item.cops;
            if (popcount64(kept) + 1 > sigma.k) {
                if (liftable < 0) throw std::logic_error("grid_cop_strategy: no liftable cop");
                kept &= ~bit(liftable);
            }
            newCops = kept | bit(s);
        } else if (item.ctl.phase < h) {
            int t = item.ctl.phase + 1;
            newCops = item.cops | bit(grid_vertex(l, t, cBase + t));
            next.phase = t;
        } else if (item.ctl.phase == h) {
            // Side of the robber decides the sweep orientation.
            bool left = (item.space >> grid_vertex(l, h, 1)) & 1;
            next.mirrored = !left;
            Coords cc{h, l, next.mirrored};
            int c = diag_c(next.mirrored);
            int j0 = c + 1;
            newCops = item.cops | bit(cc.id(h, j0 + h - 3));
            next.phase = h + 1;
            next.i = h;
            next.j = j0;
        } else {
            Coords cc{h, l, item.ctl.mirrored};
            int i = item.ctl.i, j = item.ctl.j;
            int lift = cc.id(i, j + i - 1);
            int place;
            if (i > 1) {
                place = cc.id(i - 1, std::max(1, j + i - 4));
                next.i = i - 1;
            } else {
                place = cc.id(h, std::max(1, j + h - 5));
                next.i = h;
                next.j = j - 2;
            }
            if (!(item.cops >> lift & 1))
                throw std::logic_error("grid_cop_strategy: expected cop missing");
            if (item.cops >> place & 1)
                throw std::logic_error("grid_cop_strategy: sweep placement collision");
            newCops = (item.cops & ~bit(lift)) | bit(place);
        }

        sigma.moves.emplace(key, newCops);
        std::uint64_t transit = board.transit_space(item.cops & newCops, item.space);
        if (!board.captured(newCops, transit))
            for (auto space : board.successor_spaces(newCops, transit))
                queue.push_back({newCops, space, next});
    }
    return sigma;
}

}  // namespace deepwide
