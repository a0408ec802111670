#include "deepwide/decomp.hpp"
#include "deepwide/pretree.hpp"

namespace deepwide {

MembershipResult membership(const LabelledGraph& g, int k, int q) {
    MembershipResult out;
    auto res = solve(g, k, q, Variant::CR);
    if (!res.cop_wins) {
        out.in = false;
        out.evidence = res.certificate;
        return out;
    }
    out.in = true;
    if (g.num_vertices() == 0) {
        ConstructionTree ct;
        ConstructionTree::Node root;
        root.graph = g;
        ct.nodes.push_back(root);
        ct.root = 0;
        out.witness = ct;
        return out;
    }
    TreeDecomposition td = cop_win_to_td(g, k, q);
    out.decomposition = td;
    out.witness = td_to_ct(g, td, k, q);
    return out;
}

}  // namespace deepwide
