#include "deepwide/homlogic.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace deepwide {

namespace {

// Decompositions m = sum c_i * m_i with distinct m_i >= 1, c_i >= 1 and
// sum c_i <= cap; each entry is a list of (c_i, m_i).
void decompositions(long long m, long long maxPart, int cap,
                    std::vector<std::pair<int, long long>>& cur,
                    std::vector<std::vector<std::pair<int, long long>>>& out) {
    if (m == 0) {
        out.push_back(cur);
        return;
    }
    if (cap <= 0) return;
    for (long long mi = std::min(maxPart, m); mi >= 1; --mi) {
        for (int ci = 1; ci <= cap && (long long)ci * mi <= m; ++ci) {
            cur.emplace_back(ci, mi);
            decompositions(m - ci * mi, mi - 1, cap - ci, cur, out);
            cur.pop_back();
        }
    }
}

struct CtFormulaBuilder {
    FormulaArena& arena;
    const ConstructionTree& ct;
    int cap;
    bool guarded;
    std::vector<std::vector<int>> children;
    std::map<std::pair<int, long long>, int> memo;

    int leaf_one(int node) {
        const LabelledGraph& h = ct.nodes[node].graph;
        std::vector<int> parts;
        auto idx = h.label_indices();
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = i + 1; j < idx.size(); ++j)
                if (h.label(idx[i]) == h.label(idx[j])) parts.push_back(arena.eq(idx[i], idx[j]));
        for (auto& [u, v] : h.edges()) {
            int iu = -1, iv = -1;
            for (int i : idx) {
                if (h.label(i) == u && iu < 0) iu = i;
                if (h.label(i) == v && iv < 0) iv = i;
            }
            parts.push_back(arena.edge(iu, iv));
        }
        return arena.big_and(parts);
    }

    // phi for "hom of the product of nodes[idx..] equals m"
    int product_tail(int node, size_t idx, long long m) {
        const auto& kids = children[node];
        if (idx + 1 == kids.size()) return phi(kids[idx], m);
        if (m == 0) {
            int zeroHead = phi(kids[idx], 0);
            return arena.lor(zeroHead, product_tail(node, idx + 1, 0));
        }
        std::vector<int> cases;
        for (long long m1 = 1; m1 * m1 <= m * 1; ++m1) {
            if (m % m1 != 0) continue;
            long long m2 = m / m1;
            cases.push_back(arena.land(phi(kids[idx], m1), product_tail(node, idx + 1, m2)));
            if (m1 != m2)
                cases.push_back(arena.land(phi(kids[idx], m2), product_tail(node, idx + 1, m1)));
        }
        return arena.big_or(cases);
    }

    int elimination(int node, long long m) {
        int child = children[node][0];
        // the removed label and, when guarded, a labelled neighbour
        auto pl = [&](int t) {
            std::map<int, int> out;
            const auto& nd = ct.nodes[t];
            for (int i = 1; i <= nd.graph.max_label_index(); ++i)
                if (nd.graph.has_label(i)) out[i] = nd.to_root[nd.graph.label(i)];
            return out;
        };
        auto lp = pl(node), lc = pl(child);
        int removed = -1;
        for (auto& [i, v] : lc)
            if (!lp.count(i)) removed = i;
        if (removed < 0) throw std::invalid_argument("formula_from_ct: node is not an elimination");
        int guard = arena.tru();
        if (guarded) {
            const auto& cg = ct.nodes[child].graph;
            int lv = cg.label(removed);
            int guardIdx = -1;
            for (int i = 1; i <= cg.max_label_index(); ++i) {
                if (i == removed || !cg.has_label(i)) continue;
                if (cg.has_edge(lv, cg.label(i)) && cg.label(i) != lv) guardIdx = i;
            }
            if (guardIdx < 0)
                throw std::invalid_argument(
                    "guarded_formula_from_ct: removed label has no labelled neighbour");
            guard = arena.edge(removed, guardIdx);
        }
        auto ex_eq = [&](int t, int body) {
            return arena.exists_eq(t, removed, arena.land(guard, body));
        };
        int notZero = arena.neg(phi(child, 0));
        if (m == 0) return ex_eq(0, notZero);
        std::vector<std::vector<std::pair<int, long long>>> decs;
        std::vector<std::pair<int, long long>> cur;
        decompositions(m, m, cap, cur, decs);
        std::vector<int> cases;
        for (auto& dec : decs) {
            int c = 0;
            std::vector<int> parts;
            for (auto& [ci, mi] : dec) {
                c += ci;
                parts.push_back(ex_eq(ci, phi(child, mi)));
            }
            parts.push_back(ex_eq(c, notZero));
            cases.push_back(arena.big_and(parts));
        }
        return arena.big_or(cases);
    }

    int phi(int node, long long m) {
        auto key = std::make_pair(node, m);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        int result;
        if (children[node].empty()) {
            if (m == 1)
                result = leaf_one(node);
            else if (m == 0)
                result = arena.neg(leaf_one(node));
            else
                result = arena.fls();
        } else if (children[node].size() == 1) {
            result = elimination(node, m);
        } else {
            result = product_tail(node, 0, m);
        }
        memo.emplace(key, result);
        return result;
    }
};

int build_ct_formula(FormulaArena& arena, const ConstructionTree& ct, long long m, int cap,
                     bool guarded) {
    if (m < 0) throw std::invalid_argument("formula_from_ct: m must be >= 0");
    auto check = validate_ct(ct, 31, guarded);  // structural soundness; variable use is the cap
    if (!check.ok) throw std::invalid_argument("formula_from_ct: invalid tree: " + check.error);
    CtFormulaBuilder builder{arena, ct, cap, guarded, ct.shape().children(), {}};
    return builder.phi(ct.root, m);
}

}  // namespace

int formula_from_ct(FormulaArena& arena, const ConstructionTree& ct, long long m,
                    int witness_cap) {
    return build_ct_formula(arena, ct, m, witness_cap, false);
}

int guarded_formula_from_ct(FormulaArena& arena, const ConstructionTree& ct, long long m,
                            int witness_cap) {
    return build_ct_formula(arena, ct, m, witness_cap, true);
}

namespace {

QuantumGraph qg_build(FormulaArena& arena, int phi, int n, int k, int q, bool guarded) {
    using Kind = FormulaArena::Kind;
    const auto& node = arena.node(phi);
    switch (node.kind) {
        case Kind::True: return QuantumGraph::unit();
        case Kind::False: return QuantumGraph::zero();
        case Kind::Eq: {
            LabelledGraph g(1);
            g.set_label_inplace(node.a, 0);
            g.set_label_inplace(node.b, 0);
            return QuantumGraph::single(g);
        }
        case Kind::Edge: {
            if (node.a == node.b) return QuantumGraph::zero();
            LabelledGraph g(2, {{0, 1}});
            g.set_label_inplace(node.a, 0);
            g.set_label_inplace(node.b, 1);
            return QuantumGraph::single(g);
        }
        case Kind::Not: {
            auto inner = qg_build(arena, node.a, n, k, q, guarded);
            return interpolate(inner, {Rational(0)}, {Rational(1)});
        }
        case Kind::Or: {
            // complement of the conjunction of complements: products only,
            // which keeps the term count far below the interpolation square
            auto a = qg_build(arena, node.a, n, k, q, guarded);
            auto b = qg_build(arena, node.b, n, k, q, guarded);
            auto notA = interpolate(a, {Rational(0)}, {Rational(1)});
            auto notB = interpolate(b, {Rational(0)}, {Rational(1)});
            return interpolate(qg_product(notA, notB), {Rational(0)}, {Rational(1)});
        }
        case Kind::And: {
            // indicators multiply
            return qg_product(qg_build(arena, node.a, n, k, q, guarded),
                              qg_build(arena, node.b, n, k, q, guarded));
        }
        case Kind::Exists: {
            int bodyId = node.a;
            QuantumGraph body;
            if (guarded) {
                auto is_guard = [&](int cand) {
                    const auto& gn = arena.node(cand);
                    return gn.kind == Kind::Edge && gn.a != gn.b &&
                           (gn.a == node.var || gn.b == node.var);
                };
                const auto& bodyNode = arena.node(bodyId);
                int guardId = -1, rest = -1;
                if (is_guard(bodyId)) {
                    guardId = bodyId;  // bare guard: "guard and true"
                } else if (bodyNode.kind == Kind::And && is_guard(bodyNode.a)) {
                    guardId = bodyNode.a;
                    rest = bodyNode.b;
                } else if (bodyNode.kind == Kind::And && is_guard(bodyNode.b)) {
                    guardId = bodyNode.b;
                    rest = bodyNode.a;
                } else {
                    throw std::invalid_argument("qg_from_guarded_formula: unguarded quantifier");
                }
                body = qg_build(arena, guardId, n, k, q, guarded);
                if (rest >= 0) body = qg_product(qg_build(arena, rest, n, k, q, guarded), body);
            } else {
                body = qg_build(arena, bodyId, n, k, q, guarded);
            }
            // make sure every term carries the quantified label, then sum it out
            LabelledGraph pin(1);
            pin.set_label_inplace(node.var, 0);
            body = qg_product(body, QuantumGraph::single(pin));
            auto summed = remove_label_qg(body, node.var);
            std::vector<Rational> sPlus, sMinus;
            for (int t = node.t; t <= n; ++t) sPlus.push_back(Rational(t));
            for (int t = 0; t < node.t; ++t) sMinus.push_back(Rational(t));
            if (sPlus.empty()) return QuantumGraph::zero();  // threshold above target size
            return interpolate(summed, sPlus, sMinus);
        }
    }
    throw std::logic_error("qg_from_formula: unknown node kind");
}

}  // namespace

QuantumGraph qg_from_formula(FormulaArena& arena, int phi, int n, int k, int q) {
    if (!arena.in_fragment(phi, k, q))
        throw std::invalid_argument("qg_from_formula: formula outside the (k,q) fragment");
    return qg_build(arena, phi, n, k, q, false);
}

QuantumGraph qg_from_guarded_formula(FormulaArena& arena, int phi, int n, int k, int q) {
    if (!arena.in_fragment(phi, k, q))
        throw std::invalid_argument("qg_from_guarded_formula: formula outside the (k,q) fragment");
    if (!arena.is_guarded(phi))
        throw std::invalid_argument("qg_from_guarded_formula: formula is not guarded");
    return qg_build(arena, phi, n, k, q, true);
}

}  // namespace deepwide
