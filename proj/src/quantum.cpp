#include "deepwide/quantum.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "deepwide/canonical.hpp"
#include "json.hpp"

namespace deepwide {

ConstructionTree leaf_witness(const LabelledGraph& g) {
    ConstructionTree ct;
    ConstructionTree::Node node;
    node.graph = g;
    node.to_root.resize(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) node.to_root[v] = v;
    node.parent = -1;
    ct.nodes.push_back(node);
    ct.root = 0;
    return ct;
}

namespace {

// Witness for a product term: new product root over both trees, with child
// coordinates pushed through the identification maps.
ConstructionTree product_witness(const ConstructionTree& a, const ConstructionTree& b,
                                 const ProductResult& prod) {
    ConstructionTree out;
    ConstructionTree::Node root;
    root.graph = prod.graph;
    root.to_root.resize(prod.graph.num_vertices());
    for (int v = 0; v < prod.graph.num_vertices(); ++v) root.to_root[v] = v;
    root.parent = -1;
    out.nodes.push_back(root);
    out.root = 0;
    auto append = [&](const ConstructionTree& src, const std::vector<int>& remap) {
        int base = (int)out.nodes.size();
        for (int i = 0; i < (int)src.nodes.size(); ++i) {
            ConstructionTree::Node node = src.nodes[i];
            for (auto& x : node.to_root) x = remap[x];
            node.parent = i == src.root ? 0 : base + node.parent;
            out.nodes.push_back(node);
        }
    };
    append(a, prod.map_f);
    append(b, prod.map_g);
    return out;
}

ConstructionTree elimination_witness(const ConstructionTree& child, const LabelledGraph& lifted) {
    ConstructionTree out;
    ConstructionTree::Node root;
    root.graph = lifted;
    root.to_root.resize(lifted.num_vertices());
    for (int v = 0; v < lifted.num_vertices(); ++v) root.to_root[v] = v;
    root.parent = -1;
    out.nodes.push_back(root);
    out.root = 0;
    for (int i = 0; i < (int)child.nodes.size(); ++i) {
        ConstructionTree::Node node = child.nodes[i];
        node.parent = i == child.root ? 0 : node.parent + 1;
        out.nodes.push_back(node);
    }
    return out;
}

// Connected components of a term in its own coordinates, as materialized
// labelled graphs.
std::vector<LabelledGraph> term_components(const LabelledGraph& f) {
    int n = f.num_vertices();
    auto adj = f.neighbour_lists();
    std::vector<int> comp(n, -1);
    int count = 0;
    for (int seed = 0; seed < n; ++seed) {
        if (comp[seed] >= 0) continue;
        std::vector<int> stack{seed};
        comp[seed] = count;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : adj[v])
                if (comp[u] < 0) {
                    comp[u] = count;
                    stack.push_back(u);
                }
        }
        ++count;
    }
    std::vector<std::vector<int>> members(count);
    for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);
    std::vector<LabelledGraph> out;
    for (auto& verts : members) {
        std::vector<int> back(n, -1);
        for (int i = 0; i < (int)verts.size(); ++i) back[verts[i]] = i;
        std::vector<std::pair<int, int>> edges;
        for (auto& [u, v] : f.edges())
            if (back[u] >= 0 && back[v] >= 0) edges.emplace_back(back[u], back[v]);
        LabelledGraph sub((int)verts.size(), std::move(edges), f.loops_allowed());
        for (int i = 1; i <= f.max_label_index(); ++i)
            if (f.has_label(i) && back[f.label(i)] >= 0)
                sub.set_label_inplace(i, back[f.label(i)]);
        out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace

void QuantumGraph::normalize() {
    // bucket by an isomorphism-invariant key, then merge isomorphic terms
    std::map<std::string, std::vector<Term>> buckets;
    for (auto& term : terms_) {
        if (term.coeff.is_zero() || term.graph.has_loop()) continue;
        auto& bucket = buckets[iso_invariant_key(term.graph)];
        bool merged = false;
        for (auto& rep : bucket) {
            if (rep.graph.num_vertices() != term.graph.num_vertices() ||
                rep.graph.num_edges() != term.graph.num_edges())
                continue;
            if (isomorphic(rep.graph, term.graph, LabelledGraph::kMaxVertices)) {
                rep.coeff += term.coeff;
                if (!rep.witness && term.witness) rep.witness = term.witness;
                merged = true;
                break;
            }
        }
        if (!merged) bucket.push_back(term);
    }
    terms_.clear();
    for (auto& [key, bucket] : buckets)
        for (auto& term : bucket)
            if (!term.coeff.is_zero()) terms_.push_back(std::move(term));

    // intern the connected components once; hom evaluation reuses them
    std::map<std::string, std::vector<int>> compBuckets;
    for (auto& term : terms_) {
        std::vector<int> ids;
        for (auto& comp : term_components(term.graph)) {
            auto& bucket = compBuckets[iso_invariant_key(comp)];
            int found = -1;
            for (int id : bucket) {
                const auto& rep = component_pool_[id];
                if (rep.num_vertices() != comp.num_vertices() ||
                    rep.num_edges() != comp.num_edges())
                    continue;
                if (isomorphic(rep, comp, LabelledGraph::kMaxVertices)) {
                    found = id;
                    break;
                }
            }
            if (found < 0) {
                component_pool_.push_back(comp);
                found = (int)component_pool_.size() - 1;
                bucket.push_back(found);
            }
            ids.push_back(found);
        }
        term_factors_.push_back(std::move(ids));
    }
}

QuantumGraph QuantumGraph::unit() {
    LabelledGraph empty(0);
    Term t{Rational(1), empty, leaf_witness(empty)};
    return QuantumGraph({t});
}

QuantumGraph QuantumGraph::single(const LabelledGraph& g, Rational c) {
    Term t{c, g, g.fully_labelled() ? std::optional<ConstructionTree>(leaf_witness(g))
                                    : std::nullopt};
    return QuantumGraph({t});
}

QuantumGraph QuantumGraph::operator+(const QuantumGraph& o) const {
    std::vector<Term> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return QuantumGraph(std::move(all));
}

QuantumGraph QuantumGraph::operator*(const Rational& c) const {
    std::vector<Term> all = terms_;
    for (auto& t : all) t.coeff *= c;
    return QuantumGraph(std::move(all));
}

Rational hom_count_quantum(const QuantumGraph& q, const LabelledGraph& g) {
    const auto& pool = q.component_pool();
    std::vector<BigInt> perComponent(pool.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < (int)pool.size(); ++i) perComponent[i] = hom_count_big(pool[i], g);
    Rational total;
    for (size_t i = 0; i < q.terms().size(); ++i) {
        BigInt count(1);
        for (int id : q.term_factors()[i]) {
            count = count * perComponent[id];
            if (count.is_zero()) break;
        }
        total += q.terms()[i].coeff * Rational(count);
    }
    return total;
}

QuantumGraph qg_product(const QuantumGraph& a, const QuantumGraph& b) {
    std::vector<QuantumGraph::Term> out;
    for (auto& ta : a.terms())
        for (auto& tb : b.terms()) {
            ProductResult prod = product_with_maps(ta.graph, tb.graph);
            QuantumGraph::Term term;
            term.coeff = ta.coeff * tb.coeff;
            term.graph = prod.graph;
            if (!term.graph.has_loop() && ta.witness && tb.witness)
                term.witness = product_witness(*ta.witness, *tb.witness, prod);
            out.push_back(std::move(term));
        }
    return QuantumGraph(std::move(out));
}

QuantumGraph remove_label_qg(const QuantumGraph& q, int l) {
    std::vector<QuantumGraph::Term> out;
    for (auto& t : q.terms()) {
        QuantumGraph::Term nt;
        nt.coeff = t.coeff;
        if (!t.graph.has_label(l)) {
            nt.graph = t.graph;
            nt.witness = t.witness;
        } else {
            nt.graph = remove_label(t.graph, l);
            if (t.witness) nt.witness = elimination_witness(*t.witness, nt.graph);
        }
        out.push_back(std::move(nt));
    }
    return QuantumGraph(std::move(out));
}

QuantumGraph interpolate(const QuantumGraph& q, const std::vector<Rational>& s_plus,
                         const std::vector<Rational>& s_minus) {
    for (auto& a : s_plus)
        for (auto& b : s_minus)
            if (a == b) throw std::invalid_argument("interpolate: point sets overlap");

    // Lagrange basis over s_plus against all points, expanded to monomial
    // coefficients.
    std::vector<Rational> points = s_plus;
    points.insert(points.end(), s_minus.begin(), s_minus.end());
    std::vector<Rational> poly(1, Rational(0));  // coefficient vector, low degree first
    auto poly_add = [](std::vector<Rational>& p, const std::vector<Rational>& qv) {
        if (p.size() < qv.size()) p.resize(qv.size(), Rational(0));
        for (size_t i = 0; i < qv.size(); ++i) p[i] += qv[i];
    };
    for (auto& s : s_plus) {
        std::vector<Rational> basis(1, Rational(1));
        Rational denom(1);
        for (auto& sp : points) {
            if (sp == s) continue;
            // basis *= (x - sp)
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (size_t i = 0; i < basis.size(); ++i) {
                next[i + 1] += basis[i];
                next[i] += basis[i] * (-sp);
            }
            basis = std::move(next);
            denom *= s - sp;
        }
        for (auto& c : basis) c = c / denom;
        poly_add(poly, basis);
    }

    // Horner over the quantum-graph algebra.
    QuantumGraph result;  // zero
    QuantumGraph unit = QuantumGraph::unit();
    for (int d = (int)poly.size() - 1; d >= 0; --d)
        result = qg_product(result, q) + unit * poly[d];
    return result;
}

std::string QuantumGraph::to_json() const {
    nlohmann::json j;
    auto& list = j["terms"] = nlohmann::json::array();
    for (auto& t : terms_) {
        nlohmann::json e;
        e["coeff"] = t.coeff.str();
        std::ostringstream g;
        write_graph_text(t.graph, g);
        e["graph"] = g.str();
        list.push_back(e);
    }
    return j.dump(2);
}

QuantumGraph QuantumGraph::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<Term> terms;
    for (auto& e : j.at("terms")) {
        Term t;
        t.coeff = Rational::parse(e.at("coeff").get<std::string>());
        std::string gref = e.at("graph").get<std::string>();
        if (gref.find('\n') == std::string::npos && gref.find(' ') == std::string::npos) {
            t.graph = read_graph_file(gref);  // path reference
        } else {
            std::istringstream gs(gref);
            t.graph = read_graph_text(gs);
        }
        terms.push_back(std::move(t));
    }
    return QuantumGraph(std::move(terms));
}

}  // namespace deepwide
