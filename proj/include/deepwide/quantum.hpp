#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deepwide/decomp.hpp"
#include "deepwide/graph.hpp"
#include "deepwide/hom.hpp"
#include "deepwide/rational.hpp"

namespace deepwide {

/// Finite formal linear combination of labelled graphs with exact rational
/// coefficients. Terms whose graph carries a self-loop are dropped (they
/// admit no homomorphism into a loopless graph); terms with isomorphic
/// graphs are combined; zero coefficients vanish. Each term may carry a
/// construction tree recording how its graph was built.
class QuantumGraph {
  public:
    struct Term {
        Rational coeff;
        LabelledGraph graph;
        std::optional<ConstructionTree> witness;
    };

    QuantumGraph() = default;
    explicit QuantumGraph(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

    static QuantumGraph zero() { return QuantumGraph(); }
    /// The empty graph with coefficient one: hom(unit, g) = 1.
    static QuantumGraph unit();
    static QuantumGraph single(const LabelledGraph& g, Rational c = Rational(1));

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Connected components shared across the terms: the pool holds one
    /// representative per isomorphism class, term_factors lists pool ids
    /// per term. hom evaluation factors through these.
    const std::vector<LabelledGraph>& component_pool() const { return component_pool_; }
    const std::vector<std::vector<int>>& term_factors() const { return term_factors_; }

    QuantumGraph operator+(const QuantumGraph& o) const;
    QuantumGraph operator*(const Rational& c) const;

    std::string to_json() const;
    static QuantumGraph from_json(const std::string& text);

  private:
    std::vector<Term> terms_;
    std::vector<LabelledGraph> component_pool_;
    std::vector<std::vector<int>> term_factors_;
    void normalize();
};

/// hom extended linearly: sum of c_i * hom(F_i, g).
Rational hom_count_quantum(const QuantumGraph& q, const LabelledGraph& g);

/// Distributive product with loop-dropping; multiplicative on hom counts
/// into loopless targets.
QuantumGraph qg_product(const QuantumGraph& a, const QuantumGraph& b);

/// Removes label l from every term; hom of the result sums hom of the input
/// over all placements of l in the target.
QuantumGraph remove_label_qg(const QuantumGraph& q, int l);

/// The unique polynomial p with p = 1 on s_plus and p = 0 on s_minus,
/// applied to q via products: hom(result, g) = p(hom(q, g)).
QuantumGraph interpolate(const QuantumGraph& q, const std::vector<Rational>& s_plus,
                         const std::vector<Rational>& s_minus);

/// Single-node construction tree for a fully labelled graph.
ConstructionTree leaf_witness(const LabelledGraph& g);

}  // namespace deepwide
