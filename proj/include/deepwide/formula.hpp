#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "deepwide/graph.hpp"

namespace deepwide {

/// Hash-consed counting-logic formulas: atoms x_i = x_j and E x_i x_j,
/// negation, disjunction, conjunction, and threshold quantifiers
/// "exists at least t". Formulas are ids into an arena; structurally equal
/// subformulas share one node.
class FormulaArena {
  public:
    enum class Kind { True, False, Eq, Edge, Not, Or, And, Exists };

    struct Node {
        Kind kind;
        int a = 0, b = 0;  // atom variables / child ids
        int t = 0, var = 0;  // quantifier threshold and variable
    };

    int tru() { return intern({Kind::True, 0, 0, 0, 0}); }
    int fls() { return intern({Kind::False, 0, 0, 0, 0}); }
    int eq(int i, int j) { return intern({Kind::Eq, std::min(i, j), std::max(i, j), 0, 0}); }
    int edge(int i, int j) { return intern({Kind::Edge, std::min(i, j), std::max(i, j), 0, 0}); }
    int neg(int f);
    int lor(int f, int g);
    int land(int f, int g);
    /// Requires t >= 1.
    int exists_geq(int t, int var, int body);
    /// exists exactly t: derived; t = 0 becomes "not exists >= 1".
    int exists_eq(int t, int var, int body);
    int big_or(const std::vector<int>& fs);
    int big_and(const std::vector<int>& fs);

    const Node& node(int id) const { return nodes_[id]; }
    int size() const { return (int)nodes_.size(); }

    int qr(int id) const;
    /// All variable indices occurring in the formula (free or bound).
    std::uint32_t vars(int id) const;
    std::uint32_t free_vars(int id) const;
    bool in_fragment(int id, int k, int q) const;
    /// Quantifiers only in the shape "exists>=t y (E x y and psi)" with
    /// x != y.
    bool is_guarded(int id) const;

    std::string print(int id) const;
    int parse(const std::string& text);

    bool evaluate(const LabelledGraph& g, int id);

  private:
    std::vector<Node> nodes_;
    std::map<std::tuple<int, int, int, int, int>, int> interned_;
    mutable std::vector<int> qr_, vars_, free_;

    int intern(Node n);

    struct EvalKey {
        int id;
        std::vector<std::pair<int, int>> labels;  // relevant label state
        bool operator<(const EvalKey& o) const {
            if (id != o.id) return id < o.id;
            return labels < o.labels;
        }
    };
    std::map<EvalKey, bool> eval_memo_;
    std::string eval_graph_key_;  // memo is per graph structure
    bool eval(const LabelledGraph& g, int id);
};

}  // namespace deepwide
