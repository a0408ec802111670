#include "deepwide/formula.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace deepwide {

int FormulaArena::intern(Node n) {
    auto key = std::make_tuple((int)n.kind, n.a, n.b, n.t, n.var);
    auto it = interned_.find(key);
    if (it != interned_.end()) return it->second;
    nodes_.push_back(n);
    int id = (int)nodes_.size() - 1;
    interned_.emplace(key, id);
    qr_.push_back(-1);
    vars_.push_back(-1);
    free_.push_back(-1);
    return id;
}

int FormulaArena::neg(int f) {
    if (nodes_[f].kind == Kind::True) return fls();
    if (nodes_[f].kind == Kind::False) return tru();
    if (nodes_[f].kind == Kind::Not) return nodes_[f].a;
    return intern({Kind::Not, f, 0, 0, 0});
}

int FormulaArena::lor(int f, int g) {
    if (nodes_[f].kind == Kind::True || nodes_[g].kind == Kind::True) return tru();
    if (nodes_[f].kind == Kind::False) return g;
    if (nodes_[g].kind == Kind::False) return f;
    if (f == g) return f;
    return intern({Kind::Or, std::min(f, g), std::max(f, g), 0, 0});
}

int FormulaArena::land(int f, int g) {
    if (nodes_[f].kind == Kind::False || nodes_[g].kind == Kind::False) return fls();
    if (nodes_[f].kind == Kind::True) return g;
    if (nodes_[g].kind == Kind::True) return f;
    if (f == g) return f;
    return intern({Kind::And, std::min(f, g), std::max(f, g), 0, 0});
}

int FormulaArena::exists_geq(int t, int var, int body) {
    if (t < 1) throw std::invalid_argument("exists_geq: threshold must be >= 1");
    if (nodes_[body].kind == Kind::False) return fls();
    return intern({Kind::Exists, body, 0, t, var});
}

int FormulaArena::exists_eq(int t, int var, int body) {
    if (t == 0) return neg(exists_geq(1, var, body));
    return land(exists_geq(t, var, body), neg(exists_geq(t + 1, var, body)));
}

int FormulaArena::big_or(const std::vector<int>& fs) {
    int acc = fls();
    for (int f : fs) acc = lor(acc, f);
    return acc;
}

int FormulaArena::big_and(const std::vector<int>& fs) {
    int acc = tru();
    for (int f : fs) acc = land(acc, f);
    return acc;
}

int FormulaArena::qr(int id) const {
    if (qr_[id] >= 0) return qr_[id];
    const Node& n = nodes_[id];
    int r = 0;
    switch (n.kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Eq:
        case Kind::Edge: r = 0; break;
        case Kind::Not: r = qr(n.a); break;
        case Kind::Or:
        case Kind::And: r = std::max(qr(n.a), qr(n.b)); break;
        case Kind::Exists: r = 1 + qr(n.a); break;
    }
    qr_[id] = r;
    return r;
}

std::uint32_t FormulaArena::vars(int id) const {
    if (vars_[id] >= 0) return (std::uint32_t)vars_[id];
    const Node& n = nodes_[id];
    std::uint32_t v = 0;
    switch (n.kind) {
        case Kind::True:
        case Kind::False: break;
        case Kind::Eq:
        case Kind::Edge: v = (1u << n.a) | (1u << n.b); break;
        case Kind::Not: v = vars(n.a); break;
        case Kind::Or:
        case Kind::And: v = vars(n.a) | vars(n.b); break;
        case Kind::Exists: v = vars(n.a) | (1u << n.var); break;
    }
    vars_[id] = (int)v;
    return v;
}

std::uint32_t FormulaArena::free_vars(int id) const {
    if (free_[id] >= 0) return (std::uint32_t)free_[id];
    const Node& n = nodes_[id];
    std::uint32_t v = 0;
    switch (n.kind) {
        case Kind::True:
        case Kind::False: break;
        case Kind::Eq:
        case Kind::Edge: v = (1u << n.a) | (1u << n.b); break;
        case Kind::Not: v = free_vars(n.a); break;
        case Kind::Or:
        case Kind::And: v = free_vars(n.a) | free_vars(n.b); break;
        case Kind::Exists: v = free_vars(n.a) & ~(1u << n.var); break;
    }
    free_[id] = (int)v;
    return v;
}

bool FormulaArena::in_fragment(int id, int k, int q) const {
    std::uint32_t v = vars(id);
    for (int i = k + 1; i < 32; ++i)
        if (v >> i & 1) return false;
    return qr(id) <= q;
}

bool FormulaArena::is_guarded(int id) const {
    const Node& n = nodes_[id];
    switch (n.kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Eq:
        case Kind::Edge: return true;
        case Kind::Not: return is_guarded(n.a);
        case Kind::Or:
        case Kind::And: return is_guarded(n.a) && is_guarded(n.b);
        case Kind::Exists: {
            const Node& body = nodes_[n.a];
            auto guard_ok = [&](int cand) {
                const Node& gn = nodes_[cand];
                if (gn.kind != Kind::Edge) return false;
                if (gn.a == gn.b) return false;
                return gn.a == n.var || gn.b == n.var;
            };
            // a bare edge guard is the degenerate "guard and true" body
            if (guard_ok(n.a)) return true;
            if (body.kind != Kind::And) return false;
            if (guard_ok(body.a)) return is_guarded(body.b);
            if (guard_ok(body.b)) return is_guarded(body.a);
            return false;
        }
    }
    return false;
}

std::string FormulaArena::print(int id) const {
    const Node& n = nodes_[id];
    std::ostringstream out;
    switch (n.kind) {
        case Kind::True: return "(true)";
        case Kind::False: return "(false)";
        case Kind::Eq: out << "(= " << n.a << " " << n.b << ")"; break;
        case Kind::Edge: out << "(E " << n.a << " " << n.b << ")"; break;
        case Kind::Not: out << "(not " << print(n.a) << ")"; break;
        case Kind::Or: out << "(or " << print(n.a) << " " << print(n.b) << ")"; break;
        case Kind::And: out << "(and " << print(n.a) << " " << print(n.b) << ")"; break;
        case Kind::Exists:
            out << "(exists>= " << n.t << " " << n.var << " " << print(n.a) << ")";
            break;
    }
    return out.str();
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    FormulaArena& arena;

    void skip() {
        while (pos < s.size() && isspace((unsigned char)s[pos])) ++pos;
    }
    void expect(char c) {
        skip();
        if (pos >= s.size() || s[pos] != c)
            throw std::runtime_error("formula parse: expected '" + std::string(1, c) + "' at " +
                                     std::to_string(pos));
        ++pos;
    }
    std::string token() {
        skip();
        size_t start = pos;
        while (pos < s.size() && !isspace((unsigned char)s[pos]) && s[pos] != '(' && s[pos] != ')')
            ++pos;
        if (start == pos) throw std::runtime_error("formula parse: empty token");
        return s.substr(start, pos - start);
    }
    int number() { return std::stoi(token()); }

    int formula() {
        expect('(');
        std::string op = token();
        int result;
        if (op == "true") {
            result = arena.tru();
        } else if (op == "false") {
            result = arena.fls();
        } else if (op == "=") {
            int i = number(), j = number();
            result = arena.eq(i, j);
        } else if (op == "E") {
            int i = number(), j = number();
            result = arena.edge(i, j);
        } else if (op == "not") {
            result = arena.neg(formula());
        } else if (op == "or") {
            int a = formula(), b = formula();
            result = arena.lor(a, b);
        } else if (op == "and") {
            int a = formula(), b = formula();
            result = arena.land(a, b);
        } else if (op == "exists>=") {
            int t = number(), var = number();
            result = arena.exists_geq(t, var, formula());
        } else if (op == "exists=") {
            int t = number(), var = number();
            result = arena.exists_eq(t, var, formula());
        } else {
            throw std::runtime_error("formula parse: unknown operator " + op);
        }
        expect(')');
        return result;
    }
};

}  // namespace

int FormulaArena::parse(const std::string& text) {
    Parser p{text, 0, *this};
    int id = p.formula();
    p.skip();
    if (p.pos != text.size()) throw std::runtime_error("formula parse: trailing input");
    return id;
}

bool FormulaArena::evaluate(const LabelledGraph& g, int id) {
    std::uint32_t fv = free_vars(id);
    for (int i = 1; i < 32; ++i)
        if ((fv >> i & 1) && !g.has_label(i))
            throw std::invalid_argument("evaluate: free variable x_" + std::to_string(i) +
                                        " unlabelled in g");
    // the memo table is only valid per underlying graph structure
    std::ostringstream key;
    key << g.num_vertices() << ":";
    for (auto& [u, v] : g.edges()) key << u << "," << v << ";";
    if (key.str() != eval_graph_key_) {
        eval_memo_.clear();
        eval_graph_key_ = key.str();
    }
    return eval(g, id);
}

bool FormulaArena::eval(const LabelledGraph& g, int id) {
    const Node& n = nodes_[id];
    switch (n.kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Eq: return g.label(n.a) == g.label(n.b);
        case Kind::Edge: {
            int u = g.label(n.a), v = g.label(n.b);
            return u >= 0 && v >= 0 && g.has_edge(u, v);
        }
        default: break;
    }
    EvalKey key{id, {}};
    std::uint32_t fv = free_vars(id);
    for (int i = 1; i < 32; ++i)
        if (fv >> i & 1) key.labels.emplace_back(i, g.label(i));
    auto it = eval_memo_.find(key);
    if (it != eval_memo_.end()) return it->second;
    bool result = false;
    switch (n.kind) {
        case Kind::Not: result = !eval(g, n.a); break;
        case Kind::Or: result = eval(g, n.a) || eval(g, n.b); break;
        case Kind::And: result = eval(g, n.a) && eval(g, n.b); break;
        case Kind::Exists: {
            int hits = 0;
            for (int v = 0; v < g.num_vertices() && hits < n.t; ++v)
                if (eval(set_label(g, n.var, v), n.a)) ++hits;
            result = hits >= n.t;
            break;
        }
        default: break;
    }
    eval_memo_.emplace(std::move(key), result);
    return result;
}

}  // namespace deepwide
