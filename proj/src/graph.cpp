#include "deepwide/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace deepwide {

int popcount64(std::uint64_t x) { return std::popcount(x); }
int lowest_bit(std::uint64_t x) { return std::countr_zero(x); }

std::vector<int> bits_of(std::uint64_t x) {
    std::vector<int> out;
    while (x) {
        int b = lowest_bit(x);
        out.push_back(b);
        x &= x - 1;
    }
    return out;
}

void LabelledGraph::check_size(int n) {
    if (n < 0 || n > kMaxVertices)
        throw std::invalid_argument("LabelledGraph: vertex count out of range");
}

LabelledGraph::LabelledGraph(int n, std::vector<std::pair<int, int>> edges, bool loops)
    : n_(n), loops_allowed_(loops), edges_(std::move(edges)) {
    check_size(n);
    for (auto& [u, v] : edges_) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw std::invalid_argument("LabelledGraph: edge endpoint out of range");
        if (u == v && !loops_allowed_)
            throw std::invalid_argument("LabelledGraph: self-loop in loopless graph");
        if (u > v) std::swap(u, v);
    }
    normalize_edges();
}

void LabelledGraph::normalize_edges() {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool LabelledGraph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

bool LabelledGraph::has_loop() const {
    for (auto& [u, v] : edges_)
        if (u == v) return true;
    return false;
}

void LabelledGraph::add_edge(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("add_edge: endpoint out of range");
    if (u == v && !loops_allowed_) throw std::invalid_argument("add_edge: loop not allowed");
    if (u > v) std::swap(u, v);
    if (!has_edge(u, v)) {
        edges_.emplace_back(u, v);
        normalize_edges();
    }
}

std::vector<std::uint64_t> LabelledGraph::adjacency() const {
    if (n_ > kMaxMaskVertices)
        throw std::invalid_argument("adjacency: graph too large for the bitmask form");
    std::vector<std::uint64_t> adj(n_, 0);
    for (auto& [u, v] : edges_) {
        if (u == v) continue;
        adj[u] |= bit(v);
        adj[v] |= bit(u);
    }
    return adj;
}

std::vector<std::vector<int>> LabelledGraph::neighbour_lists() const {
    std::vector<std::vector<int>> adj(n_);
    for (auto& [u, v] : edges_) {
        if (u == v) continue;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

std::vector<int> LabelledGraph::labelled_vertices() const {
    std::vector<int> out;
    for (int v : labels_)
        if (v >= 0 && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> LabelledGraph::label_indices() const {
    std::vector<int> out;
    for (int i = 0; i < (int)labels_.size(); ++i)
        if (labels_[i] >= 0) out.push_back(i + 1);
    return out;
}

bool LabelledGraph::fully_labelled() const {
    std::vector<bool> seen(n_, false);
    int count = 0;
    for (int v : labels_)
        if (v >= 0 && !seen[v]) {
            seen[v] = true;
            ++count;
        }
    return count == n_;
}

void LabelledGraph::set_label_inplace(int index, int v) {
    if (index < 1) throw std::invalid_argument("label index must be >= 1");
    if (v < 0 || v >= n_) throw std::invalid_argument("set_label: unknown vertex");
    if ((int)labels_.size() < index) labels_.resize(index, -1);
    labels_[index - 1] = v;
}

void LabelledGraph::clear_label_inplace(int index) {
    if (index < 1) throw std::invalid_argument("label index must be >= 1");
    if (index <= (int)labels_.size()) labels_[index - 1] = -1;
    while (!labels_.empty() && labels_.back() < 0) labels_.pop_back();
}

std::vector<int> LabelledGraph::trimmed_labels() const {
    std::vector<int> t = labels_;
    while (!t.empty() && t.back() < 0) t.pop_back();
    return t;
}

LabelledGraph set_label(const LabelledGraph& g, int index, int v) {
    LabelledGraph h = g;
    h.set_label_inplace(index, v);
    return h;
}

LabelledGraph remove_label(const LabelledGraph& g, int index) {
    LabelledGraph h = g;
    h.clear_label_inplace(index);
    return h;
}

LabelledGraph remove_all_labels(const LabelledGraph& g) {
    LabelledGraph h = g;
    for (int i = 1; i <= h.max_label_index(); ++i) h.clear_label_inplace(i);
    return h;
}

ProductResult product_with_maps(const LabelledGraph& f, const LabelledGraph& g) {
    int nf = f.num_vertices(), ng = g.num_vertices();
    // Union-find over the disjoint union; vertices with a common label merge.
    std::vector<int> parent(nf + ng);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    int maxIdx = std::max(f.max_label_index(), g.max_label_index());
    for (int i = 1; i <= maxIdx; ++i) {
        if (f.has_label(i) && g.has_label(i)) unite(f.label(i), nf + g.label(i));
    }
    std::vector<int> id(nf + ng, -1);
    int next = 0;
    for (int x = 0; x < nf + ng; ++x)
        if (find(x) == x) id[x] = next++;
    auto vertex_of = [&](int x) { return id[find(x)]; };

    bool created_loop = false;
    std::vector<std::pair<int, int>> edges;
    for (auto& [u, v] : f.edges()) {
        int a = vertex_of(u), b = vertex_of(v);
        if (a == b && u != v) created_loop = true;
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    for (auto& [u, v] : g.edges()) {
        int a = vertex_of(nf + u), b = vertex_of(nf + v);
        if (a == b && u != v) created_loop = true;
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    bool loops = f.loops_allowed() || g.loops_allowed() || created_loop;
    LabelledGraph result(next, std::move(edges), loops);
    for (int i = 1; i <= maxIdx; ++i) {
        if (f.has_label(i))
            result.set_label_inplace(i, vertex_of(f.label(i)));
        else if (g.has_label(i))
            result.set_label_inplace(i, vertex_of(nf + g.label(i)));
    }
    ProductResult out;
    out.graph = std::move(result);
    out.map_f.resize(nf);
    out.map_g.resize(ng);
    for (int u = 0; u < nf; ++u) out.map_f[u] = vertex_of(u);
    for (int u = 0; u < ng; ++u) out.map_g[u] = vertex_of(nf + u);
    return out;
}

LabelledGraph product(const LabelledGraph& f, const LabelledGraph& g) {
    return product_with_maps(f, g).graph;
}

LabelledGraph with_loops(const LabelledGraph& g) {
    if (g.has_loop()) throw std::invalid_argument("with_loops: input already has loops");
    auto edges = g.edges();
    for (int v = 0; v < g.num_vertices(); ++v) edges.emplace_back(v, v);
    LabelledGraph h(g.num_vertices(), std::move(edges), true);
    for (int i = 1; i <= g.max_label_index(); ++i)
        if (g.has_label(i)) h.set_label_inplace(i, g.label(i));
    return h;
}

LabelledGraph without_loops(const LabelledGraph& g) {
    std::vector<std::pair<int, int>> edges;
    for (auto& [u, v] : g.edges())
        if (u != v) edges.emplace_back(u, v);
    LabelledGraph h(g.num_vertices(), std::move(edges), false);
    for (int i = 1; i <= g.max_label_index(); ++i)
        if (g.has_label(i)) h.set_label_inplace(i, g.label(i));
    return h;
}

LabelledGraph grid(int h, int l) {
    if (h < 1 || l < 1) throw std::invalid_argument("grid: dimensions must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= h; ++i)
        for (int j = 1; j <= l; ++j) {
            if (j < l) edges.emplace_back(grid_vertex(l, i, j), grid_vertex(l, i, j + 1));
            if (i < h) edges.emplace_back(grid_vertex(l, i, j), grid_vertex(l, i + 1, j));
        }
    return LabelledGraph(h * l, std::move(edges));
}

LabelledGraph path_graph(int n) { return grid(1, n); }

LabelledGraph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need >= 3 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return LabelledGraph(n, std::move(edges));
}

LabelledGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return LabelledGraph(n, std::move(edges));
}

LabelledGraph delete_vertex(const LabelledGraph& g, int v) {
    if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("delete_vertex: unknown vertex");
    std::vector<std::pair<int, int>> edges;
    auto remap = [&](int x) { return x > v ? x - 1 : x; };
    for (auto& [a, b] : g.edges())
        if (a != v && b != v) edges.emplace_back(remap(a), remap(b));
    LabelledGraph h(g.num_vertices() - 1, std::move(edges), g.loops_allowed());
    for (int i = 1; i <= g.max_label_index(); ++i)
        if (g.has_label(i) && g.label(i) != v) h.set_label_inplace(i, remap(g.label(i)));
    return h;
}

LabelledGraph delete_edge(const LabelledGraph& g, int u, int v) {
    if (!g.has_edge(u, v)) throw std::invalid_argument("delete_edge: no such edge");
    if (u > v) std::swap(u, v);
    std::vector<std::pair<int, int>> edges;
    for (auto& e : g.edges())
        if (e != std::make_pair(u, v)) edges.push_back(e);
    LabelledGraph h(g.num_vertices(), std::move(edges), g.loops_allowed());
    for (int i = 1; i <= g.max_label_index(); ++i)
        if (g.has_label(i)) h.set_label_inplace(i, g.label(i));
    return h;
}

LabelledGraph contract_edge(const LabelledGraph& g, int u, int v) {
    if (!g.has_edge(u, v) || u == v) throw std::invalid_argument("contract_edge: no such edge");
    if (u > v) std::swap(u, v);
    // v merges into u; ids above v shift down.
    auto remap = [&](int x) {
        if (x == v) return u;
        return x > v ? x - 1 : x;
    };
    std::vector<std::pair<int, int>> edges;
    for (auto& [a, b] : g.edges()) {
        int x = remap(a), y = remap(b);
        if (x == y && !(a == b)) continue;  // the contracted edge itself (and parallels)
        edges.emplace_back(std::min(x, y), std::max(x, y));
    }
    LabelledGraph h(g.num_vertices() - 1, std::move(edges), g.loops_allowed());
    for (int i = 1; i <= g.max_label_index(); ++i)
        if (g.has_label(i)) h.set_label_inplace(i, remap(g.label(i)));
    return h;
}

VertexSubsetView::VertexSubsetView(const LabelledGraph& g, std::uint64_t s) : base(&g), subset(s) {
    if (g.num_vertices() < 64 && (s >> g.num_vertices()) != 0)
        throw std::invalid_argument("VertexSubsetView: subset not within vertex set");
}

std::vector<int> VertexSubsetView::vertex_list() const { return bits_of(subset); }

LabelledGraph VertexSubsetView::materialize() const {
    auto verts = vertex_list();
    std::vector<int> idx(base->num_vertices(), -1);
    for (int i = 0; i < (int)verts.size(); ++i) idx[verts[i]] = i;
    std::vector<std::pair<int, int>> edges;
    for (auto& [u, v] : base->edges())
        if (idx[u] >= 0 && idx[v] >= 0) edges.emplace_back(idx[u], idx[v]);
    LabelledGraph h((int)verts.size(), std::move(edges), base->loops_allowed());
    for (int i = 1; i <= base->max_label_index(); ++i) {
        int v = base->label(i);
        if (v >= 0 && idx[v] >= 0) h.set_label_inplace(i, idx[v]);
    }
    return h;
}

LabelledGraph induced_subgraph(const LabelledGraph& g, std::uint64_t subset) {
    return VertexSubsetView(g, subset).materialize();
}

std::uint64_t component_of(const std::vector<std::uint64_t>& adj, std::uint64_t alive, int start) {
    std::uint64_t comp = bit(start) & alive;
    std::uint64_t frontier = comp;
    while (frontier) {
        std::uint64_t next = 0;
        for (int v : bits_of(frontier)) next |= adj[v];
        next &= alive & ~comp;
        comp |= next;
        frontier = next;
    }
    return comp;
}

std::vector<std::uint64_t> components(const std::vector<std::uint64_t>& adj, std::uint64_t alive) {
    std::vector<std::uint64_t> out;
    std::uint64_t left = alive;
    while (left) {
        int s = lowest_bit(left);
        std::uint64_t c = component_of(adj, alive, s);
        out.push_back(c);
        left &= ~c;
    }
    return out;
}

bool is_connected(const LabelledGraph& g) {
    if (g.num_vertices() == 0) return true;
    auto adj = g.adjacency();
    std::uint64_t all = g.num_vertices() == 64 ? ~0ull : (bit(g.num_vertices()) - 1);
    return components(adj, all).size() <= 1;
}

LabelledGraph read_graph_text(std::istream& in) {
    int n = -1, m = -1;
    std::string line;
    bool loops = false;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first[0] == '#') continue;
        n = std::stoi(first);
        ss >> m;
        std::string flag;
        if (ss >> flag && flag == "loops") loops = true;
        break;
    }
    if (n < 0 || m < 0) throw std::runtime_error("graph text: missing header");
    std::vector<std::pair<int, int>> edges;
    while ((int)edges.size() < m) {
        if (!std::getline(in, line)) throw std::runtime_error("graph text: truncated edge list");
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok) || tok[0] == '#') continue;
        int u = std::stoi(tok), v;
        if (!(ss >> v)) throw std::runtime_error("graph text: bad edge line");
        edges.emplace_back(u, v);
    }
    LabelledGraph g(n, std::move(edges), loops);
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string kw;
        if (!(ss >> kw) || kw[0] == '#') continue;
        if (kw != "label") throw std::runtime_error("graph text: unexpected line: " + line);
        int i, v;
        if (!(ss >> i >> v)) throw std::runtime_error("graph text: bad label line");
        g.set_label_inplace(i, v);
    }
    return g;
}

LabelledGraph read_graph_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open graph file: " + path);
    return read_graph_text(f);
}

void write_graph_text(const LabelledGraph& g, std::ostream& out) {
    out << g.num_vertices() << " " << g.num_edges();
    if (g.loops_allowed()) out << " loops";
    out << "\n";
    for (auto& [u, v] : g.edges()) out << u << " " << v << "\n";
    for (int i = 1; i <= g.max_label_index(); ++i)
        if (g.has_label(i)) out << "label " << i << " " << g.label(i) << "\n";
}

std::string graph_to_dot(const LabelledGraph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (int v = 0; v < g.num_vertices(); ++v) {
        out << "  v" << v << " [label=\"" << v;
        for (int i = 1; i <= g.max_label_index(); ++i)
            if (g.label(i) == v) out << " #" << i;
        out << "\"];\n";
    }
    for (auto& [u, v] : g.edges()) out << "  v" << u << " -- v" << v << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace deepwide
