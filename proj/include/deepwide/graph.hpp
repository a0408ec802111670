#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace deepwide {

/// A finite graph with dense vertex ids 0..n-1 and a partial label map
/// from label indices 1..k to vertices. Edges are stored sorted with the
/// smaller endpoint first, so structurally equal graphs compare equal.
/// Self-loops are permitted only when loops_allowed is set.
class LabelledGraph {
  public:
    LabelledGraph() = default;
    explicit LabelledGraph(int n, bool loops = false) : n_(n), loops_allowed_(loops) {
        check_size(n);
    }
    LabelledGraph(int n, std::vector<std::pair<int, int>> edges, bool loops = false);

    /// Sanity bound on vertex counts; quantum-graph terms can get large.
    static constexpr int kMaxVertices = 4096;
    /// Bound for the bitmask representation used by the game solvers and
    /// other subset-state algorithms.
    static constexpr int kMaxMaskVertices = 64;

    int num_vertices() const { return n_; }
    int num_edges() const { return (int)edges_.size(); }
    bool loops_allowed() const { return loops_allowed_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int u, int v) const;
    bool has_loop() const;
    void add_edge(int u, int v);

    /// Adjacency as bitmasks; loops do not set the own bit. Only valid for
    /// graphs with at most kMaxMaskVertices vertices.
    std::vector<std::uint64_t> adjacency() const;
    /// Sorted neighbour lists without loops; any size.
    std::vector<std::vector<int>> neighbour_lists() const;

    // Label map: indices are 1-based, value -1 means unset.
    int label(int index) const { return index >= 1 && index <= (int)labels_.size() ? labels_[index - 1] : -1; }
    bool has_label(int index) const { return label(index) >= 0; }
    int max_label_index() const { return (int)labels_.size(); }
    std::vector<int> labelled_vertices() const;
    std::vector<int> label_indices() const;  // sorted set of assigned indices
    bool fully_labelled() const;
    void set_label_inplace(int index, int v);
    void clear_label_inplace(int index);

    bool operator==(const LabelledGraph& o) const {
        return n_ == o.n_ && loops_allowed_ == o.loops_allowed_ && edges_ == o.edges_ &&
               trimmed_labels() == o.trimmed_labels();
    }

    std::vector<int> trimmed_labels() const;

  private:
    int n_ = 0;
    bool loops_allowed_ = false;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> labels_;

    static void check_size(int n);
    void normalize_edges();
};

/// Result of the label-identifying product, with the embeddings of both
/// factors into the result.
struct ProductResult {
    LabelledGraph graph;
    std::vector<int> map_f;  // vertex of f -> vertex of result
    std::vector<int> map_g;
};

ProductResult product_with_maps(const LabelledGraph& f, const LabelledGraph& g);
LabelledGraph product(const LabelledGraph& f, const LabelledGraph& g);

LabelledGraph set_label(const LabelledGraph& g, int index, int v);
LabelledGraph remove_label(const LabelledGraph& g, int index);
LabelledGraph remove_all_labels(const LabelledGraph& g);

/// G with a self-loop added at every vertex.
LabelledGraph with_loops(const LabelledGraph& g);
LabelledGraph without_loops(const LabelledGraph& g);

/// The h x l grid: vertex (i,j), 1-based, has id (i-1)*l + (j-1);
/// (i,j) ~ (i',j') iff |i-i'| + |j-j'| = 1.
LabelledGraph grid(int h, int l);
inline int grid_vertex(int l, int i, int j) { return (i - 1) * l + (j - 1); }

LabelledGraph path_graph(int n);
LabelledGraph cycle_graph(int n);
LabelledGraph complete_graph(int n);

LabelledGraph delete_vertex(const LabelledGraph& g, int v);
LabelledGraph delete_edge(const LabelledGraph& g, int u, int v);
LabelledGraph contract_edge(const LabelledGraph& g, int u, int v);

/// Subgraph induced by a vertex subset, with the induced-vertex ids
/// renumbered in increasing order. Labels pointing outside are dropped.
struct VertexSubsetView {
    const LabelledGraph* base = nullptr;
    std::uint64_t subset = 0;

    VertexSubsetView(const LabelledGraph& g, std::uint64_t s);
    LabelledGraph materialize() const;
    std::vector<int> vertex_list() const;
};

LabelledGraph induced_subgraph(const LabelledGraph& g, std::uint64_t subset);

// Connectivity helpers over bitmask vertex sets.
std::uint64_t component_of(const std::vector<std::uint64_t>& adj, std::uint64_t alive, int start);
std::vector<std::uint64_t> components(const std::vector<std::uint64_t>& adj, std::uint64_t alive);
bool is_connected(const LabelledGraph& g);

// Text format: first line "n m [loops]", then m lines "u v", then optional
// lines "label i v".
LabelledGraph read_graph_text(std::istream& in);
LabelledGraph read_graph_file(const std::string& path);
void write_graph_text(const LabelledGraph& g, std::ostream& out);
std::string graph_to_dot(const LabelledGraph& g, const std::string& name = "G");

inline std::uint64_t bit(int i) { return std::uint64_t(1) << i; }
int popcount64(std::uint64_t x);
int lowest_bit(std::uint64_t x);
std::vector<int> bits_of(std::uint64_t x);

}  // namespace deepwide
