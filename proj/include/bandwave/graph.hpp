#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bandwave/order.hpp"

namespace bandwave {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Row-major dense 0/1 matrix.
class DenseBitMatrix {
public:
    DenseBitMatrix() = default;
    DenseBitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), bits_(rows * cols, false) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool at(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, bool v = true) { bits_[i * cols_ + j] = v; }
    std::size_t count() const;
    bool is_symmetric() const;

    // Text form: "M N" header line, then M lines of N contiguous 0/1 digits.
    std::string to_text() const;
    static DenseBitMatrix from_text(std::string_view text);

    bool operator==(const DenseBitMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<bool> bits_;
};

// Simple undirected graph (no self-loops, no parallel edges) whose vertices
// carry a partial order.
class UndirectedOrderedGraph {
public:
    UndirectedOrderedGraph() = default;
    UndirectedOrderedGraph(std::vector<VertexId> vertices,
                           const std::vector<std::pair<VertexId, VertexId>>& edges,
                           PartialOrder order);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    const std::vector<VertexId>& vertices() const { return vertices_; }
    const PartialOrder& order() const { return order_; }

    bool has_vertex(const VertexId& v) const { return order_.contains(v); }
    int index_of(const VertexId& v) const;  // 0-based slot in vertices()
    // Neighbors sorted by part-major flat rank.
    std::vector<VertexId> neighbors(const VertexId& v) const;
    std::size_t degree(const VertexId& v) const;
    // Edges with the earlier (flat-rank) endpoint first, sorted.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    // Index view for algorithms: adjacency()[i] holds neighbor slots of
    // vertices()[i], sorted by the neighbor's flat rank.
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }

    // Same graph, different order over the same vertex set.
    UndirectedOrderedGraph with_order(PartialOrder order) const;

private:
    std::vector<VertexId> vertices_;
    std::vector<std::vector<int>> adj_;
    PartialOrder order_;
    std::size_t edge_count_ = 0;
};

struct SplitPermutation;

// Directed dependency structure between row entities and column entities
// (transitions x places), with the two-part partial order rows | cols.
class BipartiteDependencyGraph {
public:
    BipartiteDependencyGraph() = default;
    BipartiteDependencyGraph(std::vector<VertexId> rows, std::vector<VertexId> cols,
                             std::vector<std::pair<int, int>> edges);

    // Rows become "transition" vertices t1..tM, columns "place" vertices p1..pN.
    static BipartiteDependencyGraph from_matrix(const DenseBitMatrix& m);

    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return cols_.size(); }
    const std::vector<VertexId>& rows() const { return rows_; }
    const std::vector<VertexId>& cols() const { return cols_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const PartialOrder& order() const { return order_; }
    bool has_edge(int row, int col) const;
    // Column slots adjacent to a row, ascending.
    const std::vector<int>& row_adjacency(int row) const { return row_adj_[row]; }

    DenseBitMatrix biadjacency() const;
    // Undirected view on the two-part partial order (rows part, cols part).
    UndirectedOrderedGraph as_graph() const;
    // Same dependencies with rows and columns rearranged: the row at source
    // rank r moves to rank sp.rows.apply(r), likewise for columns.
    BipartiteDependencyGraph permuted(const SplitPermutation& sp) const;

private:
    std::vector<VertexId> rows_;
    std::vector<VertexId> cols_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> row_adj_;
    PartialOrder order_;
};

// Undirected view of a bipartite graph under the total order rows-then-cols;
// its adjacency matrix has the block form [[0, A], [A^T, 0]].
UndirectedOrderedGraph symmetrize(const BipartiteDependencyGraph& bg);

// Vertices V union E; edges join adjacent vertices, incident vertex/edge
// pairs, and edges sharing an endpoint.  Edge-vertices are appended after the
// original vertices, sorted lexicographically by their endpoint positions.
// Requires a total order on g.
UndirectedOrderedGraph total_graph(const UndirectedOrderedGraph& g);

// Position-by-position 0/1 matrix of a totally ordered graph.
DenseBitMatrix adjacency_matrix(const UndirectedOrderedGraph& g);

struct SplitPermutation {
    Permutation rows;
    Permutation cols;
    bool operator==(const SplitPermutation&) const = default;
};

// Projects an order over (at least) the row and column vertices onto separate
// row and column permutations: source rank = index in `rows`/`cols`, target
// rank = relative position in `ordered`.
SplitPermutation split_permutation(const PartialOrder& ordered,
                                   const std::vector<VertexId>& rows,
                                   const std::vector<VertexId>& cols);

// Horizontal flip reverses the row (transition) permutation, vertical flip
// the column (variable) permutation.  Both are involutions.
SplitPermutation flip_horizontal(SplitPermutation sp);
SplitPermutation flip_vertical(SplitPermutation sp);

// Text form: "rows: i1 ... iM" / "cols: j1 ... jN", each line listing source
// ranks in target order.
std::string to_permutation_text(const SplitPermutation& sp);
SplitPermutation permutation_from_text(std::string_view text);

}  // namespace bandwave
