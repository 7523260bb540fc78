#include "bandwave/graph.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bandwave {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::size_t DenseBitMatrix::count() const {
    std::size_t c = 0;
    for (bool b : bits_)
        if (b) ++c;
    return c;
}

bool DenseBitMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

std::string DenseBitMatrix::to_text() const {
    std::string out = std::to_string(rows_) + " " + std::to_string(cols_) + "\n";
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out += at(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

DenseBitMatrix DenseBitMatrix::from_text(std::string_view text) {
    auto lines = split_lines(text);
    // tolerate trailing blank lines
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw ParseError("matrix text: empty input");

    std::istringstream header{std::string(lines[0])};
    long long m = -1, n = -1;
    std::string extra;
    if (!(header >> m >> n) || (header >> extra) || m < 0 || n < 0)
        throw ParseError("matrix text: malformed header line '" + std::string(lines[0]) + "'");

    if (lines.size() - 1 != static_cast<std::size_t>(m))
        throw ParseError("matrix text: expected " + std::to_string(m) + " rows, got " +
                         std::to_string(lines.size() - 1));

    DenseBitMatrix out(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    for (long long i = 0; i < m; ++i) {
        std::string_view row = trim(lines[i + 1]);
        if (row.size() != static_cast<std::size_t>(n))
            throw ParseError("matrix text: row " + std::to_string(i + 1) + " has " +
                             std::to_string(row.size()) + " entries, expected " + std::to_string(n));
        for (long long j = 0; j < n; ++j) {
            char c = row[j];
            if (c != '0' && c != '1')
                throw ParseError(std::string("matrix text: invalid character '") + c + "' in row " +
                                 std::to_string(i + 1));
            if (c == '1') out.set(i, j);
        }
    }
    return out;
}

UndirectedOrderedGraph::UndirectedOrderedGraph(std::vector<VertexId> vertices,
                                               const std::vector<std::pair<VertexId, VertexId>>& edges,
                                               PartialOrder order)
    : vertices_(std::move(vertices)), order_(std::move(order)) {
    if (order_.size() != vertices_.size())
        throw std::invalid_argument("graph order does not cover the vertex set");
    std::unordered_map<VertexId, int, VertexIdHash> slot;
    slot.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!order_.contains(vertices_[i]))
            throw std::invalid_argument("vertex missing from order: " + to_string(vertices_[i]));
        if (!slot.emplace(vertices_[i], static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate vertex: " + to_string(vertices_[i]));
    }
    adj_.assign(vertices_.size(), {});
    std::unordered_set<long long> seen;
    seen.reserve(edges.size() * 2);
    for (const auto& [a, b] : edges) {
        auto ia = slot.find(a), ib = slot.find(b);
        if (ia == slot.end()) throw std::invalid_argument("edge endpoint not a vertex: " + to_string(a));
        if (ib == slot.end()) throw std::invalid_argument("edge endpoint not a vertex: " + to_string(b));
        if (ia->second == ib->second)
            throw std::invalid_argument("self-loop on vertex: " + to_string(a));
        long long lo = std::min(ia->second, ib->second);
        long long hi = std::max(ia->second, ib->second);
        if (!seen.insert(lo * static_cast<long long>(vertices_.size()) + hi).second)
            throw std::invalid_argument("duplicate edge: " + to_string(a) + " -- " + to_string(b));
        adj_[ia->second].push_back(ib->second);
        adj_[ib->second].push_back(ia->second);
        ++edge_count_;
    }
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end(), [&](int x, int y) {
            return order_.flat_rank(vertices_[x]) < order_.flat_rank(vertices_[y]);
        });
    }
}

int UndirectedOrderedGraph::index_of(const VertexId& v) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i] == v) return static_cast<int>(i);
    throw std::out_of_range("vertex not in graph: " + to_string(v));
}

std::vector<VertexId> UndirectedOrderedGraph::neighbors(const VertexId& v) const {
    const auto& nbrs = adj_[index_of(v)];
    std::vector<VertexId> out;
    out.reserve(nbrs.size());
    for (int i : nbrs) out.push_back(vertices_[i]);
    return out;
}

std::size_t UndirectedOrderedGraph::degree(const VertexId& v) const {
    return adj_[index_of(v)].size();
}

std::vector<std::pair<VertexId, VertexId>> UndirectedOrderedGraph::edges() const {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(edge_count_);
    for (std::size_t i = 0; i < adj_.size(); ++i)
        for (int j : adj_[i])
            if (order_.flat_rank(vertices_[i]) < order_.flat_rank(vertices_[j]))
                pairs.emplace_back(static_cast<int>(i), j);
    std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
        int ar = order_.flat_rank(vertices_[a.first]), br = order_.flat_rank(vertices_[b.first]);
        if (ar != br) return ar < br;
        return order_.flat_rank(vertices_[a.second]) < order_.flat_rank(vertices_[b.second]);
    });
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(pairs.size());
    for (const auto& [i, j] : pairs) out.emplace_back(vertices_[i], vertices_[j]);
    return out;
}

UndirectedOrderedGraph UndirectedOrderedGraph::with_order(PartialOrder order) const {
    std::vector<std::pair<VertexId, VertexId>> es;
    es.reserve(edge_count_);
    for (std::size_t i = 0; i < adj_.size(); ++i)
        for (int j : adj_[i])
            if (static_cast<int>(i) < j) es.emplace_back(vertices_[i], vertices_[j]);
    return UndirectedOrderedGraph(vertices_, es, std::move(order));
}

BipartiteDependencyGraph::BipartiteDependencyGraph(std::vector<VertexId> rows,
                                                   std::vector<VertexId> cols,
                                                   std::vector<std::pair<int, int>> edges)
    : rows_(std::move(rows)), cols_(std::move(cols)), edges_(std::move(edges)) {
    std::vector<std::vector<VertexId>> parts;
    if (!rows_.empty()) parts.push_back(rows_);
    if (!cols_.empty()) parts.push_back(cols_);
    order_ = PartialOrder(std::move(parts));
    row_adj_.assign(rows_.size(), {});
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const auto& [r, c] : edges_) {
        if (r < 0 || static_cast<std::size_t>(r) >= rows_.size())
            throw std::invalid_argument("edge row index out of range: " + std::to_string(r));
        if (c < 0 || static_cast<std::size_t>(c) >= cols_.size())
            throw std::invalid_argument("edge column index out of range: " + std::to_string(c));
        row_adj_[r].push_back(c);
    }
}

BipartiteDependencyGraph BipartiteDependencyGraph::from_matrix(const DenseBitMatrix& m) {
    std::vector<VertexId> rows, cols;
    rows.reserve(m.rows());
    cols.reserve(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(transition_id("t" + std::to_string(i + 1)));
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(place_id("p" + std::to_string(j + 1)));
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j)) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return BipartiteDependencyGraph(std::move(rows), std::move(cols), std::move(edges));
}

bool BipartiteDependencyGraph::has_edge(int row, int col) const {
    const auto& a = row_adj_[row];
    return std::binary_search(a.begin(), a.end(), col);
}

DenseBitMatrix BipartiteDependencyGraph::biadjacency() const {
    DenseBitMatrix m(rows_.size(), cols_.size());
    for (const auto& [r, c] : edges_) m.set(r, c);
    return m;
}

BipartiteDependencyGraph BipartiteDependencyGraph::permuted(const SplitPermutation& sp) const {
    if (sp.rows.size() != rows_.size() || sp.cols.size() != cols_.size())
        throw std::invalid_argument("split permutation does not match graph dimensions");
    std::vector<VertexId> rows(rows_.size()), cols(cols_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        rows[sp.rows.apply(static_cast<int>(r) + 1) - 1] = rows_[r];
    for (std::size_t c = 0; c < cols_.size(); ++c)
        cols[sp.cols.apply(static_cast<int>(c) + 1) - 1] = cols_[c];
    std::vector<std::pair<int, int>> edges;
    edges.reserve(edges_.size());
    for (const auto& [r, c] : edges_)
        edges.emplace_back(sp.rows.apply(r + 1) - 1, sp.cols.apply(c + 1) - 1);
    return BipartiteDependencyGraph(std::move(rows), std::move(cols), std::move(edges));
}

UndirectedOrderedGraph BipartiteDependencyGraph::as_graph() const {
    std::vector<VertexId> vs;
    vs.reserve(rows_.size() + cols_.size());
    vs.insert(vs.end(), rows_.begin(), rows_.end());
    vs.insert(vs.end(), cols_.begin(), cols_.end());
    std::vector<std::pair<VertexId, VertexId>> es;
    es.reserve(edges_.size());
    for (const auto& [r, c] : edges_) es.emplace_back(rows_[r], cols_[c]);
    return UndirectedOrderedGraph(std::move(vs), es, order_);
}

UndirectedOrderedGraph symmetrize(const BipartiteDependencyGraph& bg) {
    std::vector<VertexId> vs;
    vs.reserve(bg.row_count() + bg.col_count());
    vs.insert(vs.end(), bg.rows().begin(), bg.rows().end());
    vs.insert(vs.end(), bg.cols().begin(), bg.cols().end());
    std::vector<std::pair<VertexId, VertexId>> es;
    es.reserve(bg.edges().size());
    for (const auto& [r, c] : bg.edges()) es.emplace_back(bg.rows()[r], bg.cols()[c]);
    return UndirectedOrderedGraph(vs, es, PartialOrder::total(vs));
}

UndirectedOrderedGraph total_graph(const UndirectedOrderedGraph& g) {
    if (!g.order().is_total())
        throw std::invalid_argument("total graph construction needs a totally ordered graph");
    auto edge_vertex = [&](const VertexId& a, const VertexId& b) {
        const VertexId& lo = g.order().position(a) <= g.order().position(b) ? a : b;
        const VertexId& hi = g.order().position(a) <= g.order().position(b) ? b : a;
        return VertexId{"edge", "{" + lo.name + "," + hi.name + "}"};
    };

    auto base_edges = g.edges();  // endpoints already position-sorted pairwise and globally
    std::vector<VertexId> vs = g.order().flatten();
    vs.reserve(vs.size() + base_edges.size());
    for (const auto& [a, b] : base_edges) vs.push_back(edge_vertex(a, b));

    std::vector<std::pair<VertexId, VertexId>> es;
    for (const auto& [a, b] : base_edges) {
        VertexId ev = edge_vertex(a, b);
        es.emplace_back(a, b);   // adjacent vertices stay adjacent
        es.emplace_back(a, ev);  // incidence
        es.emplace_back(b, ev);
    }
    for (std::size_t i = 0; i < base_edges.size(); ++i)
        for (std::size_t j = i + 1; j < base_edges.size(); ++j) {
            const auto& [a1, b1] = base_edges[i];
            const auto& [a2, b2] = base_edges[j];
            if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2)
                es.emplace_back(edge_vertex(a1, b1), edge_vertex(a2, b2));
        }
    return UndirectedOrderedGraph(vs, es, PartialOrder::total(vs));
}

DenseBitMatrix adjacency_matrix(const UndirectedOrderedGraph& g) {
    if (!g.order().is_total())
        throw std::invalid_argument("adjacency matrix needs a totally ordered graph");
    DenseBitMatrix m(g.vertex_count(), g.vertex_count());
    for (const auto& [a, b] : g.edges()) {
        std::size_t i = g.order().position(a) - 1;
        std::size_t j = g.order().position(b) - 1;
        m.set(i, j);
        m.set(j, i);
    }
    return m;
}

SplitPermutation split_permutation(const PartialOrder& ordered, const std::vector<VertexId>& rows,
                                   const std::vector<VertexId>& cols) {
    auto project = [&](const std::vector<VertexId>& side) {
        PartialOrder sub = ordered.restricted(VertexSet(side.begin(), side.end()));
        if (sub.size() != side.size())
            throw std::invalid_argument("order does not cover all row/column vertices");
        auto seq = sub.flatten();
        std::unordered_map<VertexId, int, VertexIdHash> source_rank;
        for (std::size_t i = 0; i < side.size(); ++i) source_rank[side[i]] = static_cast<int>(i + 1);
        std::vector<int> target_order(seq.size());
        for (std::size_t k = 0; k < seq.size(); ++k) target_order[k] = source_rank.at(seq[k]);
        return Permutation::from_target_order(target_order);
    };
    return SplitPermutation{project(rows), project(cols)};
}

namespace {
Permutation reversed(const Permutation& p) {
    return p.composed_with(Permutation::reversal(p.size()));
}
}  // namespace

SplitPermutation flip_horizontal(SplitPermutation sp) {
    sp.rows = reversed(sp.rows);
    return sp;
}

SplitPermutation flip_vertical(SplitPermutation sp) {
    sp.cols = reversed(sp.cols);
    return sp;
}

std::string to_permutation_text(const SplitPermutation& sp) {
    auto line = [](const char* tag, const Permutation& p) {
        std::string out = tag;
        for (int src : p.target_order()) out += " " + std::to_string(src);
        out += '\n';
        return out;
    };
    return line("rows:", sp.rows) + line("cols:", sp.cols);
}

SplitPermutation permutation_from_text(std::string_view text) {
    auto lines = split_lines(text);
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.size() != 2) throw ParseError("permutation text: expected exactly two lines");
    auto parse_line = [](std::string_view line, const char* tag) {
        std::string_view t = trim(line);
        std::string prefix = std::string(tag) + ":";
        if (t.substr(0, prefix.size()) != prefix)
            throw ParseError("permutation text: line must start with '" + prefix + "'");
        std::istringstream rest{std::string(t.substr(prefix.size()))};
        std::vector<int> order;
        int v;
        while (rest >> v) order.push_back(v);
        if (!rest.eof()) throw ParseError("permutation text: non-numeric entry");
        try {
            return Permutation::from_target_order(order);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("permutation text: ") + e.what());
        }
    };
    return SplitPermutation{parse_line(lines[0], "rows"), parse_line(lines[1], "cols")};
}

}  // namespace bandwave
