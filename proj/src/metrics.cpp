#include "bandwave/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace bandwave {

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string format_significant(double value, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, value);
    return buf;
}

long long vertex_bandwidth(const UndirectedOrderedGraph& g, const VertexId& v) {
    const auto& order = g.order();
    long long pos = order.position(v);
    long long best = 0;
    for (int u : g.adjacency()[g.index_of(v)])
        best = std::max(best, std::llabs(pos - order.position(g.vertices()[u])));
    return best;
}

long long vertex_span(const UndirectedOrderedGraph& g, const VertexId& v) {
    const auto& nbrs = g.adjacency()[g.index_of(v)];
    if (nbrs.empty()) return 0;
    long long lo = std::numeric_limits<long long>::max(), hi = 0;
    for (int u : nbrs) {
        long long p = g.order().position(g.vertices()[u]);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    return hi - lo + 1;
}

long long vertex_wavefront(const UndirectedOrderedGraph& g, const VertexId& v) {
    const auto& order = g.order();
    int vpart = order.part_of(v);
    int vpos = order.position(v);
    int vidx = g.index_of(v);
    std::vector<char> counted(g.vertex_count(), 0);
    long long count = 1;  // v itself
    for (std::size_t w = 0; w < g.vertex_count(); ++w) {
        const VertexId& wv = g.vertices()[w];
        if (order.part_of(wv) != vpart || order.position(wv) > vpos) continue;
        for (int u : g.adjacency()[w]) {
            if (u == vidx || counted[u]) continue;
            counted[u] = 1;
            ++count;
        }
    }
    return count;
}

namespace {

// min neighbor position per vertex index; -1 when isolated
std::vector<int> min_neighbor_positions(const UndirectedOrderedGraph& g) {
    std::vector<int> mins(g.vertex_count(), -1);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        int best = -1;
        for (int u : g.adjacency()[i]) {
            int p = g.order().position(g.vertices()[u]);
            if (best < 0 || p < best) best = p;
        }
        mins[i] = best;
    }
    return mins;
}

}  // namespace

long long front_width(const UndirectedOrderedGraph& g, const VertexId& v) {
    if (!g.order().is_total())
        throw std::invalid_argument("front width needs a totally ordered graph");
    int vpos = g.order().position(v);
    long long count = 1;
    auto mins = min_neighbor_positions(g);
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        if (g.order().position(g.vertices()[u]) <= vpos) continue;
        if (mins[u] >= 0 && mins[u] <= vpos) ++count;
    }
    return count;
}

MetricsReport graph_metrics(const UndirectedOrderedGraph& g) {
    if (!g.order().is_total())
        throw std::invalid_argument("graph metrics need a totally ordered graph");
    MetricsReport rep;
    const long long n = static_cast<long long>(g.vertex_count());
    if (n == 0) return rep;

    long long sum_bw = 0, sum_spn = 0;
    for (const auto& v : g.vertices()) {
        long long bw = vertex_bandwidth(g, v);
        rep.bandwidth = std::max(rep.bandwidth, bw);
        sum_bw += bw;
        sum_spn += vertex_span(g, v);
    }
    rep.profile = sum_bw + n;
    rep.span = sum_spn;

    // Vertex u adds 1 to the front at every position p with
    // minNbrPos(u) <= p < position(u); accumulate with a difference array.
    auto mins = min_neighbor_positions(g);
    std::vector<long long> delta(n + 2, 0);
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        if (mins[u] < 0) continue;
        int q = g.order().position(g.vertices()[u]);
        if (mins[u] <= q - 1) {
            delta[mins[u]] += 1;
            delta[q] -= 1;
        }
    }
    long long sum_fw = n;  // each vertex counts itself
    long long running = 0;
    for (long long p = 1; p <= n; ++p) {
        running += delta[p];
        sum_fw += running;
    }
    rep.avg_wavefront = Rational(sum_fw, n);

    rep.bandwidth_n = Rational(rep.bandwidth, n);
    rep.profile_n = Rational(rep.profile, n * n);
    rep.span_n = Rational(rep.span, n * n);
    rep.avg_wavefront_n = rep.avg_wavefront / n;
    return rep;
}

long long event_span(const BipartiteDependencyGraph& bg) {
    long long total = 0;
    for (std::size_t r = 0; r < bg.row_count(); ++r) {
        const auto& deps = bg.row_adjacency(static_cast<int>(r));
        if (!deps.empty()) total += deps.back() - deps.front() + 1;
    }
    return total;
}

Rational weighted_event_span(const BipartiteDependencyGraph& bg) {
    const long long n = static_cast<long long>(bg.col_count());
    if (n == 0) return Rational(0);
    long long weighted_sum = 0;  // sum of spn(t) * (N - zero-based min position)
    for (std::size_t r = 0; r < bg.row_count(); ++r) {
        const auto& deps = bg.row_adjacency(static_cast<int>(r));
        if (deps.empty()) continue;
        long long spn = deps.back() - deps.front() + 1;
        weighted_sum += spn * (n - deps.front());
    }
    return Rational(weighted_sum) * Rational(2, n);
}

MetricsReport combined_metrics(const UndirectedOrderedGraph& ordered,
                               const BipartiteDependencyGraph& bg) {
    MetricsReport rep = graph_metrics(ordered);
    rep.event_span = event_span(bg);
    rep.weighted_event_span = weighted_event_span(bg);
    const long long mn = static_cast<long long>(bg.row_count()) * static_cast<long long>(bg.col_count());
    if (mn > 0) {
        rep.event_span_n = Rational(rep.event_span, mn);
        rep.weighted_event_span_n = rep.weighted_event_span / mn;
    }
    return rep;
}

MetricsReport full_metrics(const BipartiteDependencyGraph& bg, bool on_total_graph) {
    UndirectedOrderedGraph sym = symmetrize(bg);
    return combined_metrics(on_total_graph ? total_graph(sym) : sym, bg);
}

}  // namespace bandwave
