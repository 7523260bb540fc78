#pragma once

#include <boost/rational.hpp>
#include <string>

#include "bandwave/graph.hpp"

namespace bandwave {

using Rational = boost::rational<long long>;

double to_double(const Rational& r);
// Shortest decimal with `significant` significant digits (printf %g style).
std::string format_significant(double value, int significant = 3);

struct MetricsReport {
    long long bandwidth = 0;
    long long profile = 0;
    long long span = 0;
    Rational avg_wavefront{0};
    long long event_span = 0;
    Rational weighted_event_span{0};

    Rational bandwidth_n{0};
    Rational profile_n{0};
    Rational span_n{0};
    Rational avg_wavefront_n{0};
    Rational event_span_n{0};
    Rational weighted_event_span_n{0};
};

// Per-vertex measures.  Positions are the 1-based indices within each
// vertex's part, compared numerically across parts.
long long vertex_bandwidth(const UndirectedOrderedGraph& g, const VertexId& v);
long long vertex_span(const UndirectedOrderedGraph& g, const VertexId& v);
// The literal frontwidth set: v itself plus every other vertex adjacent to
// some w comparable with v and positioned at or before v.  Works on partial
// orders.
long long vertex_wavefront(const UndirectedOrderedGraph& g, const VertexId& v);
// Active-front variant: v plus the strictly-later vertices already touched by
// position(v).  Total orders only; this is what the average-wavefront
// aggregate uses.
long long front_width(const UndirectedOrderedGraph& g, const VertexId& v);

// The four matrix aggregates (bandwidth, profile, span, avgWavefront) with
// normalized companions; event fields left zero.  Total orders only.
MetricsReport graph_metrics(const UndirectedOrderedGraph& g);

// Event locality over the bipartite partial order: sum of transition spans.
long long event_span(const BipartiteDependencyGraph& bg);
// Each transition's span weighted by (N - zero-based min dependent position)
// divided by N/2, so transitions near the top of the variable order weigh
// up to 2x.
Rational weighted_event_span(const BipartiteDependencyGraph& bg);

// Matrix aggregates of an already-ordered graph (typically the symmetrized
// or total graph carrying a nodal ordering's total order) combined with
// ES/WES of the row/column-permuted dependency graph.
MetricsReport combined_metrics(const UndirectedOrderedGraph& ordered,
                               const BipartiteDependencyGraph& bg);

// Matrix aggregates of symmetrize(bg) (or of total_graph(symmetrize(bg)) when
// on_total_graph) combined with ES/WES of bg itself.  Note the matrix half is
// evaluated in block order (rows before columns); a nodal ordering's own
// interleaved vertex order must go through combined_metrics instead.
MetricsReport full_metrics(const BipartiteDependencyGraph& bg, bool on_total_graph = false);

}  // namespace bandwave
