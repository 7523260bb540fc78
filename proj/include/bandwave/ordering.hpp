#pragma once

#include <utility>

#include "bandwave/graph.hpp"

namespace bandwave {

enum class Algorithm { CuthillMcKee, King, Sloan, Gps };
enum class StartPolicy { MinDegree, PseudoPeripheral };
enum class Flip { None, Horizontal, Vertical };

struct OrderingConfig {
    Algorithm algorithm = Algorithm::CuthillMcKee;
    StartPolicy start = StartPolicy::MinDegree;
    bool reverse = false;
    int sloan_w1 = 1;  // current-degree weight
    int sloan_w2 = 2;  // distance-to-end weight
    bool use_total_graph = false;
};

// Canonical start policy per algorithm: min-degree for Cuthill-McKee and
// King, pseudo-peripheral for Sloan (GPS always derives its endpoint pair).
StartPolicy default_start(Algorithm alg);
OrderingConfig default_config(Algorithm alg);

// Vertex of minimum degree; ties broken by smallest position.
VertexId min_degree_start(const UndirectedOrderedGraph& g);

// George-Liu iteration: build the rooted level structure, move to a
// minimum-degree vertex of the deepest level while the eccentricity grows.
// Returns (start, end) at locally maximal level distance within seed's
// component.
std::pair<VertexId, VertexId> pseudo_peripheral_pair(const UndirectedOrderedGraph& g,
                                                     const VertexId& seed);

// Each returns a bijection on ranks 1..n mapping the input-order rank of a
// vertex to its new rank.  Graphs must carry a total order; disconnected
// components are numbered independently and concatenated in ascending order
// of their minimum-position vertex.
Permutation cuthill_mckee(const UndirectedOrderedGraph& g, const OrderingConfig& cfg = {});
Permutation king(const UndirectedOrderedGraph& g, const OrderingConfig& cfg = default_config(Algorithm::King));
Permutation sloan(const UndirectedOrderedGraph& g, const OrderingConfig& cfg = default_config(Algorithm::Sloan));
Permutation gps(const UndirectedOrderedGraph& g, const OrderingConfig& cfg = default_config(Algorithm::Gps));
Permutation run_ordering(const UndirectedOrderedGraph& g, const OrderingConfig& cfg);

// Everything the reordering pipeline produces: the nodal permutation of the
// lifted (symmetrized or total) graph, that graph carrying the new order —
// the order the four matrix metrics are evaluated on — and the projection
// onto row/column permutations with the requested flip applied.  Flips act
// on the projection only; `ordered` is flip-independent.
struct ReorderOutcome {
    Permutation nodal;
    UndirectedOrderedGraph ordered;
    SplitPermutation split;
};

ReorderOutcome reorder_graph(const BipartiteDependencyGraph& bg, const OrderingConfig& cfg,
                             Flip flip = Flip::None);

// Dependency graph in, split permutation out: symmetrize, optionally lift to
// the total graph, run the configured algorithm, project the permuted order
// down to row/column permutations, then apply the requested flip.
SplitPermutation reorder_pipeline(const BipartiteDependencyGraph& bg, const OrderingConfig& cfg,
                                  Flip flip = Flip::None);

}  // namespace bandwave
