#include "bandwave/ordering.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bandwave {

namespace {

// Slot-indexed view with the vertex order materialized as ranks, so the
// algorithms can tie-break on position without touching VertexId.
struct IndexView {
    int n = 0;
    const std::vector<std::vector<int>>* adj = nullptr;  // slot -> neighbor slots
    std::vector<int> rank;                               // slot -> 0-based flat rank
    std::vector<int> slot_of_rank;                       // 0-based flat rank -> slot
    std::vector<int> deg;                                // slot -> degree

    explicit IndexView(const UndirectedOrderedGraph& g) {
        n = static_cast<int>(g.vertex_count());
        adj = &g.adjacency();
        rank.resize(n);
        slot_of_rank.resize(n);
        deg.resize(n);
        for (int i = 0; i < n; ++i) {
            rank[i] = g.order().flat_rank(g.vertices()[i]);
            slot_of_rank[rank[i]] = i;
            deg[i] = static_cast<int>((*adj)[i].size());
        }
    }

    // (degree, position) comparison used by every tie-break in this module.
    bool deg_rank_less(int a, int b) const {
        if (deg[a] != deg[b]) return deg[a] < deg[b];
        return rank[a] < rank[b];
    }
};

// BFS levels within seed's component; unreachable slots stay -1.
std::vector<int> bfs_levels(const IndexView& v, int root, int* eccentricity = nullptr) {
    std::vector<int> level(v.n, -1);
    std::vector<int> frontier{root};
    level[root] = 0;
    int depth = 0;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int u : frontier)
            for (int w : (*v.adj)[u])
                if (level[w] < 0) {
                    level[w] = depth + 1;
                    next.push_back(w);
                }
        if (next.empty()) break;
        ++depth;
        frontier = std::move(next);
    }
    if (eccentricity) *eccentricity = depth;
    return level;
}

int min_deg_rank(const IndexView& v, const std::vector<int>& slots) {
    int best = -1;
    for (int s : slots)
        if (best < 0 || v.deg_rank_less(s, best)) best = s;
    return best;
}

std::pair<int, int> pseudo_pair_idx(const IndexView& v, int seed) {
    int s = seed;
    int ecc = 0;
    std::vector<int> level = bfs_levels(v, s, &ecc);
    for (;;) {
        std::vector<int> deepest;
        for (int i = 0; i < v.n; ++i)
            if (level[i] == ecc) deepest.push_back(i);
        int x = min_deg_rank(v, deepest);
        int ecc_x = 0;
        std::vector<int> level_x = bfs_levels(v, x, &ecc_x);
        if (ecc_x > ecc) {
            s = x;
            ecc = ecc_x;
            level = std::move(level_x);
        } else {
            return {s, x};
        }
    }
}

// End vertex when the start is pinned by policy: the minimum-(degree,
// position) vertex of the deepest level reachable from s.
int far_end_idx(const IndexView& v, int s) {
    int ecc = 0;
    std::vector<int> level = bfs_levels(v, s, &ecc);
    std::vector<int> deepest;
    for (int i = 0; i < v.n; ++i)
        if (level[i] == ecc) deepest.push_back(i);
    return min_deg_rank(v, deepest);
}

std::vector<int> cm_component(const IndexView& v, std::vector<char>& visited, int start) {
    std::vector<int> out;
    std::vector<int> queue{start};
    visited[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        out.push_back(u);
        std::vector<int> cands;
        for (int w : (*v.adj)[u])
            if (!visited[w]) cands.push_back(w);
        std::sort(cands.begin(), cands.end(),
                  [&](int a, int b) { return v.deg_rank_less(a, b); });
        for (int w : cands) {
            visited[w] = 1;
            queue.push_back(w);
        }
    }
    return out;
}

std::vector<int> king_component(const IndexView& v, const std::vector<int>& comp, int start) {
    std::vector<char> numbered(v.n, 0), in_front(v.n, 0);
    std::vector<int> out{start};
    numbered[start] = 1;
    std::vector<int> cands;
    for (int w : (*v.adj)[start]) {
        in_front[w] = 1;
        cands.push_back(w);
    }
    while (out.size() < comp.size()) {
        int best = -1, best_growth = 0;
        for (int c : cands) {
            int growth = 0;
            for (int w : (*v.adj)[c])
                if (!numbered[w] && !in_front[w]) ++growth;
            if (best < 0 || growth < best_growth ||
                (growth == best_growth && v.deg_rank_less(c, best))) {
                best = c;
                best_growth = growth;
            }
        }
        cands.erase(std::find(cands.begin(), cands.end(), best));
        numbered[best] = 1;
        out.push_back(best);
        for (int w : (*v.adj)[best])
            if (!numbered[w] && !in_front[w]) {
                in_front[w] = 1;
                cands.push_back(w);
            }
    }
    return out;
}

std::vector<int> sloan_component(const IndexView& v, const std::vector<int>& comp, int s, int e,
                                 long long w1, long long w2) {
    enum : char { kInactive = 0, kPreactive = 1, kActive = 2, kPostactive = 3 };
    std::vector<int> dist = bfs_levels(v, e);
    std::vector<long long> prio(v.n, 0);
    std::vector<char> status(v.n, kInactive);
    for (int u : comp) prio[u] = -w1 * (v.deg[u] + 1) + w2 * dist[u];
    status[s] = kPreactive;
    std::vector<int> out;
    while (out.size() < comp.size()) {
        int u = -1;
        for (int c : comp) {
            if (status[c] != kPreactive && status[c] != kActive) continue;
            if (u < 0 || prio[c] > prio[u] || (prio[c] == prio[u] && v.rank[c] < v.rank[u]))
                u = c;
        }
        if (status[u] == kPreactive) {
            for (int w : (*v.adj)[u]) {
                prio[w] += w1;
                if (status[w] == kInactive) status[w] = kPreactive;
            }
        }
        status[u] = kPostactive;
        out.push_back(u);
        for (int nb : (*v.adj)[u]) {
            if (status[nb] != kPreactive) continue;
            status[nb] = kActive;
            prio[nb] += w1;
            for (int w : (*v.adj)[nb]) {
                if (status[w] == kPostactive) continue;
                prio[w] += w1;
                if (status[w] == kInactive) status[w] = kPreactive;
            }
        }
    }
    return out;
}

std::vector<int> gps_component(const IndexView& v, const std::vector<int>& comp, int s, int e) {
    int h = 0;
    std::vector<int> ls = bfs_levels(v, s, &h);
    std::vector<int> le = bfs_levels(v, e);

    std::vector<int> level(v.n, -1);
    std::vector<int> width(h + 1, 0);
    std::vector<int> pending;
    for (int u : comp) {
        int a = ls[u];
        int b = h - le[u];
        if (a == b) {
            level[u] = a;
            ++width[a];
        } else {
            pending.push_back(u);
        }
    }

    // Connected groups of still-unassigned vertices, placed largest first on
    // whichever side keeps the maximum level width smaller (ties keep the
    // start side).
    std::vector<char> seen(v.n, 0);
    std::vector<std::vector<int>> groups;
    for (int u : pending) {
        if (seen[u]) continue;
        std::vector<int> group{u};
        seen[u] = 1;
        for (std::size_t head = 0; head < group.size(); ++head)
            for (int w : (*v.adj)[group[head]])
                if (level[w] < 0 && !seen[w]) {
                    seen[w] = 1;
                    group.push_back(w);
                }
        std::sort(group.begin(), group.end(),
                  [&](int a, int b) { return v.rank[a] < v.rank[b]; });
        groups.push_back(std::move(group));
    }
    std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return v.rank[a.front()] < v.rank[b.front()];
    });

    for (const auto& group : groups) {
        std::vector<int> cnt_a(h + 1, 0), cnt_b(h + 1, 0);
        for (int u : group) {
            ++cnt_a[ls[u]];
            ++cnt_b[h - le[u]];
        }
        int max_a = 0, max_b = 0;
        for (int j = 0; j <= h; ++j) {
            if (cnt_a[j] > 0) max_a = std::max(max_a, width[j] + cnt_a[j]);
            if (cnt_b[j] > 0) max_b = std::max(max_b, width[j] + cnt_b[j]);
        }
        bool use_a = max_a <= max_b;
        for (int u : group) {
            level[u] = use_a ? ls[u] : h - le[u];
            ++width[level[u]];
        }
    }

    std::vector<int> out;
    out.reserve(comp.size());
    for (int j = 0; j <= h; ++j) {
        std::vector<int> members;
        for (int u : comp)
            if (level[u] == j) members.push_back(u);
        std::sort(members.begin(), members.end(),
                  [&](int a, int b) { return v.deg_rank_less(a, b); });
        out.insert(out.end(), members.begin(), members.end());
    }
    return out;
}

Permutation order_with(Algorithm alg, const UndirectedOrderedGraph& g, const OrderingConfig& cfg) {
    IndexView view(g);
    if (view.n == 0) return Permutation::from_images({});

    std::vector<int> images(view.n, 0);  // source rank - 1 -> target rank
    std::vector<char> assigned(view.n, 0);
    int next = 1;

    // Scanning seeds in rank order yields components in ascending order of
    // their minimum-position vertex.
    for (int r = 0; r < view.n; ++r) {
        int seed = view.slot_of_rank[r];
        if (assigned[seed]) continue;

        std::vector<int> level = bfs_levels(view, seed);
        std::vector<int> comp;
        for (int i = 0; i < view.n; ++i)
            if (level[i] >= 0) comp.push_back(i);
        std::sort(comp.begin(), comp.end(),
                  [&](int a, int b) { return view.rank[a] < view.rank[b]; });

        int mindeg = min_deg_rank(view, comp);
        int s = mindeg, e = mindeg;
        if (alg == Algorithm::Gps) {
            std::tie(s, e) = pseudo_pair_idx(view, mindeg);
        } else if (cfg.start == StartPolicy::PseudoPeripheral) {
            std::tie(s, e) = pseudo_pair_idx(view, mindeg);
        } else if (alg == Algorithm::Sloan) {
            e = far_end_idx(view, s);
        }

        std::vector<int> ordered;
        switch (alg) {
            case Algorithm::CuthillMcKee:
                ordered = cm_component(view, assigned, s);
                break;
            case Algorithm::King:
                ordered = king_component(view, comp, s);
                break;
            case Algorithm::Sloan:
                ordered = sloan_component(view, comp, s, e, cfg.sloan_w1, cfg.sloan_w2);
                break;
            case Algorithm::Gps:
                ordered = gps_component(view, comp, s, e);
                break;
        }
        for (int slot : ordered) {
            assigned[slot] = 1;
            images[view.rank[slot]] = next++;
        }
    }

    if (cfg.reverse)
        for (int& k : images) k = view.n + 1 - k;
    return Permutation::from_images(images);
}

}  // namespace

StartPolicy default_start(Algorithm alg) {
    switch (alg) {
        case Algorithm::Sloan:
        case Algorithm::Gps:
            return StartPolicy::PseudoPeripheral;
        default:
            return StartPolicy::MinDegree;
    }
}

OrderingConfig default_config(Algorithm alg) {
    OrderingConfig cfg;
    cfg.algorithm = alg;
    cfg.start = default_start(alg);
    return cfg;
}

VertexId min_degree_start(const UndirectedOrderedGraph& g) {
    if (g.vertex_count() == 0) throw std::invalid_argument("empty graph has no start vertex");
    IndexView view(g);
    std::vector<int> all(view.n);
    for (int i = 0; i < view.n; ++i) all[i] = i;
    return g.vertices()[min_deg_rank(view, all)];
}

std::pair<VertexId, VertexId> pseudo_peripheral_pair(const UndirectedOrderedGraph& g,
                                                     const VertexId& seed) {
    IndexView view(g);
    auto [s, e] = pseudo_pair_idx(view, g.index_of(seed));
    return {g.vertices()[s], g.vertices()[e]};
}

Permutation cuthill_mckee(const UndirectedOrderedGraph& g, const OrderingConfig& cfg) {
    return order_with(Algorithm::CuthillMcKee, g, cfg);
}

Permutation king(const UndirectedOrderedGraph& g, const OrderingConfig& cfg) {
    return order_with(Algorithm::King, g, cfg);
}

Permutation sloan(const UndirectedOrderedGraph& g, const OrderingConfig& cfg) {
    return order_with(Algorithm::Sloan, g, cfg);
}

Permutation gps(const UndirectedOrderedGraph& g, const OrderingConfig& cfg) {
    return order_with(Algorithm::Gps, g, cfg);
}

Permutation run_ordering(const UndirectedOrderedGraph& g, const OrderingConfig& cfg) {
    return order_with(cfg.algorithm, g, cfg);
}

ReorderOutcome reorder_graph(const BipartiteDependencyGraph& bg, const OrderingConfig& cfg,
                             Flip flip) {
    UndirectedOrderedGraph base = symmetrize(bg);
    if (cfg.use_total_graph) base = total_graph(base);
    ReorderOutcome out;
    out.nodal = run_ordering(base, cfg);
    PartialOrder reordered = base.order().permuted(out.nodal);
    out.split = split_permutation(reordered, bg.rows(), bg.cols());
    if (flip == Flip::Horizontal) out.split = flip_horizontal(std::move(out.split));
    if (flip == Flip::Vertical) out.split = flip_vertical(std::move(out.split));
    out.ordered = base.with_order(std::move(reordered));
    return out;
}

SplitPermutation reorder_pipeline(const BipartiteDependencyGraph& bg, const OrderingConfig& cfg,
                                  Flip flip) {
    return reorder_graph(bg, cfg, flip).split;
}

}  // namespace bandwave
