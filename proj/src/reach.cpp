#include "bandwave/reach.hpp"

#include <algorithm>
#include <unordered_map>

namespace bandwave {

std::vector<std::pair<std::vector<int>, std::vector<int>>> ShortRelation::tuples() const {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    std::vector<int> next(places.size());
    for (std::size_t i = 0; i < places.size(); ++i) next[i] = rules[i].next;
    // Enumerate the allowed current assignments (blind-write places accept
    // both values).
    std::vector<int> current(places.size(), 0);
    auto emit = [&](auto&& self, std::size_t i) -> void {
        if (i == places.size()) {
            out.emplace_back(current, next);
            return;
        }
        if (rules[i].requires_token) {
            current[i] = 1;
            self(self, i + 1);
        } else {
            for (int v : {0, 1}) {
                current[i] = v;
                self(self, i + 1);
            }
        }
    };
    emit(emit, 0);
    return out;
}

std::vector<ShortRelation> build_relations(const PetriNet& net, const Permutation& var_order) {
    if (static_cast<std::size_t>(var_order.size()) != net.places.size())
        throw std::invalid_argument("variable order size does not match place count");
    std::vector<ShortRelation> out;
    out.reserve(net.transitions.size());
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
        struct Entry {
            int level;
            int place;
            PlaceRule rule;
        };
        std::vector<Entry> entries;
        for (int p : net.pre[t]) {
            bool produced = std::binary_search(net.post[t].begin(), net.post[t].end(), p);
            entries.push_back({var_order.apply(p + 1) - 1, p, {true, produced ? 1 : 0}});
        }
        for (int p : net.post[t])
            if (!std::binary_search(net.pre[t].begin(), net.pre[t].end(), p))
                entries.push_back({var_order.apply(p + 1) - 1, p, {false, 1}});
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.level < b.level; });
        ShortRelation rel;
        rel.transition = static_cast<int>(t);
        for (const auto& e : entries) {
            rel.levels.push_back(e.level);
            rel.places.push_back(e.place);
            rel.rules.push_back(e.rule);
        }
        out.push_back(std::move(rel));
    }
    return out;
}

namespace {

using Ref = LddStore::Ref;

struct RelProd {
    LddStore& store;
    const ShortRelation& rel;
    std::unordered_map<Ref, Ref> memo;  // quasi-reduced depth fixes the level per node

    Ref run(Ref s, int level, std::size_t k) {
        if (k == rel.places.size()) return s;  // identity below the deepest dependent level
        if (s == LddStore::kFalse) return LddStore::kFalse;
        if (s == LddStore::kTrue)
            throw std::logic_error("relation level lies below the diagram depth");
        if (auto it = memo.find(s); it != memo.end()) return it->second;

        Ref result;
        if (level < rel.levels[k]) {
            // Free level: keep the value structure, recurse underneath.
            std::vector<std::pair<int, Ref>> siblings;
            for (Ref cur = s; cur != LddStore::kFalse; cur = store.right(cur))
                siblings.emplace_back(store.value(cur), store.down(cur));
            result = LddStore::kFalse;
            for (auto it = siblings.rbegin(); it != siblings.rend(); ++it)
                result = store.make(it->first, run(it->second, level + 1, k), result);
        } else {
            // Dependent level: apply the place rule.
            Ref down0 = LddStore::kFalse, down1 = LddStore::kFalse;
            for (Ref cur = s; cur != LddStore::kFalse; cur = store.right(cur)) {
                int v = store.value(cur);
                if (v == 0)
                    down0 = store.down(cur);
                else if (v == 1)
                    down1 = store.down(cur);
                else
                    throw SafetyViolation("token count " + std::to_string(v) +
                                          " at variable level " + std::to_string(level) +
                                          " violates 1-safety");
            }
            const PlaceRule& rule = rel.rules[k];
            Ref src;
            if (rule.requires_token) {
                src = run(down1, level + 1, k + 1);
            } else {
                Ref img0 = run(down0, level + 1, k + 1);
                Ref img1 = run(down1, level + 1, k + 1);
                src = store.set_union(img0, img1);
            }
            result = store.make(rule.next, src, LddStore::kFalse);
        }
        memo.emplace(s, result);
        return result;
    }
};

}  // namespace

Ref relprod(LddStore& store, Ref states, const ShortRelation& rel) {
    RelProd ctx{store, rel, {}};
    return ctx.run(states, 0, 0);
}

namespace {

// One chaining pass: apply each relation in turn, accumulating the image
// into the running set.
LddStore::Root chain_apply(LddStore& store, LddStore::Root s,
                           const std::vector<const ShortRelation*>& rels) {
    for (const ShortRelation* rel : rels) {
        LddStore::Root img = store.root(relprod(store, s.get(), *rel));
        s = store.root(store.set_union(s.get(), img.get()));
    }
    return s;
}

}  // namespace

namespace {

ReachResult reach_impl(const PetriNet& net, const ReachConfig& cfg,
                       std::vector<std::vector<int>>* states_out) {
    if (cfg.sat_granularity < 1) throw std::invalid_argument("sat granularity must be >= 1");
    const int n_places = static_cast<int>(net.places.size());
    const int n_trans = static_cast<int>(net.transitions.size());
    Permutation var_order = cfg.variable_order.value_or(Permutation::identity(n_places));
    Permutation trans_order = cfg.transition_order.value_or(Permutation::identity(n_trans));
    if (var_order.size() != static_cast<std::size_t>(n_places))
        throw std::invalid_argument("variable order size does not match place count");
    if (trans_order.size() != static_cast<std::size_t>(n_trans))
        throw std::invalid_argument("transition order size does not match transition count");

    LddStore store;
    std::vector<int> initial(net.places.size());
    for (std::size_t p = 0; p < net.places.size(); ++p) {
        int marking = net.initial_marking[p];
        if (marking < 0 || marking > 1)
            throw SafetyViolation("initial marking of place '" + net.places[p] +
                                  "' outside {0,1}");
        initial[var_order.apply(static_cast<int>(p) + 1) - 1] = marking;
    }
    LddStore::Root current = store.root(store.singleton(initial));

    std::vector<ShortRelation> rels = build_relations(net, var_order);
    std::vector<const ShortRelation*> sequence;
    sequence.reserve(rels.size());
    for (int src : trans_order.target_order()) sequence.push_back(&rels[src - 1]);

    int iterations = 0;
    switch (cfg.strategy) {
        case Strategy::Bfs: {
            for (;;) {
                ++iterations;
                LddStore::Root next = current;
                for (const ShortRelation* rel : sequence) {
                    LddStore::Root img = store.root(relprod(store, current.get(), *rel));
                    next = store.root(store.set_union(next.get(), img.get()));
                }
                if (next.get() == current.get()) break;
                current = next;
            }
            break;
        }
        case Strategy::Chaining: {
            for (;;) {
                ++iterations;
                LddStore::Root next = chain_apply(store, current, sequence);
                if (next.get() == current.get()) break;
                current = next;
            }
            break;
        }
        case Strategy::SatLike: {
            // Transitions sorted by deepest dependent level, chunked into
            // granularity-sized groups; the deepest group sits innermost.
            std::vector<const ShortRelation*> by_depth = sequence;
            std::stable_sort(by_depth.begin(), by_depth.end(),
                             [](const ShortRelation* a, const ShortRelation* b) {
                                 return a->deepest_level() < b->deepest_level();
                             });
            std::vector<std::vector<const ShortRelation*>> groups;
            for (std::size_t i = 0; i < by_depth.size();
                 i += static_cast<std::size_t>(cfg.sat_granularity)) {
                std::size_t end = std::min(by_depth.size(),
                                           i + static_cast<std::size_t>(cfg.sat_granularity));
                groups.emplace_back(by_depth.begin() + static_cast<std::ptrdiff_t>(i),
                                    by_depth.begin() + static_cast<std::ptrdiff_t>(end));
            }
            if (groups.empty()) {
                iterations = 1;
                break;
            }
            // apply(i): the fixpoint nest over groups[i..last]; the innermost
            // (deepest) group gets a single chaining pass per visit, every
            // enclosing group a fixpoint loop.
            auto apply = [&](auto&& self, std::size_t i, LddStore::Root s) -> LddStore::Root {
                if (i + 1 == groups.size()) return chain_apply(store, std::move(s), groups[i]);
                for (;;) {
                    LddStore::Root next = self(self, i + 1, s);
                    next = chain_apply(store, std::move(next), groups[i]);
                    if (next.get() == s.get()) return s;
                    s = next;
                }
            };
            if (groups.size() == 1) {
                for (;;) {
                    ++iterations;
                    LddStore::Root next = chain_apply(store, current, groups[0]);
                    if (next.get() == current.get()) break;
                    current = next;
                }
            } else {
                for (;;) {
                    ++iterations;
                    LddStore::Root next = apply(apply, 1, current);
                    next = chain_apply(store, std::move(next), groups[0]);
                    if (next.get() == current.get()) break;
                    current = next;
                }
            }
            break;
        }
    }

    ReachResult result;
    result.state_count = store.count_states(current.get());
    result.final_node_count = store.node_count(current.get());
    result.peak_node_count = store.peak_live_count();
    result.iterations = iterations;
    if (states_out) {
        states_out->clear();
        for (const std::vector<int>& by_level : store.enumerate(current.get())) {
            std::vector<int> marking(net.places.size());
            for (std::size_t p = 0; p < net.places.size(); ++p)
                marking[p] = by_level[var_order.apply(static_cast<int>(p) + 1) - 1];
            states_out->push_back(std::move(marking));
        }
    }
    return result;
}

}  // namespace

ReachResult reach(const PetriNet& net, const ReachConfig& cfg) {
    return reach_impl(net, cfg, nullptr);
}

ReachResult reach_enumerate(const PetriNet& net, const ReachConfig& cfg,
                            std::vector<std::vector<int>>& states_out) {
    return reach_impl(net, cfg, &states_out);
}

}  // namespace bandwave
