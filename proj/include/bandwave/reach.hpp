#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bandwave/ldd.hpp"
#include "bandwave/order.hpp"
#include "bandwave/petri.hpp"

namespace bandwave {

// Raised when a token count outside {0,1} shows up during image computation.
struct SafetyViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-place firing rule of one transition, projected onto its write-dependent
// places.  A consumed-only place must hold a token and ends empty; a place
// both consumed and produced must hold a token and keeps it; a produced-only
// place is written blindly (current value unread) and ends with a token.
struct PlaceRule {
    bool requires_token;
    int next;
    bool operator==(const PlaceRule&) const = default;
};

struct ShortRelation {
    int transition = 0;             // slot in the net's transition list
    std::vector<int> places;        // net place slots, ascending by level
    std::vector<int> levels;        // 0-based diagram levels, strictly ascending
    std::vector<PlaceRule> rules;   // aligned with places/levels

    int deepest_level() const { return levels.empty() ? -1 : levels.back(); }
    // Materialized (current restriction -> next assignment) pairs over the
    // dependent places, for inspection and oracle checks.
    std::vector<std::pair<std::vector<int>, std::vector<int>>> tuples() const;
};

enum class Strategy { Bfs, Chaining, SatLike };

struct ReachConfig {
    Strategy strategy = Strategy::Bfs;
    int sat_granularity = 10;
    std::optional<Permutation> variable_order;    // over places; identity when absent
    std::optional<Permutation> transition_order;  // over transitions; identity when absent
};

struct ReachResult {
    double state_count = 0;
    std::size_t final_node_count = 0;
    std::size_t peak_node_count = 0;
    int iterations = 0;
};

// One relation per transition, in net transition order; dependent places
// sorted by their position under the variable order.
std::vector<ShortRelation> build_relations(const PetriNet& net, const Permutation& var_order);

// Exact image of `states` under one transition; levels outside the relation's
// dependent places pass through unchanged.
LddStore::Ref relprod(LddStore& store, LddStore::Ref states, const ShortRelation& rel);

// Fixpoint exploration from the initial marking.  BFS unions the images of
// all transitions off the current set each round; CHAINING applies them
// sequentially, accumulating within the round; SAT-LIKE nests fixpoints
// innermost around the transition groups with the deepest dependent
// variables (groups of cfg.sat_granularity transitions, sorted by deepest
// level).  `iterations` counts outermost rounds including the final
// no-change round.
ReachResult reach(const PetriNet& net, const ReachConfig& cfg = {});

// Same exploration, additionally materializing the final markings in net
// place order (one vector per state).  Only suitable for small state spaces.
ReachResult reach_enumerate(const PetriNet& net, const ReachConfig& cfg,
                            std::vector<std::vector<int>>& states_out);

}  // namespace bandwave
