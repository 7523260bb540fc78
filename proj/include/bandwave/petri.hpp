#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bandwave/graph.hpp"

namespace bandwave {

// 1-safe place/transition net.  Places and transitions keep their document
// order; pre/post hold ascending place slots per transition.  1-safety is
// assumed here and enforced dynamically during reachability.
struct PetriNet {
    std::string name;
    std::vector<std::string> places;
    std::vector<std::string> transitions;
    std::vector<std::vector<int>> pre;
    std::vector<std::vector<int>> post;
    std::vector<int> initial_marking;  // 0 or 1 per place

    bool operator==(const PetriNet&) const = default;
};

int place_slot(const PetriNet& net, const std::string& name);
int transition_slot(const PetriNet& net, const std::string& name);

// Reads the P/T subset of PNML: net/page/place/transition/arc with id
// attributes, initial markings in {0,1}, unit arc weights.  Anything outside
// that subset (weighted arcs, markings > 1, dangling or doubled arcs,
// duplicate ids) is rejected with a descriptive ParseError.
PetriNet parse_pnml(std::string_view document);

// Inverse of parse_pnml up to formatting: parse(to_pnml(net)) == net.
std::string to_pnml(const PetriNet& net);

// Dependency pairs (transition slot, place slot), sorted.  A transition
// writes every place it consumes from or produces to; it reads only the
// places it consumes from (production alone never tests the current value).
std::vector<std::pair<int, int>> write_set(const PetriNet& net);
std::vector<std::pair<int, int>> read_set(const PetriNet& net);

enum class DependencyKind { Write, Read, Combined };

// Rows = transitions, columns = places, both in net order; edges drawn from
// the selected dependency set.  For Petri nets reads imply writes, so the
// combined graph equals the write graph.
BipartiteDependencyGraph dependency_graph(const PetriNet& net, DependencyKind kind);

}  // namespace bandwave
