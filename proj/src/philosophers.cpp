#include "bandwave/philosophers.hpp"

#include <algorithm>
#include <stdexcept>

namespace bandwave {

namespace {

const char* const kKinds[] = {"thinking", "plate", "napkin", "cup", "eating", "fork"};
constexpr int kKindCount = 6;
constexpr int kEatingKind = 4;
constexpr int kForkKind = 5;

std::string place_name(int kind, int phil) {
    return std::string(kKinds[kind]) + "_" + std::to_string(phil);
}

const char* layout_tag(PhilosopherLayout layout) {
    switch (layout) {
        case PhilosopherLayout::Interleaved: return "interleaved";
        case PhilosopherLayout::Grouped: return "grouped";
        case PhilosopherLayout::Blocked: return "blocked";
    }
    return "";
}

}  // namespace

PetriNet dining_philosophers(int count, PhilosopherLayout layout, int block_size) {
    if (count < 2) throw std::invalid_argument("a philosopher ring needs at least 2 seats");
    if (layout == PhilosopherLayout::Blocked && block_size < 1)
        throw std::invalid_argument("block size must be >= 1");

    PetriNet net;
    net.name = "philosophers-" + std::to_string(count) + "-" + layout_tag(layout);
    switch (layout) {
        case PhilosopherLayout::Interleaved:
            for (int i = 0; i < count; ++i)
                for (int kind = 0; kind < kKindCount; ++kind)
                    net.places.push_back(place_name(kind, i));
            break;
        case PhilosopherLayout::Grouped:
            for (int kind = 0; kind < kKindCount; ++kind)
                for (int i = 0; i < count; ++i) net.places.push_back(place_name(kind, i));
            break;
        case PhilosopherLayout::Blocked:
            for (int base = 0; base < count; base += block_size)
                for (int kind = 0; kind < kKindCount; ++kind)
                    for (int i = base; i < std::min(count, base + block_size); ++i)
                        net.places.push_back(place_name(kind, i));
            break;
    }
    net.initial_marking.resize(net.places.size());
    for (std::size_t p = 0; p < net.places.size(); ++p)
        net.initial_marking[p] = net.places[p].rfind("eating_", 0) == 0 ? 0 : 1;

    for (int i = 0; i < count; ++i) {
        std::vector<int> idle;
        for (int kind = 0; kind < kKindCount; ++kind)
            if (kind != kEatingKind && kind != kForkKind)
                idle.push_back(place_slot(net, place_name(kind, i)));
        std::vector<int> forks{place_slot(net, place_name(kForkKind, i)),
                               place_slot(net, place_name(kForkKind, (i + 1) % count))};
        int eating = place_slot(net, place_name(kEatingKind, i));

        std::vector<int> take_pre = idle;
        take_pre.insert(take_pre.end(), forks.begin(), forks.end());
        std::sort(take_pre.begin(), take_pre.end());

        net.transitions.push_back("take_" + std::to_string(i));
        net.pre.push_back(take_pre);
        net.post.push_back({eating});

        net.transitions.push_back("put_" + std::to_string(i));
        net.pre.push_back({eating});
        net.post.push_back(take_pre);
    }
    return net;
}

}  // namespace bandwave
