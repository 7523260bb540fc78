#pragma once

#include "bandwave/petri.hpp"

namespace bandwave {

// Variable-declaration layouts for the generated ring nets.  Interleaved
// keeps each philosopher's places adjacent (good event locality); Grouped
// declares all places of one kind before the next kind (worst-case
// locality); Blocked applies the kind grouping within consecutive blocks of
// `block_size` philosophers.
enum class PhilosopherLayout { Interleaved, Grouped, Blocked };

// Ring of `count` dining philosophers as a 1-safe net.  Philosopher i owns
// six places (thinking/plate/napkin/cup/eating, plus fork i shared with the
// left neighbor) and two transitions: take_i consumes the idle places and
// both adjacent forks and starts eating; put_i reverses it.  State count
// equals the number of independent sets on the `count`-cycle.
PetriNet dining_philosophers(int count, PhilosopherLayout layout, int block_size = 16);

}  // namespace bandwave
