#pragma once

// Random valid diagrams and move instances for property suites.

#include "csurg/diagram.hpp"
#include "csurg/moves.hpp"

#include <random>

namespace csurg::gen {

using Rng = std::mt19937_64;

struct Bounds {
    std::size_t min_components = 1;
    std::size_t max_components = 6;
    std::int64_t tb_min = -6;
    std::int64_t tb_max = 2;
    std::int64_t max_abs_rot = 3;
    std::int64_t max_abs_lk = 3;
    /// Probability that a given pair links at all.
    double link_probability = 0.5;
};

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi);

/// tb + rot odd, |rot| <= max_abs_rot.
SurgeryComponent random_component(Rng& rng, const ComponentId& id, const Bounds& b);
/// Components "c0", "c1", ...
SurgeryDiagram random_diagram(Rng& rng, const Bounds& b);

struct MoveInstance {
    SurgeryDiagram diagram;
    MoveParams move;
};

/// Instances satisfying each move's preconditions, total size <= 6.
MoveInstance cancel_pair_instance(Rng& rng);
MoveInstance handle_slide_instance(Rng& rng);
MoveInstance lemma42_instance(Rng& rng);
MoveInstance avdek_instance(Rng& rng);

}  // namespace csurg::gen
