#pragma once

#include "csurg/diagram.hpp"

namespace csurg {

/// The stored diagrams of the overtwisted 3-spheres xi_k, k in {-1, 0, 1}.
///
/// xi_1:  one (+1)-unknot, tb -2, rot 1.
/// xi_0:  Hopf link of (+1)-unknots, (tb, rot) = (-3, 2) and (-2, 1), lk 1.
/// xi_-1: (-1)-unknot (tb -4, rot 1) and (+1)-unknot (tb -2, rot 1), lk 2.
///
/// Component ids are `tag` for xi_1 and `tag + "_a"`, `tag + "_b"` for
/// the two-component diagrams. An empty tag selects the default.
SurgeryDiagram standard_diagram(int k, const ComponentId& tag = {});

/// Default tag of xi_k: "xi1", "xi0", "xim1".
ComponentId standard_tag(int k);

/// Ids standard_diagram(k, tag) uses.
std::vector<ComponentId> standard_ids(int k, const ComponentId& tag);

}  // namespace csurg
