#include "csurg/standard_diagrams.hpp"

#include "csurg/error.hpp"

namespace csurg {

ComponentId standard_tag(int k)
{
    switch (k) {
    case 1:
        return "xi1";
    case 0:
        return "xi0";
    case -1:
        return "xim1";
    default:
        fail_precondition("standard.k", "no stored diagram for xi_" + std::to_string(k));
    }
}

std::vector<ComponentId> standard_ids(int k, const ComponentId& tag)
{
    const ComponentId t = tag.empty() ? standard_tag(k) : tag;
    if (k == 1)
        return {t};
    standard_tag(k);
    return {t + "_a", t + "_b"};
}

SurgeryDiagram standard_diagram(int k, const ComponentId& tag)
{
    const auto ids = standard_ids(k, tag);
    if (k == 1)
        return SurgeryDiagram({{ids[0], -2, 1, +1}}, {});
    if (k == 0)
        return SurgeryDiagram({{ids[0], -3, 2, +1}, {ids[1], -2, 1, +1}}, {{ids[0], ids[1], 1}});
    return SurgeryDiagram({{ids[0], -4, 1, -1}, {ids[1], -2, 1, +1}}, {{ids[0], ids[1], 2}});
}

}  // namespace csurg
