#include "csurg/generators.hpp"

namespace csurg::gen {

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi)
{
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

SurgeryComponent random_component(Rng& rng, const ComponentId& id, const Bounds& b)
{
    SurgeryComponent c{id, uniform(rng, b.tb_min, b.tb_max), 0, uniform(rng, 0, 1) ? 1 : -1};
    c.rot = uniform(rng, -b.max_abs_rot, b.max_abs_rot);
    if ((c.tb + c.rot) % 2 == 0)
        c.rot += c.rot < b.max_abs_rot ? 1 : -1;
    return c;
}

SurgeryDiagram random_diagram(Rng& rng, const Bounds& b)
{
    const auto n = static_cast<std::size_t>(
        uniform(rng, static_cast<std::int64_t>(b.min_components), static_cast<std::int64_t>(b.max_components)));
    std::vector<SurgeryComponent> comps;
    for (std::size_t i = 0; i < n; ++i)
        comps.push_back(random_component(rng, "c" + std::to_string(i), b));
    std::vector<LinkingEntry> entries;
    std::bernoulli_distribution link(b.link_probability);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (link(rng))
                entries.push_back({comps[i].id, comps[j].id, uniform(rng, -b.max_abs_lk, b.max_abs_lk)});
    return SurgeryDiagram(std::move(comps), entries);
}

MoveInstance cancel_pair_instance(Rng& rng)
{
    Bounds b;
    b.max_components = 5;
    SurgeryDiagram d = random_diagram(rng, b);
    // lk(i, push-off) = tb_i must stay within the linking bound.
    SurgeryComponent c = d.component(std::size_t{0});
    c.tb = uniform(rng, -b.max_abs_lk, std::min(b.tb_max, b.max_abs_lk));
    if ((c.tb + c.rot) % 2 == 0)
        c.rot += c.rot < b.max_abs_rot ? 1 : -1;
    d = with_replaced_component(d, c);
    std::vector<std::pair<ComponentId, std::int64_t>> row{{c.id, c.tb}};
    for (const auto& o : d.components())
        if (o.id != c.id)
            row.emplace_back(o.id, d.linking(c.id, o.id));
    d = with_component(d, {"p", c.tb, c.rot, -c.sign}, row);
    return {d, CancelPairParams{c.id, "p"}};
}

MoveInstance handle_slide_instance(Rng& rng)
{
    Bounds b;
    b.min_components = 2;
    SurgeryDiagram d = random_diagram(rng, b);
    const auto n = static_cast<std::int64_t>(d.size());
    const auto i = uniform(rng, 0, n - 1);
    auto j = uniform(rng, 0, n - 2);
    if (j >= i)
        ++j;
    return {d, HandleSlideParams{d.component(static_cast<std::size_t>(i)).id,
                                 d.component(static_cast<std::size_t>(j)).id}};
}

MoveInstance lemma42_instance(Rng& rng)
{
    Bounds b;
    b.max_components = 5;
    SurgeryDiagram d = random_diagram(rng, b);
    SurgeryComponent c = d.component(std::size_t{0});
    c.sign = -1;
    d = with_replaced_component(d, c);
    d = with_component(d, {"m", -2, uniform(rng, 0, 1) ? 1 : -1, 1}, {{c.id, 1}});
    return {d, Lemma42Params{c.id, "m"}};
}

MoveInstance avdek_instance(Rng& rng)
{
    Bounds b;
    b.min_components = 0;
    b.max_components = 4;
    SurgeryDiagram rest = random_diagram(rng, b);
    SurgeryComponent i = random_component(rng, "k", b);
    i.sign = 1;
    SurgeryDiagram d = with_component(rest, i, {});
    d = with_component(d, {"m", -1, 0, 1}, {{"k", 1}});
    return {d, AvdekMergeParams{"k", "m", {}}};
}

}  // namespace csurg::gen
