#include "csurg/diagram.hpp"

#include "csurg/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace csurg {

SurgeryDiagram::SurgeryDiagram(std::vector<SurgeryComponent> components, const std::vector<LinkingEntry>& linking)
    : components_(std::move(components))
{
    const std::size_t n = components_.size();
    linking_.assign(n, std::vector<std::int64_t>(n, 0));
    rebuild_index();

    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> explicit_entries;
    for (const LinkingEntry& e : linking) {
        auto a = index_of(e.a);
        auto b = index_of(e.b);
        if (!a || !b || *a == *b) {
            dangling_.push_back(e);
            continue;
        }
        explicit_entries[{*a, *b}] = e.lk;
    }
    for (const auto& [pair, lk] : explicit_entries) {
        auto [a, b] = pair;
        linking_[a][b] = lk;
        if (!explicit_entries.contains({b, a}))
            linking_[b][a] = lk;
    }
}

SurgeryDiagram SurgeryDiagram::from_table(std::vector<SurgeryComponent> components,
                                          std::vector<std::vector<std::int64_t>> linking)
{
    SurgeryDiagram d;
    d.components_ = std::move(components);
    d.linking_ = std::move(linking);
    d.rebuild_index();
    return d;
}

void SurgeryDiagram::rebuild_index()
{
    index_.clear();
    for (std::size_t i = 0; i < components_.size(); ++i)
        index_.emplace(components_[i].id, i);
}

std::optional<std::size_t> SurgeryDiagram::index_of(const ComponentId& id) const
{
    auto it = index_.find(id);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

const SurgeryComponent& SurgeryDiagram::component(const ComponentId& id) const
{
    auto i = index_of(id);
    if (!i)
        fail_precondition("component.exists", "unknown component id '" + id + "'");
    return components_[*i];
}

std::int64_t SurgeryDiagram::linking(std::size_t i, std::size_t j) const
{
    if (i == j || i >= linking_.size() || j >= linking_[i].size())
        return 0;
    return linking_[i][j];
}

std::int64_t SurgeryDiagram::linking(const ComponentId& a, const ComponentId& b) const
{
    auto i = index_of(a);
    auto j = index_of(b);
    if (!i || !j)
        fail_precondition("component.exists", "unknown component id in linking lookup");
    return linking(*i, *j);
}

std::vector<std::size_t> SurgeryDiagram::canonical_order() const
{
    std::vector<std::size_t> order(components_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return components_[x].id < components_[y].id; });
    return order;
}

SurgeryDiagram SurgeryDiagram::canonical() const
{
    const auto order = canonical_order();
    std::vector<SurgeryComponent> comps;
    comps.reserve(order.size());
    for (std::size_t i : order)
        comps.push_back(components_[i]);

    std::vector<std::vector<std::int64_t>> table = linking_;
    const bool square = linking_.size() == order.size() &&
                        std::all_of(linking_.begin(), linking_.end(),
                                    [&](const auto& row) { return row.size() == order.size(); });
    if (square) {
        for (std::size_t r = 0; r < order.size(); ++r)
            for (std::size_t c = 0; c < order.size(); ++c)
                table[r][c] = linking_[order[r]][order[c]];
    }
    SurgeryDiagram out = from_table(std::move(comps), std::move(table));
    out.dangling_ = dangling_;
    return out;
}

std::vector<LinkingEntry> SurgeryDiagram::linking_entries() const
{
    std::vector<LinkingEntry> out;
    const auto order = canonical_order();
    for (std::size_t x = 0; x < order.size(); ++x)
        for (std::size_t y = x + 1; y < order.size(); ++y) {
            std::int64_t lk = linking(order[x], order[y]);
            if (lk != 0)
                out.push_back({components_[order[x]].id, components_[order[y]].id, lk});
        }
    return out;
}

bool operator==(const SurgeryDiagram& a, const SurgeryDiagram& b)
{
    if (a.size() != b.size())
        return false;
    SurgeryDiagram ca = a.canonical();
    SurgeryDiagram cb = b.canonical();
    return ca.components_ == cb.components_ && ca.linking_ == cb.linking_ && ca.dangling_ == cb.dangling_;
}

const char* to_string(Violation::Kind kind)
{
    switch (kind) {
    case Violation::Kind::parity: return "parity";
    case Violation::Kind::asymmetric_linking: return "asymmetric-linking";
    case Violation::Kind::linking_shape: return "linking-shape";
    case Violation::Kind::self_linking: return "self-linking";
    case Violation::Kind::unknown_linking_id: return "unknown-linking-id";
    case Violation::Kind::duplicate_id: return "duplicate-id";
    case Violation::Kind::invalid_id: return "invalid-id";
    case Violation::Kind::coefficient: return "coefficient";
    }
    return "unknown";
}

bool is_valid_id(const ComponentId& id)
{
    if (id.empty())
        return false;
    auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    if (!word(id.front()))
        return false;
    return std::all_of(id.begin(), id.end(), [&](char c) { return word(c) || c == '.' || c == '-'; });
}

std::vector<Violation> validate(const SurgeryDiagram& diagram)
{
    std::vector<Violation> out;
    const auto& comps = diagram.components();
    const std::size_t n = comps.size();

    std::set<ComponentId> seen;
    for (const SurgeryComponent& c : comps) {
        if (!is_valid_id(c.id))
            out.push_back({Violation::Kind::invalid_id, c.id, "id must match [A-Za-z0-9_][A-Za-z0-9_.-]*"});
        if (!seen.insert(c.id).second)
            out.push_back({Violation::Kind::duplicate_id, c.id, "component id '" + c.id + "' is not unique"});
        if (c.sign != 1 && c.sign != -1)
            out.push_back({Violation::Kind::coefficient, c.id,
                           "contact surgery coefficient must be +1 or -1, got " + std::to_string(c.sign)});
        if ((c.tb + c.rot) % 2 == 0)
            out.push_back({Violation::Kind::parity, c.id,
                           "tb + rot must be odd (tb=" + std::to_string(c.tb) + ", rot=" + std::to_string(c.rot) +
                               ")"});
    }

    const auto& table = diagram.linking_table();
    bool square = table.size() == n;
    for (const auto& row : table)
        square = square && row.size() == n;
    if (!square) {
        out.push_back({Violation::Kind::linking_shape, "linking",
                       "linking table does not match the component count " + std::to_string(n)});
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (table[i][j] != table[j][i])
                    out.push_back({Violation::Kind::asymmetric_linking, comps[i].id + "," + comps[j].id,
                                   "lk(" + comps[i].id + "," + comps[j].id + ")=" + std::to_string(table[i][j]) +
                                       " but lk(" + comps[j].id + "," + comps[i].id +
                                       ")=" + std::to_string(table[j][i])});
    }

    for (const LinkingEntry& e : diagram.dangling_linking()) {
        if (e.a == e.b && diagram.contains(e.a))
            out.push_back({Violation::Kind::self_linking, e.a + "," + e.b,
                           "self-linking is carried by the framing, not the linking table"});
        else
            out.push_back({Violation::Kind::unknown_linking_id, e.a + "," + e.b,
                           "linking entry names an unknown component"});
    }
    return out;
}

void require_valid(const SurgeryDiagram& diagram)
{
    auto violations = validate(diagram);
    if (violations.empty())
        return;
    std::ostringstream msg;
    msg << "invalid diagram:";
    for (const Violation& v : violations)
        msg << " [" << to_string(v.kind) << " " << v.subject << ": " << v.message << "]";
    throw Error(ErrorCategory::validation, to_string(violations.front().kind), msg.str());
}

ExtendedLinkingMatrix extended_matrix(const SurgeryDiagram& diagram)
{
    require_valid(diagram);
    const auto order = diagram.canonical_order();
    ExtendedLinkingMatrix e;
    e.q = IntMatrix(order.size(), order.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        const SurgeryComponent& c = diagram.component(order[r]);
        e.ids.push_back(c.id);
        e.q(r, r) = static_cast<long>(c.framing());
        for (std::size_t s = 0; s < order.size(); ++s)
            if (s != r)
                e.q(r, s) = static_cast<long>(diagram.linking(order[r], order[s]));
    }
    return e;
}

namespace {

ComponentId suffixed_free(const std::set<ComponentId>& used, const ComponentId& base)
{
    if (!used.contains(base))
        return base;
    for (std::size_t k = 2;; ++k) {
        ComponentId candidate = base + "." + std::to_string(k);
        if (!used.contains(candidate))
            return candidate;
    }
}

std::set<ComponentId> id_set(const SurgeryDiagram& d)
{
    std::set<ComponentId> s;
    for (const auto& c : d.components())
        s.insert(c.id);
    return s;
}

}  // namespace

ComponentId fresh_id(const SurgeryDiagram& diagram, const ComponentId& base)
{
    return suffixed_free(id_set(diagram), base);
}

SurgeryDiagram disjoint_union(const SurgeryDiagram& d1, const SurgeryDiagram& d2)
{
    std::set<ComponentId> used = id_set(d1);
    std::map<ComponentId, ComponentId> renamed;
    std::vector<SurgeryComponent> comps = d1.components();
    for (SurgeryComponent c : d2.components()) {
        ComponentId id = suffixed_free(used, c.id);
        used.insert(id);
        renamed[c.id] = id;
        c.id = id;
        comps.push_back(std::move(c));
    }
    std::vector<LinkingEntry> entries = d1.linking_entries();
    for (LinkingEntry e : d2.linking_entries()) {
        e.a = renamed.at(e.a);
        e.b = renamed.at(e.b);
        entries.push_back(std::move(e));
    }
    return SurgeryDiagram(std::move(comps), entries).canonical();
}

SurgeryDiagram with_component(const SurgeryDiagram& diagram, const SurgeryComponent& component,
                              const std::vector<std::pair<ComponentId, std::int64_t>>& linking_row)
{
    if (diagram.contains(component.id))
        fail_precondition("component.fresh", "component id '" + component.id + "' already in use");
    std::vector<SurgeryComponent> comps = diagram.components();
    comps.push_back(component);
    std::vector<LinkingEntry> entries = diagram.linking_entries();
    for (const auto& [other, lk] : linking_row) {
        if (!diagram.contains(other))
            fail_precondition("component.exists", "linking row names unknown component '" + other + "'");
        if (lk != 0)
            entries.push_back({component.id, other, lk});
    }
    return SurgeryDiagram(std::move(comps), entries).canonical();
}

SurgeryDiagram without_components(const SurgeryDiagram& diagram, const std::vector<ComponentId>& ids)
{
    std::set<ComponentId> drop(ids.begin(), ids.end());
    std::vector<SurgeryComponent> comps;
    for (const auto& c : diagram.components())
        if (!drop.contains(c.id))
            comps.push_back(c);
    std::vector<LinkingEntry> entries;
    for (const auto& e : diagram.linking_entries())
        if (!drop.contains(e.a) && !drop.contains(e.b))
            entries.push_back(e);
    return SurgeryDiagram(std::move(comps), entries).canonical();
}

SurgeryDiagram with_replaced_component(const SurgeryDiagram& diagram, const SurgeryComponent& component)
{
    auto i = diagram.index_of(component.id);
    if (!i)
        fail_precondition("component.exists", "unknown component id '" + component.id + "'");
    std::vector<SurgeryComponent> comps = diagram.components();
    comps[*i] = component;
    return SurgeryDiagram::from_table(std::move(comps), diagram.linking_table()).canonical();
}

std::vector<std::vector<ComponentId>> linking_blocks(const SurgeryDiagram& diagram)
{
    const auto order = diagram.canonical_order();
    const std::size_t n = order.size();
    std::vector<int> block(n, -1);
    std::vector<std::vector<ComponentId>> out;
    for (std::size_t start = 0; start < n; ++start) {
        if (block[start] >= 0)
            continue;
        const int label = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<std::size_t> stack{start};
        block[start] = label;
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            out.back().push_back(diagram.component(order[x]).id);
            for (std::size_t y = 0; y < n; ++y)
                if (block[y] < 0 && diagram.linking(order[x], order[y]) != 0) {
                    block[y] = label;
                    stack.push_back(y);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

}  // namespace csurg
