#include "csurg/moves.hpp"

#include "csurg/digest.hpp"
#include "csurg/error.hpp"
#include "csurg/standard_diagrams.hpp"

#include <algorithm>
#include <sstream>

namespace csurg {

namespace {

constexpr const char* kKindNames[] = {
    "stabilize_component", "ambient_connect_sum", "cancel_pair", "handle_slide",  "add_meridian",
    "lemma42_move",        "avdek_merge",         "detour_insert", "detour_close", "append_component",
};

const SurgeryComponent& require_component(const SurgeryDiagram& d, const ComponentId& id, const char* check)
{
    auto i = d.index_of(id);
    if (!i)
        fail_precondition(check, "unknown component id '" + id + "'");
    return d.component(*i);
}

/// Ids of all components other than `skip` linked to `id`.
std::vector<ComponentId> linked_to(const SurgeryDiagram& d, const ComponentId& id,
                                   std::initializer_list<ComponentId> skip = {})
{
    std::vector<ComponentId> out;
    for (const auto& c : d.components()) {
        if (c.id == id || std::find(skip.begin(), skip.end(), c.id) != skip.end())
            continue;
        if (d.linking(id, c.id) != 0)
            out.push_back(c.id);
    }
    return out;
}

void require_meridian_of(const SurgeryDiagram& d, const ComponentId& m, const ComponentId& i, const char* check)
{
    if (d.linking(m, i) != 1)
        fail_precondition(check, "'" + m + "' does not link '" + i + "' once (lk = " +
                                     std::to_string(d.linking(m, i)) + ")");
    auto others = linked_to(d, m, {i});
    if (!others.empty())
        fail_precondition(check, "'" + m + "' also links '" + others.front() + "'");
}

SurgeryDiagram checked(const SurgeryDiagram& before, SurgeryDiagram after, const MoveParams& params)
{
    const InvariantComparison cmp = check_move_invariance(before, after, params);
    if (!cmp.ok()) {
        std::string msg = describe(params) + " changed the invariants:";
        for (const auto& f : cmp.failures)
            msg += " " + f + ";";
        throw Error(ErrorCategory::invariant_violation, std::string(to_string(kind_of(params))) + ".invariance", msg);
    }
    return after;
}

/// Smallest tag whose standard ids are all unused.
ComponentId fresh_tag(const SurgeryDiagram& d, int k)
{
    const ComponentId base = standard_tag(k);
    ComponentId tag = base;
    for (int n = 2;; ++n) {
        const auto ids = standard_ids(k, tag);
        if (std::none_of(ids.begin(), ids.end(), [&](const ComponentId& id) { return d.contains(id); }))
            return tag;
        tag = base + "." + std::to_string(n);
    }
}

std::string sign_text(int s) { return s > 0 ? "+1" : "-1"; }

}  // namespace

const char* to_string(MoveKind kind) { return kKindNames[static_cast<int>(kind)]; }

std::optional<MoveKind> parse_move_kind(std::string_view text)
{
    for (int i = 0; i < static_cast<int>(std::size(kKindNames)); ++i)
        if (text == kKindNames[i])
            return static_cast<MoveKind>(i);
    return std::nullopt;
}

MoveKind kind_of(const MoveParams& params) { return static_cast<MoveKind>(params.index()); }

bool preserves_manifold(MoveKind kind)
{
    switch (kind) {
    case MoveKind::cancel_pair:
    case MoveKind::handle_slide:
    case MoveKind::lemma42_move:
    case MoveKind::avdek_merge:
    case MoveKind::detour_close:
        return true;
    default:
        return false;
    }
}

SurgeryDiagram stabilize_component(const SurgeryDiagram& d, const ComponentId& id, Direction direction)
{
    require_valid(d);
    SurgeryComponent c = require_component(d, id, "stabilize.component");
    c.tb -= 1;
    c.rot += direction == Direction::positive ? 1 : -1;
    return with_replaced_component(d, c);
}

SurgeryDiagram ambient_connect_sum(const SurgeryDiagram& d, int k, const ComponentId& tag)
{
    require_valid(d);
    if (k < -1 || k > 1)
        fail_precondition("ambient.k", "k must be -1, 0 or +1");
    const ComponentId t = tag.empty() ? fresh_tag(d, k) : tag;
    for (const ComponentId& id : standard_ids(k, t))
        if (d.contains(id))
            fail_precondition("ambient.fresh_id", "id '" + id + "' already in use");
    return disjoint_union(d, standard_diagram(k, t));
}

SurgeryDiagram cancel_pair(const SurgeryDiagram& d, const ComponentId& i, const ComponentId& j)
{
    require_valid(d);
    const SurgeryComponent& a = require_component(d, i, "cancel_pair.component");
    const SurgeryComponent& b = require_component(d, j, "cancel_pair.component");
    if (i == j)
        fail_precondition("cancel_pair.distinct", "i and j must differ");
    if (a.tb != b.tb)
        fail_precondition("cancel_pair.tb", "tb differs (" + std::to_string(a.tb) + " vs " + std::to_string(b.tb) + ")");
    if (a.rot != b.rot)
        fail_precondition("cancel_pair.rot",
                          "rot differs (" + std::to_string(a.rot) + " vs " + std::to_string(b.rot) + ")");
    if (d.linking(i, j) != a.tb)
        fail_precondition("cancel_pair.push_off_linking", "lk(i, j) = " + std::to_string(d.linking(i, j)) +
                                                              " but a contact push-off has lk = tb = " +
                                                              std::to_string(a.tb));
    for (const auto& c : d.components())
        if (c.id != i && c.id != j && d.linking(i, c.id) != d.linking(j, c.id))
            fail_precondition("cancel_pair.other_linking", "lk with '" + c.id + "' differs between i and j");
    if (a.sign != -b.sign)
        fail_precondition("cancel_pair.opposite_signs", "signs must be opposite");
    CancelPairParams params{i, j};
    return checked(d, without_components(d, {i, j}), params);
}

SurgeryDiagram handle_slide(const SurgeryDiagram& d, const ComponentId& i, const ComponentId& j)
{
    require_valid(d);
    if (i == j)
        fail_precondition("handle_slide.distinct", "cannot slide a component over itself");
    SurgeryComponent a = require_component(d, i, "handle_slide.component");
    const SurgeryComponent& b = require_component(d, j, "handle_slide.component");

    const std::int64_t lk = d.linking(i, j);
    const std::int64_t f = a.framing() + 2 * lk + b.framing();
    a.tb = f - a.sign;
    a.rot += b.rot;

    std::vector<LinkingEntry> entries;
    for (const LinkingEntry& e : d.linking_entries())
        if (e.a != i && e.b != i)
            entries.push_back(e);
    for (const auto& c : d.components()) {
        if (c.id == i)
            continue;
        const std::int64_t v = c.id == j ? lk + b.framing() : d.linking(i, c.id) + d.linking(j, c.id);
        if (v != 0)
            entries.push_back({i, c.id, v});
    }
    std::vector<SurgeryComponent> comps = d.components();
    for (auto& c : comps)
        if (c.id == i)
            c = a;
    HandleSlideParams params{i, j};
    return checked(d, SurgeryDiagram(std::move(comps), entries), params);
}

SurgeryDiagram add_meridian(const SurgeryDiagram& d, const ComponentId& target, std::int64_t tb, std::int64_t rot,
                            int sign, const ComponentId& id)
{
    require_valid(d);
    require_component(d, target, "add_meridian.component");
    if ((tb + rot) % 2 == 0)
        fail_precondition("add_meridian.parity", "tb + rot must be odd");
    if (sign != 1 && sign != -1)
        fail_precondition("add_meridian.sign", "sign must be +1 or -1");
    const ComponentId mid = id.empty() ? fresh_id(d, target + "_m") : id;
    if (d.contains(mid))
        fail_precondition("add_meridian.fresh_id", "id '" + mid + "' already in use");
    return with_component(d, {mid, tb, rot, sign}, {{target, 1}});
}

SurgeryDiagram lemma42_move(const SurgeryDiagram& d, const ComponentId& i, const ComponentId& m)
{
    require_valid(d);
    SurgeryComponent l = require_component(d, i, "lemma42.component");
    const SurgeryComponent& u = require_component(d, m, "lemma42.component");
    if (i == m)
        fail_precondition("lemma42.distinct", "i and m must differ");
    if (l.sign != -1)
        fail_precondition("lemma42.sign_i", "component '" + i + "' must carry a (-1)-surgery");
    require_meridian_of(d, m, i, "lemma42.meridian");
    if (u.tb != -2)
        fail_precondition("lemma42.meridian_tb", "meridian must have tb = -2");
    if (u.rot != 1 && u.rot != -1)
        fail_precondition("lemma42.meridian_rot", "meridian must have rot = +1 or -1");
    if (u.sign != 1)
        fail_precondition("lemma42.meridian_sign", "meridian must carry a (+1)-surgery");

    // Slam dunk of the meridian (framing -1) onto L (framing tb - 1).
    const std::int64_t slam = l.framing() + 1;
    l.tb -= 1;
    l.rot += u.rot;
    l.sign = 1;
    if (l.framing() != slam)
        throw Error(ErrorCategory::invariant_violation, "lemma42.slam_dunk", "framing bookkeeping mismatch");
    Lemma42Params params{i, m};
    return checked(d, with_replaced_component(without_components(d, {m}), l), params);
}

SurgeryDiagram avdek_merge(const SurgeryDiagram& d, const ComponentId& i, const ComponentId& m, const ComponentId& tag)
{
    require_valid(d);
    const SurgeryComponent& l = require_component(d, i, "avdek.component");
    const SurgeryComponent& u = require_component(d, m, "avdek.component");
    if (i == m)
        fail_precondition("avdek.distinct", "i and m must differ");
    if (l.sign != 1)
        fail_precondition("avdek.sign_i", "component '" + i + "' must carry a (+1)-surgery");
    require_meridian_of(d, m, i, "avdek.meridian");
    if (u.tb != -1 || u.rot != 0 || u.sign != 1)
        fail_precondition("avdek.meridian_shape", "meridian must be tb = -1, rot = 0, sign = +1");
    if (auto others = linked_to(d, i, {m}); !others.empty())
        fail_precondition("avdek.unlinked", "component '" + i + "' is linked elsewhere ('" + others.front() +
                                                "') - use invariant-level verification instead");
    const SurgeryDiagram rest = without_components(d, {i, m});
    const ComponentId t = tag.empty() ? fresh_id(rest, standard_tag(1)) : tag;
    if (rest.contains(t))
        fail_precondition("avdek.fresh_id", "id '" + t + "' already in use");
    AvdekMergeParams params{i, m, t};
    return checked(d, disjoint_union(rest, standard_diagram(1, t)), params);
}

std::int64_t detour_default_rot(std::int64_t p) { return (1 - p) % 2 != 0 ? 0 : 1; }

SurgeryDiagram detour_insert(const SurgeryDiagram& d, std::int64_t p, const ComponentId& id,
                             std::optional<std::int64_t> rot)
{
    require_valid(d);
    if (p < 2)
        fail_precondition("detour_insert.p", "p must be at least 2");
    const std::int64_t r = rot.value_or(detour_default_rot(p));
    if ((1 - p + r) % 2 == 0)
        fail_precondition("detour_insert.parity", "tb + rot must be odd");
    const ComponentId uid = id.empty() ? fresh_id(d, "U" + std::to_string(p)) : id;
    if (d.contains(uid))
        fail_precondition("detour_insert.fresh_id", "id '" + uid + "' already in use");
    return with_component(d, {uid, 1 - p, r, -1}, {});
}

SurgeryDiagram detour_close(const SurgeryDiagram& d, const ComponentId& id, const ComponentId& meridian)
{
    require_valid(d);
    const SurgeryComponent& u = require_component(d, id, "detour_close.component");
    if (u.sign != -1)
        fail_precondition("detour_close.sign", "'" + id + "' must carry a (-1)-surgery");
    if (auto others = linked_to(d, id); !others.empty())
        fail_precondition("detour_close.unlinked", "'" + id + "' is linked to '" + others.front() + "'");
    const ComponentId mid = meridian.empty() ? fresh_id(d, id + "_m") : meridian;
    if (d.contains(mid))
        fail_precondition("detour_close.fresh_id", "id '" + mid + "' already in use");
    const SurgeryDiagram closed = with_component(d, {mid, -1, 0, 1}, {{id, 1}});
    DetourCloseParams params{id, mid};
    // The pair U_p(-1) u mu(+1) must restore the diagram without U_p.
    const SurgeryDiagram reference = without_components(d, {id});
    const InvariantComparison cmp = compare_invariants(reference, closed, meridian_transfer(reference, closed));
    if (!cmp.ok())
        throw Error(ErrorCategory::invariant_violation, "detour_close.invariance",
                    describe(params) + " did not restore the invariants");
    return closed;
}

SurgeryDiagram append_component(const SurgeryDiagram& d, const SurgeryComponent& component,
                                const std::vector<std::pair<ComponentId, std::int64_t>>& linking)
{
    require_valid(d);
    if (d.contains(component.id))
        fail_precondition("append.fresh_id", "id '" + component.id + "' already in use");
    for (const auto& [other, lk] : linking)
        require_component(d, other, "append.linking");
    SurgeryDiagram out = with_component(d, component, linking);
    require_valid(out);
    return out;
}

MoveParams resolve(const SurgeryDiagram& d, const MoveParams& params)
{
    MoveParams out = params;
    if (auto* p = std::get_if<AmbientConnectSumParams>(&out); p && p->tag.empty())
        p->tag = fresh_tag(d, p->k);
    if (auto* p = std::get_if<AddMeridianParams>(&out); p && p->id.empty())
        p->id = fresh_id(d, p->target + "_m");
    if (auto* p = std::get_if<AvdekMergeParams>(&out); p && p->tag.empty())
        p->tag = fresh_id(without_components(d, {p->i, p->m}), standard_tag(1));
    if (auto* p = std::get_if<DetourInsertParams>(&out)) {
        if (p->id.empty())
            p->id = fresh_id(d, "U" + std::to_string(p->p));
        if (!p->rot)
            p->rot = detour_default_rot(p->p);
    }
    if (auto* p = std::get_if<DetourCloseParams>(&out); p && p->meridian.empty())
        p->meridian = fresh_id(d, p->id + "_m");
    return out;
}

namespace {

SurgeryDiagram dispatch(const SurgeryDiagram& d, const MoveParams& params)
{
    return std::visit(
        [&](const auto& p) -> SurgeryDiagram {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, StabilizeParams>)
                return stabilize_component(d, p.id, p.direction);
            else if constexpr (std::is_same_v<T, AmbientConnectSumParams>)
                return ambient_connect_sum(d, p.k, p.tag);
            else if constexpr (std::is_same_v<T, CancelPairParams>)
                return cancel_pair(d, p.i, p.j);
            else if constexpr (std::is_same_v<T, HandleSlideParams>)
                return handle_slide(d, p.i, p.j);
            else if constexpr (std::is_same_v<T, AddMeridianParams>)
                return add_meridian(d, p.target, p.tb, p.rot, p.sign, p.id);
            else if constexpr (std::is_same_v<T, Lemma42Params>)
                return lemma42_move(d, p.i, p.m);
            else if constexpr (std::is_same_v<T, AvdekMergeParams>)
                return avdek_merge(d, p.i, p.m, p.tag);
            else if constexpr (std::is_same_v<T, DetourInsertParams>)
                return detour_insert(d, p.p, p.id, p.rot);
            else if constexpr (std::is_same_v<T, DetourCloseParams>)
                return detour_close(d, p.id, p.meridian);
            else
                return append_component(d, p.component, p.linking);
        },
        params);
}

}  // namespace

AppliedMove apply_move(const SurgeryDiagram& d, const MoveParams& params)
{
    const MoveParams resolved = resolve(d, params);
    SurgeryDiagram after = dispatch(d, resolved);
    MoveRecord record{resolved, content_hash(d), content_hash(after)};
    return {std::move(after), std::move(record)};
}

SurgeryDiagram replay(const SurgeryDiagram& start, const std::vector<MoveRecord>& records)
{
    SurgeryDiagram current = start;
    for (std::size_t k = 0; k < records.size(); ++k) {
        const MoveRecord& r = records[k];
        if (content_hash(current) != r.before_hash)
            throw Error(ErrorCategory::invariant_violation, "replay.before_hash",
                        "move " + std::to_string(k) + " (" + describe(r.params) + "): before-hash mismatch");
        current = dispatch(current, r.params);
        if (content_hash(current) != r.after_hash)
            throw Error(ErrorCategory::invariant_violation, "replay.after_hash",
                        "move " + std::to_string(k) + " (" + describe(r.params) + "): after-hash mismatch");
    }
    return current;
}

MeridianTransfer move_transfer(const SurgeryDiagram& before, const SurgeryDiagram& after, const MoveParams& params)
{
    std::map<ComponentId, std::map<ComponentId, std::int64_t>> images;
    if (auto* p = std::get_if<HandleSlideParams>(&params))
        images[p->j] = {{p->j, 1}, {p->i, -1}};
    return meridian_transfer(before, after, images);
}

InvariantComparison check_move_invariance(const SurgeryDiagram& before, const SurgeryDiagram& after,
                                          const MoveParams& params)
{
    return compare_invariants(before, after, move_transfer(before, after, params));
}

std::string describe(const MoveParams& params)
{
    std::ostringstream s;
    s << to_string(kind_of(params)) << "(";
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, StabilizeParams>)
                s << "id=" << p.id << ", " << (p.direction == Direction::positive ? "positive" : "negative");
            else if constexpr (std::is_same_v<T, AmbientConnectSumParams>)
                s << "k=" << p.k << ", tag=" << p.tag;
            else if constexpr (std::is_same_v<T, CancelPairParams> || std::is_same_v<T, HandleSlideParams>)
                s << "i=" << p.i << ", j=" << p.j;
            else if constexpr (std::is_same_v<T, AddMeridianParams>)
                s << "target=" << p.target << ", tb=" << p.tb << ", rot=" << p.rot << ", sign=" << sign_text(p.sign)
                  << ", id=" << p.id;
            else if constexpr (std::is_same_v<T, Lemma42Params>)
                s << "i=" << p.i << ", m=" << p.m;
            else if constexpr (std::is_same_v<T, AvdekMergeParams>)
                s << "i=" << p.i << ", m=" << p.m << ", tag=" << p.tag;
            else if constexpr (std::is_same_v<T, DetourInsertParams>) {
                s << "p=" << p.p << ", id=" << p.id;
                if (p.rot)
                    s << ", rot=" << *p.rot;
            } else if constexpr (std::is_same_v<T, DetourCloseParams>)
                s << "id=" << p.id << ", meridian=" << p.meridian;
            else {
                s << p.component.id << ": tb=" << p.component.tb << ", rot=" << p.component.rot
                  << ", sign=" << sign_text(p.component.sign);
                for (const auto& [other, lk] : p.linking)
                    s << ", lk(" << other << ")=" << lk;
            }
        },
        params);
    s << ")";
    return s.str();
}

}  // namespace csurg
