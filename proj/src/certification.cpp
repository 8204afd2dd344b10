#include "csurg/explorer.hpp"

#include "csurg/digest.hpp"
#include "csurg/diagram_format.hpp"
#include "csurg/error.hpp"
#include "csurg/standard_diagrams.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace csurg {

namespace {

using Kind = Summand::Kind;

[[noreturn]] void fail_certification(const std::string& check, const std::string& message)
{
    throw Error(ErrorCategory::invariant_violation, "certification." + check, message);
}

bool is_xi1_unknot(const SurgeryComponent& c) { return c.sign == 1 && c.tb == -2 && (c.rot == 1 || c.rot == -1); }

/// Two-component blocks are matched up to reversing either component and
/// conjugating (negating every rotation number).
bool matches_pair(const SurgeryComponent& a, const SurgeryComponent& b, std::int64_t lk, const SurgeryDiagram& pattern)
{
    const SurgeryComponent& pa = pattern.component(std::size_t{0});
    const SurgeryComponent& pb = pattern.component(std::size_t{1});
    const std::int64_t plk = pattern.linking(std::size_t{0}, std::size_t{1});
    for (int swap = 0; swap < 2; ++swap) {
        const SurgeryComponent& x = swap ? b : a;
        const SurgeryComponent& y = swap ? a : b;
        if (x.tb != pa.tb || y.tb != pb.tb || x.sign != pa.sign || y.sign != pb.sign)
            continue;
        for (int fx : {1, -1})
            for (int fy : {1, -1})
                if (fx * x.rot == pa.rot && fy * y.rot == pb.rot && fx * fy * lk == plk)
                    return true;
    }
    return false;
}

Summand single(const SurgeryComponent& c, const std::string& origin)
{
    Summand s;
    s.ids = {c.id};
    s.trail = {origin};
    if (is_xi1_unknot(c)) {
        s.kind = Kind::xi;
        s.k = 1;
    } else if (c.sign == -1 && c.tb <= -1) {
        s.kind = Kind::lens;
        s.p = 1 - c.tb;
    }
    return s;
}

Summand recognize_block(const SurgeryDiagram& root, const std::vector<ComponentId>& block)
{
    if (block.size() == 1)
        return single(root.component(block[0]), "root");
    Summand s;
    s.ids = block;
    s.trail = {"root"};
    if (block.size() == 2) {
        const SurgeryComponent& a = root.component(block[0]);
        const SurgeryComponent& b = root.component(block[1]);
        const std::int64_t lk = root.linking(block[0], block[1]);
        for (int k : {0, -1}) {
            if (matches_pair(a, b, lk, standard_diagram(k))) {
                s.kind = Kind::xi;
                s.k = k;
                return s;
            }
        }
        for (int swap = 0; swap < 2; ++swap) {
            const SurgeryComponent& u = swap ? b : a;
            const SurgeryComponent& m = swap ? a : b;
            if (u.sign == -1 && u.tb <= -1 && m.tb == -1 && m.rot == 0 && m.sign == 1 && (lk == 1 || lk == -1)) {
                s.kind = Kind::neutral;
                return s;
            }
        }
    }
    return s;
}

Summand combine(Summand a, const Summand& b)
{
    Summand out;
    out.ids = std::move(a.ids);
    out.ids.insert(out.ids.end(), b.ids.begin(), b.ids.end());
    out.trail = std::move(a.trail);
    out.trail.insert(out.trail.end(), b.trail.begin(), b.trail.end());
    if (a.kind == Kind::xi && b.kind == Kind::xi) {
        out.kind = Kind::xi;
        out.k = a.k + b.k;
    } else if (a.kind == Kind::neutral || b.kind == Kind::neutral) {
        const Summand& other = a.kind == Kind::neutral ? b : a;
        out.kind = other.kind;
        out.k = other.k;
        out.p = other.p;
    }
    return out;
}

class SummandState {
public:
    explicit SummandState(const SurgeryDiagram& root)
    {
        for (const auto& block : linking_blocks(root))
            parts_.push_back(recognize_block(root, block));
    }

    void apply(const MoveParams& params)
    {
        const std::string what = describe(params);
        std::visit([&](const auto& p) { step(p, what); }, params);
    }

    std::vector<Summand> take() { return std::move(parts_); }

private:
    std::size_t find(const ComponentId& id) const
    {
        for (std::size_t s = 0; s < parts_.size(); ++s)
            if (std::find(parts_[s].ids.begin(), parts_[s].ids.end(), id) != parts_[s].ids.end())
                return s;
        fail_certification("trail", "trail refers to unknown component '" + id + "'");
    }

    /// Merges the summands holding `ids` into one and returns its index.
    std::size_t merge(const std::vector<ComponentId>& ids)
    {
        std::vector<std::size_t> idx;
        for (const auto& id : ids)
            idx.push_back(find(id));
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        Summand merged = parts_[idx[0]];
        for (std::size_t k = 1; k < idx.size(); ++k)
            merged = combine(std::move(merged), parts_[idx[k]]);
        for (std::size_t k = idx.size(); k-- > 1;)
            parts_.erase(parts_.begin() + static_cast<std::ptrdiff_t>(idx[k]));
        parts_[idx[0]] = std::move(merged);
        return idx[0];
    }

    void remove_ids(std::size_t s, const std::vector<ComponentId>& ids)
    {
        auto& v = parts_[s].ids;
        for (const auto& id : ids)
            v.erase(std::remove(v.begin(), v.end(), id), v.end());
        if (v.empty()) {
            if (parts_[s].kind == Kind::xi)
                fail_certification("trail", "an overtwisted summand cancelled to nothing");
            parts_.erase(parts_.begin() + static_cast<std::ptrdiff_t>(s));
        }
    }

    void to_other(std::size_t s, const std::string& what)
    {
        parts_[s].kind = Kind::other;
        parts_[s].trail.push_back(what);
    }

    void step(const StabilizeParams& p, const std::string& what) { to_other(find(p.id), what); }

    void step(const AmbientConnectSumParams& p, const std::string& what)
    {
        Summand s;
        s.kind = Kind::xi;
        s.k = p.k;
        s.ids = standard_ids(p.k, p.tag);
        s.trail = {what};
        parts_.push_back(std::move(s));
    }

    void step(const CancelPairParams& p, const std::string& what)
    {
        std::size_t s = merge({p.i, p.j});
        parts_[s].trail.push_back(what);
        remove_ids(s, {p.i, p.j});
    }

    void step(const HandleSlideParams& p, const std::string& what)
    {
        std::size_t s = merge({p.i, p.j});
        parts_[s].trail.push_back(what);
    }

    void step(const AddMeridianParams& p, const std::string& what)
    {
        std::size_t s = find(p.target);
        parts_[s].ids.push_back(p.id);
        to_other(s, what);
    }

    void step(const Lemma42Params& p, const std::string& what)
    {
        std::size_t s = merge({p.i, p.m});
        parts_[s].trail.push_back(what);
        remove_ids(s, {p.m});
    }

    void step(const AvdekMergeParams& p, const std::string& what)
    {
        std::size_t s = merge({p.i, p.m});
        to_other(s, what);
        remove_ids(s, {p.i, p.m});
        Summand x;
        x.kind = Kind::xi;
        x.k = 1;
        x.ids = {p.tag};
        x.trail = {what};
        parts_.push_back(std::move(x));
    }

    void step(const DetourInsertParams& p, const std::string& what)
    {
        Summand s;
        s.kind = Kind::lens;
        s.p = p.p;
        s.ids = {p.id};
        s.trail = {what};
        parts_.push_back(std::move(s));
    }

    void step(const DetourCloseParams& p, const std::string& what)
    {
        std::size_t s = find(p.id);
        Summand& u = parts_[s];
        const bool open_detour = u.kind == Kind::lens && u.ids.size() == 1;
        u.ids.push_back(p.meridian);
        u.trail.push_back(what);
        u.kind = open_detour ? Kind::neutral : Kind::other;
    }

    void step(const AppendComponentParams& p, const std::string& what)
    {
        std::vector<ComponentId> linked;
        for (const auto& [other, lk] : p.linking)
            if (lk != 0)
                linked.push_back(other);
        if (linked.empty()) {
            parts_.push_back(single(p.component, what));
            return;
        }
        std::size_t s = merge(linked);
        parts_[s].ids.push_back(p.component.id);
        to_other(s, what);
    }

    std::vector<Summand> parts_;
};

void check_summand(const SurgeryDiagram& d, const Summand& s)
{
    std::vector<ComponentId> others;
    for (const auto& c : d.components())
        if (std::find(s.ids.begin(), s.ids.end(), c.id) == s.ids.end())
            others.push_back(c.id);
    const SurgeryDiagram piece = without_components(d, others);
    if (s.kind == Kind::other)
        return;
    const AbelianGroup g = homology(piece);
    if (s.kind == Kind::lens) {
        if (!g.is_finite() || g.order() != s.p)
            fail_certification("lens", "open detour summand does not have |H_1| = " + std::to_string(s.p));
        return;
    }
    const auto value = try_d3(piece);
    const Rational expected = s.kind == Kind::xi ? Rational(s.k) : Rational(0);
    if (!g.is_trivial() || !value || value->value != expected)
        fail_certification("d3", "summand claimed to be xi_" + to_string(expected) + " has H_1 = " + g.summary() +
                                     ", d3 = " + (value ? value->str() : std::string("undefined")));
}

}  // namespace

const char* to_string(Family family)
{
    switch (family) {
    case Family::OT_S3:
        return "OT_S3";
    case Family::TIGHT_S3:
        return "TIGHT_S3";
    default:
        return "RHS_GENERIC";
    }
}

CertifiedDiagram certify_root(const SurgeryDiagram& diagram)
{
    require_valid(diagram);
    return {diagram, {diagram, {}}};
}

CertifiedDiagram extend(const CertifiedDiagram& c, const MoveParams& params)
{
    AppliedMove m = apply_move(c.diagram, params);
    CertifiedDiagram out{std::move(m.diagram), c.provenance};
    out.provenance.moves.push_back(std::move(m.record));
    return out;
}

void verify_provenance(const CertifiedDiagram& c)
{
    const SurgeryDiagram end = replay(c.provenance.root, c.provenance.moves);
    if (content_hash(end) != content_hash(c.diagram))
        fail_certification("replay", "trail does not end at the certified diagram");
}

std::vector<Summand> summands(const CertifiedDiagram& c)
{
    SummandState state(c.provenance.root);
    for (const auto& m : c.provenance.moves)
        state.apply(m.params);
    std::vector<Summand> parts = state.take();

    std::map<ComponentId, std::size_t> owner;
    for (std::size_t s = 0; s < parts.size(); ++s) {
        std::sort(parts[s].ids.begin(), parts[s].ids.end());
        for (const auto& id : parts[s].ids)
            if (!owner.emplace(id, s).second)
                fail_certification("partition", "component '" + id + "' lies in two summands");
    }
    if (owner.size() != c.diagram.size())
        fail_certification("partition", "summands do not cover the diagram");
    for (const auto& comp : c.diagram.components())
        if (!owner.contains(comp.id))
            fail_certification("partition", "component '" + comp.id + "' is in no summand");
    for (const LinkingEntry& e : c.diagram.linking_entries())
        if (owner[e.a] != owner[e.b])
            fail_certification("blocks", "summands are linked ('" + e.a + "', '" + e.b + "')");
    for (const auto& s : parts)
        check_summand(c.diagram, s);
    std::sort(parts.begin(), parts.end(), [](const Summand& a, const Summand& b) { return a.ids < b.ids; });
    return parts;
}

std::string VertexKey::homology_summary() const
{
    return AbelianGroup(torsion, free_rank, {}, IntMatrix()).summary();
}

std::string VertexKey::d3_text() const { return d3 ? to_string(*d3) : std::string("undefined"); }

std::string VertexKey::str() const
{
    std::string s = std::string(to_string(family)) + " d3=" + d3_text() + " H1=" + homology_summary() +
                    " e=" + euler_order.get_str() + "/" + euler_divisibility.get_str();
    if (ot_certificate)
        s += " ot";
    return s;
}

namespace {

auto key_tuple(const VertexKey& k)
{
    return std::make_tuple(static_cast<int>(k.family), k.torsion, k.free_rank, k.d3.has_value(),
                           k.d3.value_or(Rational(0)), k.euler_order, k.euler_divisibility,
                           k.ot_certificate.has_value());
}

}  // namespace

bool operator==(const VertexKey& a, const VertexKey& b) { return key_tuple(a) == key_tuple(b); }
bool operator<(const VertexKey& a, const VertexKey& b) { return key_tuple(a) < key_tuple(b); }

bool same_invariants(const VertexKey& a, const VertexKey& b)
{
    return a.torsion == b.torsion && a.free_rank == b.free_rank && a.d3 == b.d3 && a.euler_order == b.euler_order &&
           a.euler_divisibility == b.euler_divisibility;
}

VertexKey invariant_key(const SurgeryDiagram& d)
{
    VertexKey key;
    const HomologyClass e = euler_class(d);
    const AbelianGroup& g = e.group();
    key.torsion = g.torsion();
    key.free_rank = g.free_rank();
    if (auto v = try_d3(d))
        key.d3 = v->value;
    key.euler_order = e.order();
    const IntVector coords = e.coordinates();
    Integer div = 0;
    for (std::size_t k = g.torsion().size(); k < coords.size(); ++k)
        div = gcd(div, coords[k]);
    key.euler_divisibility = div;
    return key;
}

VertexKey classify(const CertifiedDiagram& c)
{
    VertexKey key = invariant_key(c.diagram);
    const std::vector<Summand> parts = summands(c);
    bool all_neutral = true;
    bool all_s3 = true;
    for (const auto& s : parts) {
        all_neutral = all_neutral && s.kind == Kind::neutral;
        all_s3 = all_s3 && (s.kind == Kind::neutral || s.kind == Kind::xi);
        if (s.kind == Kind::xi && !key.ot_certificate)
            key.ot_certificate = OtCertificate{s.k, s.ids, s.trail};
    }
    if (all_neutral)
        key.family = Family::TIGHT_S3;
    else if (all_s3)
        key.family = Family::OT_S3;
    if (key.family != Family::RHS_GENERIC && (!key.torsion.empty() || key.free_rank != 0 || !key.d3 ||
                                              key.d3->get_den() != 1))
        fail_certification("family", "S^3 family claimed for " + key.str());
    return key;
}

VertexKey classify(const SurgeryDiagram& d) { return classify(certify_root(d)); }

}  // namespace csurg
