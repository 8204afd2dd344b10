#include "csurg/explorer.hpp"

#include "csurg/diagram_format.hpp"
#include "csurg/digest.hpp"
#include "csurg/error.hpp"
#include "csurg/standard_diagrams.hpp"

#include <algorithm>
#include <set>

namespace csurg {

namespace {

std::string trail_text(const CertifiedDiagram& c)
{
    return serialize(c.provenance.root) + serialize_move_log(c.provenance.moves);
}

bool same_certified(const CertifiedDiagram& a, const CertifiedDiagram& b)
{
    return content_hash(a.diagram) == content_hash(b.diagram) && trail_text(a) == trail_text(b);
}

template <typename F>
void collect(std::vector<std::string>& failures, const std::string& what, F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        failures.push_back(what + ": " + e.what());
    }
}

/// Every id used anywhere along the path.
std::set<ComponentId> path_ids(const PathCertificate& path)
{
    std::set<ComponentId> ids;
    auto add = [&](const CertifiedDiagram& c) {
        for (const auto& comp : c.diagram.components())
            ids.insert(comp.id);
        for (const auto& comp : c.provenance.root.components())
            ids.insert(comp.id);
    };
    add(path.start);
    for (const auto& e : path.edges) {
        add(e.source);
        add(e.witness);
        add(e.target);
    }
    return ids;
}

ComponentId fresh_in(const std::set<ComponentId>& used, const ComponentId& base)
{
    if (!used.contains(base))
        return base;
    for (int k = 2;; ++k)
        if (auto c = base + "." + std::to_string(k); !used.contains(c))
            return c;
}

bool contains_key(const std::vector<VertexKey>& keys, const VertexKey& k)
{
    return std::find(keys.begin(), keys.end(), k) != keys.end();
}

}  // namespace

AppendComponentParams EdgeCertificate::added() const
{
    std::vector<ComponentId> extra;
    for (const auto& c : witness.diagram.components())
        if (!source.diagram.contains(c.id))
            extra.push_back(c.id);
    if (extra.size() != 1 || witness.diagram.size() != source.diagram.size() + 1)
        throw Error(ErrorCategory::invariant_violation, "edge.single_component",
                    "witness must add exactly one component to the source");
    AppendComponentParams out;
    out.component = witness.diagram.component(extra[0]);
    for (std::size_t i : witness.diagram.canonical_order()) {
        const auto& c = witness.diagram.component(i);
        if (c.id != extra[0] && witness.diagram.linking(extra[0], c.id) != 0)
            out.linking.emplace_back(c.id, witness.diagram.linking(extra[0], c.id));
    }
    return out;
}

std::vector<std::string> check_edge(const EdgeCertificate& e)
{
    std::vector<std::string> failures;
    collect(failures, "source trail", [&] { verify_provenance(e.source); });
    collect(failures, "witness trail", [&] { verify_provenance(e.witness); });
    collect(failures, "target trail", [&] { verify_provenance(e.target); });
    if (!failures.empty())
        return failures;
    collect(failures, "witness", [&] {
        const AppendComponentParams a = e.added();
        if (!(without_components(e.witness.diagram, {a.component.id}) == e.source.diagram))
            failures.push_back("witness: does not extend the source diagram");
    });
    collect(failures, "from_key", [&] {
        if (!(classify(e.source) == e.from_key))
            failures.push_back("from_key: recomputed " + classify(e.source).str() + ", stored " + e.from_key.str());
    });
    collect(failures, "to_key", [&] {
        if (!(classify(e.target) == e.to_key))
            failures.push_back("to_key: recomputed " + classify(e.target).str() + ", stored " + e.to_key.str());
        const VertexKey w = invariant_key(e.witness.diagram);
        if (!same_invariants(w, e.to_key))
            failures.push_back("to_key: witness invariants " + w.str() + " differ from " + e.to_key.str());
    });
    collect(failures, "identification", [&] {
        const InvariantComparison cmp =
            compare_invariants(e.witness.diagram, e.target.diagram, meridian_transfer(e.witness.diagram, e.target.diagram));
        for (const auto& f : cmp.failures)
            failures.push_back("identification: " + f);
    });
    return failures;
}

EdgeCertificate make_edge(const CertifiedDiagram& source, const CertifiedDiagram& witness,
                          const CertifiedDiagram& target)
{
    EdgeCertificate e{classify(source), classify(target), source, witness, target};
    const auto failures = check_edge(e);
    if (!failures.empty()) {
        std::string msg = "edge " + e.from_key.str() + " -> " + e.to_key.str() + " failed:";
        for (const auto& f : failures)
            msg += "\n  " + f;
        msg += "\nwitness:\n" + serialize(witness.diagram);
        throw Error(ErrorCategory::invariant_violation, "edge.verify", msg);
    }
    return e;
}

VertexKey PathCertificate::start_key() const { return classify(start); }
VertexKey PathCertificate::end_key() const { return edges.empty() ? classify(start) : edges.back().to_key; }

std::vector<VertexKey> PathCertificate::vertex_keys() const
{
    std::vector<VertexKey> keys{edges.empty() ? classify(start) : edges.front().from_key};
    for (const auto& e : edges)
        keys.push_back(e.to_key);
    return keys;
}

std::vector<std::string> check_path(const PathCertificate& path)
{
    std::vector<std::string> failures;
    collect(failures, "start trail", [&] { verify_provenance(path.start); });
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
        const EdgeCertificate& e = path.edges[i];
        const CertifiedDiagram& prev = i == 0 ? path.start : path.edges[i - 1].target;
        if (!same_certified(prev, e.source))
            failures.push_back("edge " + std::to_string(i) + ": source is not the previous vertex");
        if (i > 0 && !(path.edges[i - 1].to_key == e.from_key))
            failures.push_back("edge " + std::to_string(i) + ": keys do not chain");
        for (const auto& f : check_edge(e))
            failures.push_back("edge " + std::to_string(i) + ": " + f);
    }
    return failures;
}

CertifiedDiagram xi_diagram(int k)
{
    CertifiedDiagram c = certify_root(SurgeryDiagram{});
    if (k == 0)
        return extend(c, AmbientConnectSumParams{0, {}});
    for (int step = 0; step < std::abs(k); ++step)
        c = extend(c, AmbientConnectSumParams{k > 0 ? 1 : -1, {}});
    return c;
}

PathCertificate ot_ladder(int k_min, int k_max)
{
    if (k_min > k_max)
        fail_precondition("ladder.range", "k_min must not exceed k_max");
    PathCertificate path{xi_diagram(k_min), {}};
    CertifiedDiagram current = path.start;
    for (int k = k_min; k < k_max; ++k) {
        const ComponentId tag = fresh_id(current.diagram, standard_tag(1));
        const CertifiedDiagram witness = extend(current, AppendComponentParams{{tag, -2, 1, 1}, {}});
        const CertifiedDiagram target = extend(current, AmbientConnectSumParams{1, tag});
        path.edges.push_back(make_edge(current, witness, target));
        current = target;
    }
    return path;
}

PathCertificate ot_ladder_reverse(int k_min, int k_max)
{
    const PathCertificate forward = ot_ladder(k_min, k_max);
    PathCertificate path{forward.end(), {}};
    CertifiedDiagram current = path.start;
    for (std::size_t i = forward.edges.size(); i-- > 0;) {
        const ComponentId c = std::get<AmbientConnectSumParams>(forward.edges[i].target.provenance.moves.back().params).tag;
        const SurgeryComponent& top = current.diagram.component(c);
        const ComponentId push = fresh_id(current.diagram, c + "_push");
        std::vector<std::pair<ComponentId, std::int64_t>> row{{c, top.tb}};
        const CertifiedDiagram witness = extend(current, AppendComponentParams{{push, top.tb, top.rot, -1}, row});
        const CertifiedDiagram target = extend(witness, CancelPairParams{c, push});
        path.edges.push_back(make_edge(current, witness, target));
        current = target;
    }
    return path;
}

PathCertificate verify_link_theorem(const SurgeryDiagram& base, const SurgeryComponent& edge,
                                    const std::vector<std::pair<ComponentId, std::int64_t>>& linking)
{
    return verify_link_theorem(certify_root(base), edge, linking);
}

PathCertificate verify_link_theorem(const CertifiedDiagram& base, const SurgeryComponent& edge,
                                    const std::vector<std::pair<ComponentId, std::int64_t>>& linking)
{
    SurgeryComponent k = edge;
    if (k.id.empty())
        k.id = fresh_id(base.diagram, "K");
    if (k.sign != 1 && k.sign != -1)
        fail_precondition("link_theorem.sign", "edge sign must be +1 or -1");
    const CertifiedDiagram neighbor = extend(base, AppendComponentParams{k, linking});
    PathCertificate path{neighbor, {}};
    CertifiedDiagram current = neighbor;

    if (k.sign == -1) {
        // L(-1) u U_+(+1) = L_+(+1)
        const ComponentId u = fresh_id(current.diagram, k.id + "_u");
        const CertifiedDiagram witness = extend(current, AddMeridianParams{k.id, -2, 1, 1, u});
        const CertifiedDiagram target = extend(witness, Lemma42Params{k.id, u});
        path.edges.push_back(make_edge(current, witness, target));
        current = target;
    }
    const ComponentId m = fresh_id(current.diagram, k.id + "_m");
    const CertifiedDiagram witness = extend(current, AddMeridianParams{k.id, -1, 0, 1, m});
    const CertifiedDiagram target =
        extend(base, AmbientConnectSumParams{1, fresh_id(witness.diagram, standard_tag(1))});
    path.edges.push_back(make_edge(current, witness, target));
    return path;
}

PathCertificate verify_detour(const PathCertificate& path, const std::vector<VertexKey>& forbidden, std::int64_t p)
{
    if (p < 2)
        fail_precondition("detour.p", "p must be at least 2");
    const std::vector<VertexKey> keys = path.vertex_keys();
    if (contains_key(forbidden, keys.front()) || contains_key(forbidden, keys.back()))
        fail_precondition("detour.endpoint_forbidden", "an endpoint of the path is forbidden");

    std::set<ComponentId> used = path_ids(path);
    const ComponentId u = fresh_in(used, "U" + std::to_string(p));
    used.insert(u);
    const ComponentId mu = fresh_in(used, u + "_m");
    const DetourInsertParams insert{p, u, detour_default_rot(p)};

    PathCertificate out{path.start, {}};
    CertifiedDiagram current = extend(path.start, insert);
    out.edges.push_back(make_edge(path.start, current, current));
    for (const auto& e : path.edges) {
        const CertifiedDiagram witness = extend(current, e.added());
        const CertifiedDiagram target = extend(e.target, insert);
        out.edges.push_back(make_edge(current, witness, target));
        current = target;
    }
    const CertifiedDiagram closed = extend(current, DetourCloseParams{u, mu});
    out.edges.push_back(make_edge(current, closed, closed));

    const std::vector<VertexKey> new_keys = out.vertex_keys();
    for (std::size_t i = 1; i + 1 < new_keys.size(); ++i)
        if (contains_key(forbidden, new_keys[i]))
            throw Error(ErrorCategory::precondition, "detour.collision",
                        "detour vertex " + new_keys[i].str() + " is forbidden; increase p");
    if (!(new_keys.back() == keys.back()))
        throw Error(ErrorCategory::invariant_violation, "detour.endpoint",
                    "closed detour ends at " + new_keys.back().str() + " instead of " + keys.back().str());
    return out;
}

PathCertificate verify_ot_distance_bound(const PathCertificate& path)
{
    const std::vector<VertexKey> keys = path.vertex_keys();
    if (keys.front().family != Family::OT_S3 || keys.back().family != Family::OT_S3)
        fail_precondition("ot_distance.endpoints", "both endpoints must be OT_S3 vertices");

    std::set<ComponentId> used = path_ids(path);
    ComponentId tag = standard_tag(0);
    for (int k = 2; used.contains(tag + "_a") || used.contains(tag + "_b"); ++k)
        tag = standard_tag(0) + "." + std::to_string(k);
    const auto ids = standard_ids(0, tag);
    const SurgeryDiagram xi0 = standard_diagram(0, tag);
    const AmbientConnectSumParams insert{0, tag};

    PathCertificate out{path.start, {}};
    const CertifiedDiagram first = extend(path.start, AppendComponentParams{xi0.component(ids[0]), {}});
    out.edges.push_back(make_edge(path.start, first, first));
    const CertifiedDiagram second =
        extend(first, AppendComponentParams{xi0.component(ids[1]), {{ids[0], xi0.linking(ids[0], ids[1])}}});
    CertifiedDiagram current = extend(path.start, insert);
    out.edges.push_back(make_edge(first, second, current));
    for (const auto& e : path.edges) {
        const CertifiedDiagram witness = extend(current, e.added());
        const CertifiedDiagram target = extend(e.target, insert);
        out.edges.push_back(make_edge(current, witness, target));
        current = target;
    }

    const std::vector<VertexKey> new_keys = out.vertex_keys();
    for (std::size_t i = 1; i + 1 < new_keys.size(); ++i)
        if (!new_keys[i].ot_certificate)
            throw Error(ErrorCategory::invariant_violation, "ot_distance.interior",
                        "interior vertex " + new_keys[i].str() + " carries no overtwisted summand");
    if (!(new_keys.back() == keys.back()))
        throw Error(ErrorCategory::invariant_violation, "ot_distance.endpoint",
                    "path ends at " + new_keys.back().str() + " instead of " + keys.back().str());
    return out;
}

}  // namespace csurg
