#include "doctest.h"

#include "csurg/error.hpp"
#include "csurg/explorer.hpp"
#include "csurg/invariants.hpp"
#include "csurg/standard_diagrams.hpp"

#include <filesystem>
#include <set>

using namespace csurg;

namespace {

Rational end_d3(const PathCertificate& p) { return *p.end_key().d3; }

}  // namespace

TEST_CASE("classification examples")
{
    const VertexKey tight = classify(SurgeryDiagram{});
    CHECK(tight.family == Family::TIGHT_S3);
    CHECK(*tight.d3 == 0);

    const CertifiedDiagram xi1 = extend(certify_root({}), AmbientConnectSumParams{1, ""});
    const VertexKey ot = classify(xi1);
    CHECK(ot.family == Family::OT_S3);
    CHECK(*ot.d3 == 1);
    CHECK(ot.ot_certificate.has_value());

    const VertexKey lens = classify(extend(certify_root({}), DetourInsertParams{5, "", std::nullopt}));
    CHECK(lens.family == Family::RHS_GENERIC);
    CHECK(lens.torsion == IntVector{5});

    const VertexKey undefined = classify(SurgeryDiagram({{"u", -1, 0, 1}}, {}));
    CHECK(undefined.family == Family::RHS_GENERIC);
    CHECK_FALSE(undefined.d3.has_value());
    CHECK(undefined.d3_text() == "undefined");
}

TEST_CASE("closed detour certifies the tight sphere")
{
    CertifiedDiagram c = extend(certify_root({}), DetourInsertParams{4, "u", std::nullopt});
    c = extend(c, DetourCloseParams{"u", ""});
    CHECK(classify(c).family == Family::TIGHT_S3);
    verify_provenance(c);
}

TEST_CASE("ladders")
{
    const PathCertificate up = ot_ladder(0, 3);
    CHECK(up.length() == 3);
    CHECK(check_path(up).empty());
    CHECK(end_d3(up) == 3);

    CHECK(ot_ladder(2, 2).length() == 0);

    const PathCertificate wide = ot_ladder(-2, 2);
    REQUIRE(wide.length() == 4);
    const std::vector<VertexKey> keys = wide.vertex_keys();
    for (std::size_t i = 0; i < keys.size(); ++i) {
        CHECK(keys[i].family == Family::OT_S3);
        CHECK(*keys[i].d3 == Rational(static_cast<long>(i) - 2));
    }

    const PathCertificate down = ot_ladder_reverse(0, 2);
    CHECK(down.length() == 2);
    CHECK(check_path(down).empty());
    for (const EdgeCertificate& e : down.edges)
        CHECK(e.sign() == -1);
    CHECK(end_d3(down) == 0);
}

TEST_CASE("link theorem examples")
{
    const PathCertificate one = verify_link_theorem(SurgeryDiagram{}, {"e", -2, 1, 1}, {});
    CHECK(one.length() == 1);
    CHECK(one.end_key() == classify(xi_diagram(1)));

    const PathCertificate two = verify_link_theorem(SurgeryDiagram{}, {"e", -1, 0, -1}, {});
    CHECK(two.length() == 2);
    CHECK(check_path(two).empty());
    CHECK(same_invariants(two.end_key(), classify(xi_diagram(1))));

    const PathCertificate more = verify_link_theorem(xi_diagram(1), {"e", -2, -1, 1}, {});
    CHECK(more.length() == 1);
    CHECK(end_d3(more) == 2);
}

TEST_CASE("detour examples")
{
    const PathCertificate ladder = ot_ladder(0, 2);
    const VertexKey xi1 = classify(xi_diagram(1));
    const PathCertificate detour = verify_detour(ladder, {xi1}, 2);
    CHECK(detour.length() == ladder.length() + 2);
    CHECK(detour.vertex_keys().size() == 5);
    CHECK(check_path(detour).empty());
    CHECK(detour.start_key() == ladder.start_key());
    CHECK(detour.end_key() == ladder.end_key());
    for (const VertexKey& k : detour.vertex_keys())
        CHECK_FALSE(k == xi1);

    CHECK(verify_detour(ladder, {}, 3).length() == 4);

    try {
        verify_detour(ladder, {ladder.start_key()}, 2);
        FAIL("expected a precondition error");
    } catch (const Error& e) {
        CHECK(e.category() == ErrorCategory::precondition);
    }
}

TEST_CASE("overtwisted distance examples")
{
    const PathCertificate p = verify_ot_distance_bound(ot_ladder(1, 3));
    CHECK(p.length() == 4);
    CHECK(check_path(p).empty());
    for (const VertexKey& k : p.vertex_keys())
        CHECK(k.ot_certificate.has_value());
    CHECK(p.start_key().family == Family::OT_S3);
    CHECK(p.end_key().family == Family::OT_S3);

    PathCertificate at_xi1;
    at_xi1.start = xi_diagram(1);
    const PathCertificate loop = verify_ot_distance_bound(at_xi1);
    CHECK(loop.length() == 2);
    CHECK(loop.end_key() == loop.start_key());

    PathCertificate tight;
    tight.start = certify_root({});
    CHECK_THROWS_AS(verify_ot_distance_bound(tight), Error);
}

TEST_CASE("subgraph examples")
{
    const std::vector<CertifiedDiagram> seeds = {certify_root({})};
    const std::vector<SurgeryComponent> gens = {{"", -2, 1, 1}, {"", -2, -1, 1}};
    SubgraphOptions opt;
    opt.depth = 3;
    const Subgraph g = build_subgraph(seeds, gens, opt);
    CHECK_FALSE(g.truncated);
    std::set<Rational> d3s;
    for (const SubgraphVertex& v : g.vertices)
        d3s.insert(*v.key.d3);
    CHECK(d3s == std::set<Rational>{0, 1, 2, 3});
    CHECK(g.vertices.size() == 4);
    CHECK(g.edges.size() > 3);

    for (const SubgraphEdge& e : g.edges) {
        CHECK(check_edge(e.certificate).empty());
        CHECK(*g.vertices[e.to].key.d3 - *g.vertices[e.from].key.d3 == 1);
    }

    const Subgraph lens = build_subgraph(seeds, {{"", -4, 1, -1}}, {1, 100, 0});
    REQUIRE(lens.vertices.size() == 2);
    CHECK(lens.vertices[1].key.family == Family::RHS_GENERIC);
    CHECK(lens.vertices[1].key.torsion == IntVector{5});

    const Subgraph none = build_subgraph(seeds, gens, {0, 100, 0});
    CHECK(none.vertices.size() == 1);
    CHECK(none.edges.empty());

    const Subgraph small = build_subgraph(seeds, unknot_generators(3), {4, 5, 0});
    CHECK(small.truncated);
    CHECK(small.vertices.size() <= 5);
}

TEST_CASE("subgraph is independent of the thread count")
{
    const std::vector<CertifiedDiagram> seeds = {certify_root({})};
    const Subgraph a = build_subgraph(seeds, unknot_generators(2), {2, 1000, 1});
    const Subgraph b = build_subgraph(seeds, unknot_generators(2), {2, 1000, 4});
    CHECK(to_dot(a) == to_dot(b));
}

TEST_CASE("path bundles round trip")
{
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "csurg_unit_bundle";
    std::filesystem::remove_all(dir);
    const PathCertificate p = verify_detour(ot_ladder(0, 1), {}, 2);
    write_path_bundle(dir, p);
    const PathCertificate back = read_path_bundle(dir);
    CHECK(back.length() == p.length());
    CHECK(back.vertex_keys() == p.vertex_keys());
    std::filesystem::remove_all(dir);
}
