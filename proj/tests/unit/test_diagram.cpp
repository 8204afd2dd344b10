#include "doctest.h"

#include "csurg/diagram.hpp"
#include "csurg/diagram_format.hpp"
#include "csurg/digest.hpp"
#include "csurg/error.hpp"
#include "csurg/generators.hpp"

using namespace csurg;

namespace {

bool has_kind(const std::vector<Violation>& vs, Violation::Kind k)
{
    for (const Violation& v : vs)
        if (v.kind == k)
            return true;
    return false;
}

}  // namespace

TEST_CASE("validate accepts the empty diagram and the standard unknot")
{
    CHECK(validate(SurgeryDiagram{}).empty());
    CHECK(validate(SurgeryDiagram({{"u", -1, 0, 1}}, {})).empty());
}

TEST_CASE("validate reports parity, coefficient and linking problems")
{
    const auto parity = validate(SurgeryDiagram({{"u", -1, 1, 1}}, {}));
    REQUIRE(parity.size() == 1);
    CHECK(parity[0].kind == Violation::Kind::parity);
    CHECK(parity[0].subject == "u");

    CHECK(has_kind(validate(SurgeryDiagram({{"u", -1, 0, 2}}, {})), Violation::Kind::coefficient));
    CHECK(has_kind(validate(SurgeryDiagram({{"u", -1, 0, 1}}, {{"u", "v", 1}})), Violation::Kind::unknown_linking_id));
    CHECK(has_kind(validate(SurgeryDiagram({{"u", -1, 0, 1}, {"u", -2, 1, 1}}, {})), Violation::Kind::duplicate_id));
    CHECK(has_kind(validate(SurgeryDiagram::from_table({{"a", -1, 0, 1}, {"b", -1, 0, 1}}, {{0, 1}, {2, 0}})),
                   Violation::Kind::asymmetric_linking));
    CHECK(has_kind(validate(SurgeryDiagram::from_table({{"a", -1, 0, 1}}, {{0, 1}})), Violation::Kind::linking_shape));
    CHECK_THROWS_AS(require_valid(SurgeryDiagram({{"u", -1, 1, 1}}, {})), Error);
}

TEST_CASE("extended linking matrix")
{
    CHECK(extended_matrix(SurgeryDiagram{}).q.rows() == 0);
    const auto one = extended_matrix(SurgeryDiagram({{"u", -2, 1, 1}}, {}));
    CHECK(one.q(0, 0) == -1);
    const auto lens = extended_matrix(SurgeryDiagram({{"u", -4, 1, -1}}, {}));
    CHECK(lens.q(0, 0) == -5);

    // rows follow lexicographic id order, not input order
    const SurgeryDiagram d({{"b", -1, 0, 1}, {"a", -3, 0, -1}}, {{"a", "b", 2}});
    const auto m = extended_matrix(d);
    CHECK(m.ids == std::vector<ComponentId>{"a", "b"});
    CHECK(m.q(0, 0) == -4);
    CHECK(m.q(1, 1) == 0);
    CHECK(m.q(0, 1) == 2);
    CHECK(m.q(1, 0) == 2);
}

TEST_CASE("disjoint union")
{
    CHECK(disjoint_union({}, {}).empty());
    const SurgeryDiagram xi({{"x", -2, 1, 1}}, {});
    const SurgeryDiagram two = disjoint_union(xi, xi);
    REQUIRE(two.size() == 2);
    const auto m = extended_matrix(two);
    CHECK(m.q(0, 0) == -1);
    CHECK(m.q(1, 1) == -1);
    CHECK(m.q(0, 1) == 0);
    CHECK(disjoint_union(xi, {}) == xi);
    CHECK(disjoint_union({}, xi) == xi);
}

TEST_CASE("parse and serialize round trip")
{
    const std::string text = "components:\n"
                             "  - {id: b, tb: -2, rot: 1, sign: +1}\n"
                             "  - {id: a, tb: -4, rot: 1, sign: -1}\n"
                             "linking:\n"
                             "  - {a: a, b: b, lk: 2}\n";
    const SurgeryDiagram d = parse_diagram(text);
    CHECK(d.size() == 2);
    CHECK(d.linking("a", "b") == 2);
    const std::string canonical = serialize(d);
    CHECK(parse_diagram(canonical) == d);
    CHECK(serialize(parse_diagram(canonical)) == canonical);
    CHECK(parse_diagram(serialize(SurgeryDiagram{})).empty());
}

TEST_CASE("round trip on random diagrams preserves value and hash")
{
    gen::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const SurgeryDiagram d = gen::random_diagram(rng, {});
        const SurgeryDiagram back = parse_diagram(serialize(d));
        REQUIRE(back == d);
        CHECK(content_hash(back) == content_hash(d));
    }
}

TEST_CASE("parse errors carry positions")
{
    try {
        parse_diagram("components:\n  - {id: a, tb: x, rot: 0, sign: +1}\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.category() == ErrorCategory::parse);
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }
    CHECK_THROWS_AS(parse_diagram("components:\n  - {id: a, tb: -1, rot: 0, sign: 1}\n"), ParseError);
    CHECK_THROWS_AS(parse_diagram("components: [\n"), ParseError);
}

TEST_CASE("content hash ignores component order")
{
    const SurgeryDiagram a({{"a", -1, 0, 1}, {"b", -2, 1, -1}}, {{"a", "b", 1}});
    const SurgeryDiagram b({{"b", -2, 1, -1}, {"a", -1, 0, 1}}, {{"b", "a", 1}});
    CHECK(a == b);
    CHECK(content_hash(a) == content_hash(b));
    CHECK(content_hash(a).size() == 64);
}
