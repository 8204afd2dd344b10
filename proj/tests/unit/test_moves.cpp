#include "doctest.h"

#include "csurg/error.hpp"
#include "csurg/generators.hpp"
#include "csurg/invariants.hpp"
#include "csurg/moves.hpp"
#include "csurg/standard_diagrams.hpp"

using namespace csurg;

namespace {

ErrorCategory category_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.category();
    }
    FAIL("no error thrown");
    return ErrorCategory::io;
}

}  // namespace

TEST_CASE("stabilization")
{
    const SurgeryDiagram u({{"u", -1, 0, 1}}, {});
    const SurgeryDiagram pos = stabilize_component(u, "u", Direction::positive);
    CHECK(pos.component("u") == SurgeryComponent{"u", -2, 1, 1});
    const SurgeryDiagram neg = stabilize_component(u, "u", Direction::negative);
    CHECK(neg.component("u") == SurgeryComponent{"u", -2, -1, 1});
    const SurgeryDiagram both = stabilize_component(pos, "u", Direction::negative);
    CHECK(both.component("u") == SurgeryComponent{"u", -3, 0, 1});
}

TEST_CASE("ambient connected sum")
{
    const SurgeryDiagram one = ambient_connect_sum({}, 1);
    CHECK(one == standard_diagram(1));
    CHECK(d3(one).value == 1);

    const SurgeryDiagram three = ambient_connect_sum(one, -1);
    CHECK(three.size() == 3);
    CHECK(d3(three).value == 0);

    const SurgeryDiagram lens({{"u", -4, 1, -1}}, {});
    const SurgeryDiagram with0 = ambient_connect_sum(lens, 0);
    CHECK(same_isomorphism_type(homology(with0), homology(lens)));
    CHECK(d3(with0).value == d3(lens).value);

    // repeated sums get distinct tags
    const SurgeryDiagram twice = ambient_connect_sum(ambient_connect_sum({}, -1), -1);
    CHECK(twice.size() == 4);
    CHECK(validate(twice).empty());
}

TEST_CASE("cancel pair")
{
    const SurgeryDiagram pair({{"a", -1, 0, 1}, {"b", -1, 0, -1}}, {{"a", "b", -1}});
    CHECK(cancel_pair(pair, "a", "b").empty());

    const SurgeryDiagram bigger({{"a", -1, 0, 1}, {"b", -1, 0, -1}, {"c", -2, 1, 1}}, {{"a", "b", -1}});
    CHECK(cancel_pair(bigger, "a", "b") == SurgeryDiagram({{"c", -2, 1, 1}}, {}));

    const SurgeryDiagram wrong({{"a", -1, 0, 1}, {"b", -2, 1, -1}}, {{"a", "b", -1}});
    CHECK(category_of([&] { cancel_pair(wrong, "a", "b"); }) == ErrorCategory::precondition);
}

TEST_CASE("handle slide")
{
    const SurgeryDiagram d({{"i", -2, 1, 1}, {"j", -1, 0, 1}}, {});
    const SurgeryDiagram slid = handle_slide(d, "i", "j");
    CHECK(extended_matrix(slid).q(0, 0) == extended_matrix(d).q(0, 0));
    CHECK(slid.component("i").rot == 1);
    CHECK(check_move_invariance(d, slid, HandleSlideParams{"i", "j"}).ok());
}

TEST_CASE("add meridian")
{
    const SurgeryDiagram plus({{"a", -2, 1, 1}}, {});
    const SurgeryDiagram avdek = add_meridian(plus, "a", -1, 0, 1, "m");
    CHECK(avdek.size() == 2);
    CHECK(avdek.linking("a", "m") == 1);
    CHECK(avdek.component("m") == SurgeryComponent{"m", -1, 0, 1});

    const SurgeryDiagram minus({{"a", -1, 0, -1}}, {});
    const SurgeryDiagram lhs = add_meridian(minus, "a", -2, 1, 1, "m");
    CHECK(lhs.component("m") == SurgeryComponent{"m", -2, 1, 1});

    CHECK(category_of([&] { add_meridian(plus, "nope", -1, 0, 1); }) == ErrorCategory::precondition);
}

TEST_CASE("lemma 4.2 rewrite")
{
    const SurgeryDiagram minus({{"i", -1, 0, -1}}, {});
    const SurgeryDiagram lhs = add_meridian(minus, "i", -2, 1, 1, "m");
    const SurgeryDiagram out = lemma42_move(lhs, "i", "m");
    REQUIRE(out.size() == 1);
    CHECK(out.components()[0].tb == -2);
    CHECK(out.components()[0].rot == 1);
    CHECK(out.components()[0].sign == 1);

    const SurgeryDiagram mirrored = lemma42_move(add_meridian(minus, "i", -2, -1, 1, "m"), "i", "m");
    CHECK(mirrored.components()[0].rot == -1);

    const SurgeryDiagram wrong = add_meridian(SurgeryDiagram({{"i", -1, 0, 1}}, {}), "i", -2, 1, 1, "m");
    CHECK(category_of([&] { lemma42_move(wrong, "i", "m"); }) == ErrorCategory::precondition);
}

TEST_CASE("avdek merge")
{
    const SurgeryDiagram conf = add_meridian(SurgeryDiagram({{"i", -2, 1, 1}}, {}), "i", -1, 0, 1, "m");
    const SurgeryDiagram out = avdek_merge(conf, "i", "m");
    CHECK(out.size() == 1);
    CHECK(d3(out).value == 1);
    CHECK(d3(conf).value == 1);

    const SurgeryDiagram d0({{"z", -4, 1, -1}}, {});
    const SurgeryDiagram local = avdek_merge(disjoint_union(d0, conf), "i", "m");
    CHECK(local.contains("z"));
    CHECK(local.size() == 2);

    const SurgeryDiagram linked({{"i", -2, 1, 1}, {"m", -1, 0, 1}, {"t", -1, 0, -1}}, {{"i", "m", 1}, {"i", "t", 1}});
    CHECK(category_of([&] { avdek_merge(linked, "i", "m"); }) == ErrorCategory::precondition);
}

TEST_CASE("detours")
{
    const SurgeryDiagram lens = detour_insert({}, 5, "u");
    CHECK(homology(lens).order() == 5);
    const SurgeryDiagram closed = detour_close(lens, "u");
    const AbelianGroup h = homology(closed);
    CHECK(h.is_trivial());
    CHECK(d3(closed).value == 0);
    CHECK(euler_class(closed).is_zero());

    const SurgeryDiagram linked({{"u", -4, 1, -1}, {"v", -2, 1, 1}}, {{"u", "v", 1}});
    CHECK(category_of([&] { detour_close(linked, "u"); }) == ErrorCategory::precondition);
}

TEST_CASE("preserving moves keep every invariant on random instances")
{
    gen::Rng rng(5);
    for (auto make : {gen::cancel_pair_instance, gen::handle_slide_instance, gen::lemma42_instance,
                      gen::avdek_instance}) {
        for (int i = 0; i < 100; ++i) {
            const gen::MoveInstance inst = make(rng);
            const AppliedMove applied = apply_move(inst.diagram, inst.move);
            CHECK(check_move_invariance(inst.diagram, applied.diagram, applied.record.params).ok());
        }
    }
}

TEST_CASE("move scripts and audit logs round trip")
{
    const std::vector<MoveParams> script = {
        AmbientConnectSumParams{0, ""},
        StabilizeParams{"xi0_b", Direction::negative},
        AddMeridianParams{"xi0_a", -1, 0, -1, ""},
        DetourInsertParams{3, "", std::nullopt},
        AppendComponentParams{{"w", -2, 1, 1}, {{"xi0_b", 2}}},
    };
    CHECK(parse_move_script(serialize_move_script(script)) == script);

    SurgeryDiagram d;
    std::vector<MoveRecord> log;
    for (const MoveParams& m : script) {
        AppliedMove a = apply_move(d, m);
        log.push_back(a.record);
        d = a.diagram;
    }
    const std::vector<MoveRecord> parsed = parse_move_log(serialize_move_log(log));
    CHECK(parsed == log);
    CHECK(replay({}, parsed) == d);

    std::vector<MoveRecord> tampered = log;
    tampered[1].after_hash[0] = tampered[1].after_hash[0] == '0' ? '1' : '0';
    CHECK(category_of([&] { replay({}, tampered); }) == ErrorCategory::invariant_violation);
}

TEST_CASE("unknown move kinds are parse errors")
{
    CHECK_THROWS_AS(parse_move_script("- {kind: twist, params: {}}\n"), ParseError);
    CHECK_THROWS_AS(parse_move_script("- {kind: cancel_pair, params: {i: a}}\n"), ParseError);
}
