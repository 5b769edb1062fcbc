#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parityrep/automaton.hpp"
#include "parityrep/catalog.hpp"

using namespace parityrep;

TEST_CASE("builder reproduces the transcribed fixtures bit-exactly") {
    for (const std::string name :
         {"binomial", "trinomial", "quadrinomial", "trinomial2", "quintinomial", "sextinomial",
          "septinomial", "rhombus"}) {
        const Preset p = preset(name);
        REQUIRE_FALSE(p.direct);
        const Automaton a = build(p.spec);
        CHECK_MESSAGE(a.m == static_cast<int>(p.w.size()), name);
        CHECK_MESSAGE(a.D0 == p.D0, name);
        CHECK_MESSAGE(a.D1 == p.D1, name);
        CHECK_MESSAGE(a.w == p.w, name);
        REQUIRE(a.states.size() == p.state_values.size());
        for (std::size_t i = 0; i < a.states.size(); ++i)
            CHECK_MESSAGE(a.states[i].value == p.state_values[i], name << " state " << i);
    }
}

TEST_CASE("builder seed state starts at the apex") {
    const Automaton a = build(preset("trinomial").spec);
    CHECK(a.states[0].depth == 0);
    CHECK(a.states[0].row_base == 0);
    CHECK(a.states[0].col_base == 0);
    CHECK(a.w[0] == 1);
}

TEST_CASE("the order-2 builder handles the Fibonacci recurrence") {
    // The two-row window construction terminates here too, one state wider
    // than the classical 2x2 matrices; both agree with the oracle.
    const Preset p = preset("stern");
    const Automaton built = build(p.spec);
    CHECK(built.m == 3);
    CHECK(built.D0 == std::vector<std::vector<std::uint64_t>>{{0, 0, 0}, {1, 1, 0}, {0, 1, 1}});
    CHECK(built.D1 == std::vector<std::vector<std::uint64_t>>{{1, 1, 0}, {0, 1, 1}, {0, 0, 0}});
    CHECK(built.w == std::vector<std::uint64_t>{1, 1, 0});
    CHECK(validate(built, p.spec, 4096).passed);

    const Automaton direct = preset_automaton(p);
    CHECK(direct.m == 2);
    for (std::uint64_t n = 0; n <= 4096; ++n) CHECK(evaluate(built, n) == evaluate(direct, n));
}

TEST_CASE("the pentanomial with a gap builds eight states") {
    const Preset p = preset("h4");
    const Automaton a = build(p.spec);
    CHECK(a.m == 8);
    CHECK(validate(a, p.spec, 4096).passed);
}

TEST_CASE("evaluate matches the oracle on a dense sweep") {
    for (const std::string& name : preset_names()) {
        const Preset p = preset(name);
        const Automaton a = preset_automaton(p);
        const ValidationReport rep = validate(a, p.spec, 2048);
        CHECK_MESSAGE(rep.passed, name << ": " << rep.describe());
        CHECK(rep.checked == 2049);
    }
}

TEST_CASE("evaluate handles the base cases") {
    const Automaton a = preset_automaton(preset("trinomial"));
    CHECK(evaluate(a, 0) == 1);
    CHECK(evaluate(a, 1) == 3);
    CHECK(evaluate(a, 7) == 11);
    const Automaton s = preset_automaton(preset("stern"));
    CHECK(evaluate(s, 0) == 1);
}

TEST_CASE("big-integer evaluation agrees with the fixed-width path") {
    const Automaton a = preset_automaton(preset("rhombus"));
    for (std::uint64_t n = 0; n <= 1000; ++n)
        CHECK(evaluate_big(a, mpz_class(static_cast<unsigned long>(n))) == evaluate(a, n));
    CHECK_THROWS_AS(evaluate_big(a, mpz_class(-1)), ContractViolation);
}

TEST_CASE("residue vectors are digit-matrix products applied to the seed") {
    const Automaton a = preset_automaton(preset("trinomial"));
    CHECK(residue_vector(a, "") == std::vector<std::uint64_t>{1, 0});
    CHECK(residue_vector(a, "1") == std::vector<std::uint64_t>{1, 1});
    CHECK(residue_vector(a, "01") == std::vector<std::uint64_t>{3, 0});
    CHECK(residue_vector(a, "11") == std::vector<std::uint64_t>{3, 1});
    CHECK_THROWS_AS(residue_vector(a, "102"), ContractViolation);
}

TEST_CASE("JSON round trip preserves the representation") {
    for (const std::string name : {"trinomial", "rhombus", "stern"}) {
        const Automaton a = preset_automaton(preset(name));
        const Automaton b = automaton_from_json(to_json(a));
        CHECK(b.order == a.order);
        CHECK(b.ell == a.ell);
        CHECK(b.m == a.m);
        CHECK(b.D0 == a.D0);
        CHECK(b.D1 == a.D1);
        CHECK(b.w == a.w);
        CHECK(b.zero_children == a.zero_children);
        REQUIRE(b.states.size() == a.states.size());
        for (std::size_t i = 0; i < a.states.size(); ++i) {
            CHECK(b.states[i].value == a.states[i].value);
            CHECK(b.states[i].depth == a.states[i].depth);
            CHECK(b.states[i].row_base == a.states[i].row_base);
            CHECK(b.states[i].col_base == a.states[i].col_base);
        }
        for (std::uint64_t n = 0; n <= 256; ++n) CHECK(evaluate(b, n) == evaluate(a, n));
    }
}

TEST_CASE("corrupted matrices fail validation with a located mismatch") {
    const Preset p = preset("trinomial");
    Automaton a = preset_automaton(p);
    a.D1[1][0] = 0;
    const ValidationReport rep = validate(a, p.spec, 64);
    CHECK_FALSE(rep.passed);
    CHECK(rep.first_mismatch > 0);
    CHECK(rep.expected != rep.actual);
    CHECK(rep.describe().find("mismatch") != std::string::npos);
}

TEST_CASE("state explosion surfaces the partial state set") {
    const RecurrenceSpec spec = preset("quadrinomial").spec;
    BuildLimits limits;
    limits.max_states = 2;
    try {
        build(spec, limits);
        FAIL("expected StateExplosionError");
    } catch (const StateExplosionError& e) {
        CHECK(e.partial_states.size() >= 2);
    }
    BuildLimits shallow;
    shallow.max_depth = 0;
    CHECK_THROWS_AS(build(spec, shallow), StateExplosionError);
}

TEST_CASE("zero-children bookkeeping survives serialization") {
    const Automaton a = preset_automaton(preset("trinomial"));
    REQUIRE(a.zero_children.size() == 2);
    CHECK(a.zero_children[0][0] == 1);
    CHECK(a.zero_children[0][1] == 0);
    CHECK(a.zero_children[1][0] == 0);
    const Automaton b = automaton_from_json(to_json(a));
    CHECK(b.zero_children == a.zero_children);
}

TEST_CASE("direct wrapping keeps the stated matrices") {
    const Automaton a = make_direct(1, 1, {{1}}, {{2}}, {1});
    CHECK(a.m == 1);
    CHECK(a.states.empty());
    CHECK(evaluate(a, 5) == 4);
}
