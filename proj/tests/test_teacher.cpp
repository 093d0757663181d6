#include <catch2/catch_amalgamated.hpp>

#include "parlearn/errors.hpp"
#include "parlearn/teacher.hpp"
#include "fixtures.hpp"

using namespace parlearn;
using namespace parlearn::testing;

TEST_CASE("membership answers simulate the hidden system") {
    RepairPair sys;
    Teacher teacher(sys.composite());
    CHECK(teacher.membership(Trace{sys.c, sys.c}) == Verdict::positive);
    CHECK(teacher.membership(kEpsilon) == Verdict::positive);
    CHECK(teacher.membership(Trace{sys.c, sys.c, sys.c}) == Verdict::negative);
    CHECK(teacher.stats().membership_queries == 3);
    CHECK_THROWS_AS(teacher.membership(Trace{Symbol{77}}), ContractViolation);
    CHECK(teacher.stats().membership_queries == 3);
}

TEST_CASE("equivalence returns the shortest lexicographic counter-example") {
    RepairPair sys;
    Lts target = sys.composite();
    Teacher teacher(target);

    SECTION("self equivalence") {
        CHECK(teacher.equivalence(target).yes);
        CHECK(teacher.stats().equivalence_queries == 1);
    }

    SECTION("an underapproximating composite gets its first missing c-trace") {
        Lts h1(2, sys.first.alphabet(), 0);
        h1.add_transition(0, sys.c, 1);
        h1.add_transition(1, sys.a, 0);
        Lts h2(1, sys.second.alphabet(), 0);
        h2.add_transition(0, sys.b, 0);
        h2.add_transition(0, sys.c, 0);
        Teacher::Answer answer = teacher.equivalence(parallel_compose(std::vector<Lts>{h1, h2}));
        REQUIRE_FALSE(answer.yes);
        CHECK(answer.counterexample == Trace{sys.c, sys.c});
        CHECK(answer.verdict == Verdict::positive);
    }

    SECTION("a late overapproximation is corrected by the repairing trace") {
        Lts h2(4, sys.second.alphabet(), 0);
        h2.add_transition(0, sys.c, 1);
        h2.add_transition(1, sys.c, 2);
        h2.add_transition(0, sys.b, 3);
        h2.add_transition(1, sys.b, 3);
        h2.add_transition(2, sys.b, 3);
        Teacher::Answer answer = teacher.equivalence(parallel_compose(std::vector<Lts>{sys.first, h2}));
        REQUIRE_FALSE(answer.yes);
        CHECK(answer.counterexample == Trace{sys.c, sys.a, sys.c, sys.c});
        CHECK(answer.verdict == Verdict::positive);
    }
}

TEST_CASE("counter-examples are minimal and self-consistent") {
    SymbolTable table;
    Alphabet sigma(3);
    for (const char* n : {"x", "y", "z"}) sigma.add(table.intern(n));
    Rng rng(911);
    int checked = 0;
    for (int round = 0; round < 80; ++round) {
        Lts sul = random_lts(rng, sigma, 6);
        Lts hyp = random_lts(rng, sigma, 6);
        Teacher teacher(sul);
        Teacher::Answer answer = teacher.equivalence(hyp);
        if (answer.yes) continue;
        ++checked;
        CHECK(teacher.membership(answer.counterexample) == answer.verdict);
        for (const Trace& t : all_traces(sigma.symbols(), 6)) {
            if (t.size() >= answer.counterexample.size()) break;
            CHECK(sul.accepts(t) == hyp.accepts(t));
        }
    }
    CHECK(checked > 40);
}
