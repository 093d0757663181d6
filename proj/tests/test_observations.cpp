#include <catch2/catch_amalgamated.hpp>

#include "parlearn/errors.hpp"
#include "fixtures.hpp"

using namespace parlearn;
using namespace parlearn::testing;

TEST_CASE("recording is idempotent and never flips") {
    SyncPair sys;
    Observations obs(sys.global());
    Trace a{sys.a};
    obs.record(a, Verdict::positive);
    CHECK(obs.lookup(a) == Verdict::positive);
    CHECK(obs.size() == 1);
    obs.record(a, Verdict::positive);
    CHECK(obs.size() == 1);
    CHECK_THROWS_AS(obs.record(a, Verdict::negative), ConsistencyError);
    CHECK_THROWS_AS(obs.record(Trace{Symbol{99}}, Verdict::positive), ContractViolation);
}

TEST_CASE("localization projects the domain and lets positives dominate") {
    SyncPair sys;
    Observations obs(sys.global());
    obs.record(Trace{sys.a}, Verdict::positive);
    obs.record(Trace{sys.a, sys.a}, Verdict::negative);
    obs.record(Trace{sys.a, sys.b, sys.d}, Verdict::positive);

    const LocalView& left = obs.localize(sys.first.alphabet());
    REQUIRE(left.verdicts.size() == 3);
    CHECK(left.verdicts.at(Trace{sys.a}) == Verdict::positive);
    CHECK(left.verdicts.at(Trace{sys.a, sys.a}) == Verdict::negative);
    CHECK(left.verdicts.at(Trace{sys.a, sys.b}) == Verdict::positive);

    const LocalView& right = obs.localize(sys.second.alphabet());
    REQUIRE(right.verdicts.size() == 2);
    CHECK(right.verdicts.at(kEpsilon) == Verdict::positive);
    CHECK(right.verdicts.at(Trace{sys.b, sys.d}) == Verdict::positive);

    Observations empty(sys.global());
    CHECK(empty.localize(sys.first.alphabet()).verdicts.empty());
}

TEST_CASE("localization of positive entries is positive on every projection") {
    SymbolTable table;
    Alphabet sigma(4);
    for (const char* n : {"a", "b", "c", "d"}) sigma.add(table.intern(n));
    Rng rng(5);
    for (int round = 0; round < 50; ++round) {
        Observations obs(sigma);
        for (int k = 0; k < 8; ++k) {
            Trace t = random_trace(rng, sigma, 4);
            if (!obs.lookup(t)) obs.record(t, rng.below(2) ? Verdict::positive : Verdict::negative);
        }
        Alphabet part(4);
        for (Symbol s : sigma.symbols())
            if (rng.below(2)) part.add(s);
        const LocalView& view = obs.localize(part);
        for (const auto& [t, v] : obs.entries()) {
            if (v != Verdict::positive) continue;
            CHECK(view.verdicts.at(project(t, part)) == Verdict::positive);
        }
    }
}

TEST_CASE("localization is monotone under new entries") {
    SymbolTable table;
    Alphabet sigma(3);
    for (const char* n : {"a", "b", "c"}) sigma.add(table.intern(n));
    Rng rng(17);
    for (int round = 0; round < 30; ++round) {
        Observations obs(sigma);
        Alphabet part(3);
        for (Symbol s : sigma.symbols())
            if (rng.below(2)) part.add(s);
        std::unordered_map<Trace, Verdict, TraceHash> before;
        for (int k = 0; k < 10; ++k) {
            Trace t = random_trace(rng, sigma, 4);
            if (obs.lookup(t)) continue;
            obs.record(t, rng.below(2) ? Verdict::positive : Verdict::negative);
            const LocalView& view = obs.localize(part);
            for (const auto& [local, v] : before) {
                REQUIRE(view.verdicts.count(local));
                if (v == Verdict::positive) CHECK(view.verdicts.at(local) == Verdict::positive);
            }
            before = view.verdicts;
        }
    }
}

TEST_CASE("agreement witnesses") {
    SyncPair sys;
    Lts composite = sys.composite();
    Observations obs(sys.global());
    obs.record(Trace{sys.b}, Verdict::negative);
    CHECK(!obs.disagreement_witness(composite));

    Observations empty(sys.global());
    CHECK(!empty.disagreement_witness(composite));

    Observations wrong(sys.global());
    wrong.record(Trace{sys.b}, Verdict::positive);
    auto witness = wrong.disagreement_witness(composite);
    REQUIRE(witness);
    CHECK(*witness == Trace{sys.b});
}

TEST_CASE("stores built from acceptance answers agree with the language") {
    SymbolTable table;
    Alphabet sigma(3);
    for (const char* n : {"a", "b", "c"}) sigma.add(table.intern(n));
    Rng rng(29);
    for (int round = 0; round < 30; ++round) {
        Lts lts = random_lts(rng, sigma, 4);
        Observations obs(sigma);
        for (int k = 0; k < 20; ++k) {
            Trace t = random_trace(rng, sigma, 5);
            if (obs.lookup(t)) continue;
            obs.record(t, lts.accepts(t) ? Verdict::positive : Verdict::negative);
        }
        CHECK(!obs.disagreement_witness(lts));
    }
}
