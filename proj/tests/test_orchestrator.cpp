#include <catch2/catch_amalgamated.hpp>

#include "parlearn/monolithic.hpp"
#include "parlearn/orchestrator.hpp"
#include "fixtures.hpp"

using namespace parlearn;
using namespace parlearn::testing;

namespace {

bool preorder_equal_to_any(const Distribution& got, const std::vector<Distribution>& allowed) {
    for (const Distribution& d : allowed)
        if (preorder_equivalent(got, d)) return true;
    return false;
}

}  // namespace

TEST_CASE("the synchronizing pair is learned with its decomposition discovered") {
    SyncPair sys;
    Lts sul = sys.composite();
    Teacher teacher(sul);
    RunConfig config;
    RunResult result = run_learning(teacher, config);

    REQUIRE(result.completed);
    CHECK(result.refinements >= 1);
    Lts composed = parallel_compose(result.components);
    CHECK(language_equivalent(composed, teacher.sul_for_verification()).equal);

    auto set = [&](std::initializer_list<Symbol> symbols) {
        Alphabet out(4);
        for (Symbol s : symbols) out.add(s);
        return out;
    };
    Alphabet sigma = sys.global();
    std::vector<Distribution> allowed{
        Distribution(sigma, {set({sys.a, sys.b, sys.c}), set({sys.b, sys.d})}),
        Distribution(sigma, {set({sys.a, sys.b, sys.c}), set({sys.a, sys.d}), set({sys.b, sys.d})}),
        Distribution(sigma, {set({sys.a, sys.b, sys.c}), set({sys.a, sys.b, sys.d})}),
    };
    INFO(format_distribution(result.distribution, sys.table));
    CHECK(preorder_equal_to_any(result.distribution, allowed));
}

TEST_CASE("a given decomposition is learned without classification") {
    SyncPair sys;
    Lts sul = sys.composite();
    Teacher teacher(sul);
    RunConfig config;
    config.given_distribution =
        Distribution(sys.global(), {sys.first.alphabet(), sys.second.alphabet()});
    RunResult result = run_learning(teacher, config);

    REQUIRE(result.completed);
    CHECK(result.refinements == 0);
    CHECK(result.components.size() == 2);
    Lts composed = parallel_compose(result.components);
    CHECK(language_equivalent(composed, teacher.sul_for_verification()).equal);
}

TEST_CASE("the backtracking pair converges to the component languages") {
    RepairPair sys;
    Lts sul = sys.composite();
    Teacher teacher(sul);
    EventRecorder recorder;
    RunConfig config;
    config.given_distribution =
        Distribution(sys.global(), {sys.first.alphabet(), sys.second.alphabet()});
    config.sink = &recorder;
    RunResult result = run_learning(teacher, config);

    REQUIRE(result.completed);
    Lts composed = parallel_compose(result.components);
    CHECK(language_equivalent(composed, teacher.sul_for_verification()).equal);
    for (size_t i = 0; i < result.components.size(); ++i) {
        const Lts& truth =
            result.distribution.parts()[i] == sys.first.alphabet() ? sys.first : sys.second;
        CHECK(language_equivalent(result.components[i], truth).equal);
    }

    // the run exercised the spurious-counter-example machinery
    bool snapshotted = false, restored = false;
    for (const Event& e : recorder.events()) {
        snapshotted |= e.kind == EventKind::snapshot_stored;
        restored |= e.kind == EventKind::table_restored;
    }
    CHECK(snapshotted);
    CHECK(restored);
}

TEST_CASE("a single-symbol system needs one learner and no refinement") {
    SymbolTable table;
    Symbol a = table.intern("a");
    Alphabet sigma(1, {a});
    Lts sul(2, sigma, 0);
    sul.add_transition(0, a, 1);
    Teacher teacher(sul);
    RunResult result = run_learning(teacher, {});
    REQUIRE(result.completed);
    CHECK(result.refinements == 0);
    CHECK(result.components.size() == 1);
    CHECK(language_equivalent(result.components[0], sul).equal);
}

TEST_CASE("independent chains keep the singleton decomposition") {
    SymbolTable table;
    Symbol a = table.intern("a"), b = table.intern("b");
    Alphabet sigma(2, {a, b});
    Lts left(2, Alphabet(2, {a}), 0);
    left.add_transition(0, a, 1);
    Lts right(2, Alphabet(2, {b}), 0);
    right.add_transition(0, b, 1);
    Lts sul = parallel_compose(std::vector<Lts>{left, right});

    Teacher teacher(sul);
    RunResult result = run_learning(teacher, {});
    REQUIRE(result.completed);
    CHECK(result.refinements == 0);
    CHECK(preorder_equivalent(result.distribution, Distribution::singletons(sigma)));
    CHECK(language_equivalent(parallel_compose(result.components),
                              teacher.sul_for_verification())
              .equal);
}

TEST_CASE("counter-example classification requires a recorded entry") {
    SyncPair sys;
    Observations obs(sys.global());
    Distribution singles = Distribution::singletons(sys.global());
    obs.record(kEpsilon, Verdict::positive);
    obs.record(Trace{sys.a}, Verdict::positive);
    obs.record(Trace{sys.a, sys.b}, Verdict::positive);
    obs.record(Trace{sys.b}, Verdict::negative);

    CHECK(classify_counterexample(obs, singles, {Trace{sys.b}, Verdict::negative}) ==
          CexScope::global);
    CHECK_THROWS_AS(classify_counterexample(obs, singles, {Trace{sys.c}, Verdict::positive}),
                    ContractViolation);

    Observations consistent(sys.global());
    consistent.record(Trace{sys.a}, Verdict::positive);
    CHECK(classify_counterexample(consistent, singles, {Trace{sys.a}, Verdict::positive}) ==
          CexScope::local);
}

TEST_CASE("learning a generated two-component system end to end") {
    SymbolTable table;
    Symbol p = table.intern("p"), q = table.intern("q"), r = table.intern("r");
    Alphabet sigma(3, {p, q, r});
    Rng rng(61);
    for (int round = 0; round < 10; ++round) {
        std::vector<Lts> parts{random_lts(rng, Alphabet(3, {p, q}), 3),
                               random_lts(rng, Alphabet(3, {q, r}), 3)};
        Lts sul = parallel_compose(parts);
        Teacher teacher(sul);
        RunConfig config;
        config.time_budget_seconds = 60;
        RunResult result = run_learning(teacher, config);
        REQUIRE(result.completed);
        CHECK(language_equivalent(parallel_compose(result.components),
                                  teacher.sul_for_verification())
                  .equal);
    }
}

TEST_CASE("a zero second budget cannot be exceeded but tiny ones time out") {
    SyncPair sys;
    Teacher teacher(sys.composite());
    RunConfig config;
    config.time_budget_seconds = 1e-9;
    RunResult result = run_learning(teacher, config);
    CHECK(result.timed_out);
    CHECK_FALSE(result.completed);
}
