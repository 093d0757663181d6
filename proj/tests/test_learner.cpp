#include <catch2/catch_amalgamated.hpp>

#include "parlearn/learner.hpp"
#include "fixtures.hpp"

using namespace parlearn;
using namespace parlearn::testing;

namespace {

// Drives a learner against a scripted membership oracle until it proposes.
template <typename F>
ProposeHypothesis drive_to_proposal(Learner& learner, LearnerEffect effect, F&& member,
                                    std::vector<Trace>* asked = nullptr) {
    while (auto* ask = std::get_if<AskMembership>(&effect)) {
        if (asked) asked->push_back(ask->trace);
        effect = learner.answer_membership(member(ask->trace));
    }
    return std::get<ProposeHypothesis>(effect);
}

}  // namespace

TEST_CASE("a single-symbol learner grows from the loop guess to the chain") {
    SymbolTable t;
    Symbol a = t.intern("a");
    Alphabet sigma(1, {a});

    // hidden target: exactly one a
    auto member = [&](const Trace& trace) {
        return trace.size() <= 1 ? Cell::positive : Cell::negative;
    };

    Learner learner(0, sigma);
    std::vector<Trace> asked;
    ProposeHypothesis first = drive_to_proposal(learner, learner.start(), member, &asked);
    CHECK(asked == std::vector<Trace>{kEpsilon, Trace{a}});
    // one state explains {eps, a} until the overgeneral loop is refuted
    CHECK(first.hypothesis.num_states() == 1);
    CHECK(first.hypothesis.accepts(Trace{a, a}));

    ProposeHypothesis second =
        drive_to_proposal(learner, learner.receive_counterexample(Trace{a, a}, Verdict::negative), member);
    CHECK(second.hypothesis.num_states() == 2);
    CHECK(second.hypothesis.accepts(Trace{a}));
    CHECK_FALSE(second.hypothesis.accepts(Trace{a, a}));

    LearnerEffect done = learner.accept_hypothesis();
    CHECK(std::holds_alternative<Finished>(done));
    CHECK(learner.phase() == LearnerPhase::done);
}

TEST_CASE("a learner with only a negative answer proposes the empty-step system") {
    SymbolTable t;
    Symbol b = t.intern("b");
    Alphabet sigma(1, {b});
    Learner learner(0, sigma);
    ProposeHypothesis proposal = drive_to_proposal(learner, learner.start(), [&](const Trace& trace) {
        return trace.empty() ? Cell::positive : Cell::negative;
    });
    CHECK(proposal.hypothesis.num_states() == 1);
    CHECK(proposal.hypothesis.num_transitions() == 0);
}

TEST_CASE("spurious negatives are snapshotted and rolled back") {
    SymbolTable t;
    Symbol c = t.intern("c");
    Alphabet sigma(1, {c});
    EventRecorder recorder;
    Learner learner(0, sigma, &recorder);

    // only eps is known; everything else is unanswerable
    auto member = [&](const Trace& trace) { return trace.empty() ? Cell::positive : Cell::unknown; };

    ProposeHypothesis p1 = drive_to_proposal(learner, learner.start(), member);
    CHECK(p1.hypothesis.num_states() == 1);
    CHECK_FALSE(p1.hypothesis.accepts(Trace{c}));

    // positive counter-example c: the hypothesis was too small
    ProposeHypothesis p2 =
        drive_to_proposal(learner, learner.receive_counterexample(Trace{c}, Verdict::positive), member);
    CHECK(p2.hypothesis.accepts(Trace{c, c}));  // minimality forces the loop

    // a negative counter-example for cc might be spurious: snapshot stored
    ProposeHypothesis p3 = drive_to_proposal(
        learner, learner.receive_counterexample(Trace{c, c}, Verdict::negative), member);
    CHECK(learner.has_snapshot(Trace{c, c}));
    CHECK_FALSE(p3.hypothesis.accepts(Trace{c, c}));

    // the correction arrives: table rolls back and cc is accepted again
    ProposeHypothesis p4 = drive_to_proposal(
        learner, learner.receive_counterexample(Trace{c, c}, Verdict::positive), member);
    CHECK(p4.hypothesis.accepts(Trace{c, c}));

    bool restored = false;
    for (const Event& e : recorder.events())
        if (e.kind == EventKind::table_restored && e.local == Trace{c, c}) restored = true;
    CHECK(restored);
}

TEST_CASE("with a perfect oracle the learner is classic and converges") {
    SymbolTable t;
    Alphabet sigma(2);
    sigma.add(t.intern("a"));
    sigma.add(t.intern("b"));
    Rng rng(321);
    for (int round = 0; round < 15; ++round) {
        Lts target = random_lts(rng, sigma, 6);
        Learner learner(0, sigma);
        auto member = [&](const Trace& trace) {
            return target.accepts(trace) ? Cell::positive : Cell::negative;
        };
        LearnerEffect effect = learner.start();
        int proposals = 0;
        int previous_states = 0;
        while (true) {
            ProposeHypothesis proposal = drive_to_proposal(learner, std::move(effect), member);
            REQUIRE(++proposals < 50);
            // hypotheses never shrink under a sound oracle
            CHECK(proposal.hypothesis.num_states() >= previous_states);
            previous_states = proposal.hypothesis.num_states();
            EquivalenceResult r = language_equivalent(proposal.hypothesis, target);
            if (r.equal) break;
            effect = learner.receive_counterexample(
                r.witness, r.witness_in_a ? Verdict::negative : Verdict::positive);
        }
        // converged to the minimal automaton for the language
        CHECK(previous_states <= target.num_states());
    }
}
