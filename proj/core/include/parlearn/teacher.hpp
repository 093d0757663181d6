#pragma once

#include "parlearn/lts.hpp"
#include "parlearn/observations.hpp"

namespace parlearn {

struct QueryStats {
    long membership_queries = 0;
    long equivalence_queries = 0;
};

// Simulated oracle over a hidden composite LTS. Membership runs the trace;
// equivalence returns the shortest counter-example, ties broken
// lexicographically on symbol ids. Counters equal the number of calls.
class Teacher {
public:
    explicit Teacher(Lts sul) : sul_(std::move(sul)) {}

    const Alphabet& alphabet() const { return sul_.alphabet(); }

    Verdict membership(const Trace& trace);

    struct Answer {
        bool yes = false;
        Trace counterexample;
        Verdict verdict = Verdict::negative;  // membership of the counter-example in the target
    };
    Answer equivalence(const Lts& hypothesis);

    QueryStats stats() const { return stats_; }

    // For harness-side verification only; the learning pipeline must not
    // look at this.
    const Lts& sul_for_verification() const { return sul_; }

private:
    Lts sul_;
    QueryStats stats_;
};

}  // namespace parlearn
