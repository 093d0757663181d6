#pragma once

#include <optional>
#include <variant>

#include "parlearn/event_log.hpp"
#include "parlearn/hypothesis.hpp"
#include "parlearn/table.hpp"

namespace parlearn {

struct AskMembership {
    Trace trace;
};
struct ProposeHypothesis {
    Lts hypothesis;
};
struct Finished {
    Lts hypothesis;
};
using LearnerEffect = std::variant<AskMembership, ProposeHypothesis, Finished>;

enum class LearnerPhase { filling, awaiting_equivalence, done };

// One local learner, driven as a resumable state machine: it emits one
// effect at a time (a membership question or a hypothesis) and blocks until
// the answer comes back. Negative counter-examples may later turn out
// spurious; a snapshot of the table is stored when one arrives and restored
// when the matching positive counter-example reveals the lie.
class Learner {
public:
    Learner(int id, Alphabet alphabet, EventSink* sink = nullptr);

    int id() const { return id_; }
    LearnerPhase phase() const { return phase_; }
    const ObservationTable& table() const { return table_; }
    const std::optional<Lts>& hypothesis() const { return hypothesis_; }
    bool has_snapshot(const Trace& key) const { return snapshots_.count(key) != 0; }

    LearnerEffect start();
    LearnerEffect answer_membership(Cell value);
    LearnerEffect accept_hypothesis();
    LearnerEffect receive_counterexample(const Trace& cex, Verdict verdict);

private:
    LearnerEffect advance();
    void emit(EventKind kind, const Trace& local);

    int id_;
    EventSink* sink_;
    ObservationTable table_;
    std::unordered_map<Trace, ObservationTable, TraceHash> snapshots_;
    std::optional<Lts> hypothesis_;
    LearnerPhase phase_ = LearnerPhase::filling;
    std::optional<Trace> pending_query_;
    std::unordered_set<Trace, TraceHash> asked_;
};

}  // namespace parlearn
