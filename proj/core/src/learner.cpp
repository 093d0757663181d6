#include "parlearn/learner.hpp"

#include "parlearn/errors.hpp"

namespace parlearn {

Learner::Learner(int id, Alphabet alphabet, EventSink* sink)
    : id_(id), sink_(sink), table_(std::move(alphabet)) {}

void Learner::emit(EventKind kind, const Trace& local) {
    if (!sink_) return;
    Event e;
    e.kind = kind;
    e.component = id_;
    e.local = local;
    sink_->on_event(e);
}

LearnerEffect Learner::start() {
    if (phase_ != LearnerPhase::filling || pending_query_)
        throw ContractViolation("learner already started");
    return advance();
}

LearnerEffect Learner::answer_membership(Cell value) {
    if (phase_ != LearnerPhase::filling || !pending_query_)
        throw ContractViolation("no membership question pending");
    if (value != Cell::unknown) table_.set_cell(*pending_query_, value);
    pending_query_.reset();
    return advance();
}

LearnerEffect Learner::accept_hypothesis() {
    if (phase_ != LearnerPhase::awaiting_equivalence)
        throw ContractViolation("no hypothesis awaiting equivalence");
    phase_ = LearnerPhase::done;
    return Finished{*hypothesis_};
}

LearnerEffect Learner::receive_counterexample(const Trace& cex, Verdict verdict) {
    if (phase_ != LearnerPhase::awaiting_equivalence)
        throw ContractViolation("no hypothesis awaiting equivalence");
    asked_.clear();

    if (table_.cell(cex) == Cell::negative) {
        if (verdict != Verdict::positive)
            throw ContractViolation("negative counter-example for a trace the hypothesis rejects");
        // The recorded negative was spurious. Roll back to the snapshot
        // taken when it (or the negative prefix it was derived from) came in.
        size_t limit = cex.size();
        while (table_.cell(cex) == Cell::negative) {
            std::optional<size_t> found;
            for (size_t len = limit + 1; len-- > 0;) {
                Trace key(cex.begin(), cex.begin() + len);
                auto it = snapshots_.find(key);
                if (it != snapshots_.end()) {
                    table_ = it->second;
                    emit(EventKind::table_restored, key);
                    found = len;
                    break;
                }
            }
            if (!found)
                throw ConsistencyError("positive counter-example contradicts a sound negative entry");
            if (*found == 0) break;
            limit = *found - 1;
        }
        if (table_.cell(cex) == Cell::negative)
            throw ConsistencyError("backtracking could not clear the spurious entry");
    } else if (verdict == Verdict::negative && hypothesis_ && hypothesis_->accepts(cex)) {
        // Might be spurious; keep the table as it is now so it can be
        // restored if a positive counter-example later corrects this one.
        snapshots_.insert_or_assign(cex, table_);
        emit(EventKind::snapshot_stored, cex);
    }

    table_.add_prefix(cex);
    Cell current = table_.cell(cex);
    if (current == Cell::unknown) {
        table_.set_cell(cex, to_cell(verdict));
    }
    // An existing positive entry outranks a negative counter-example: member
    // answers and positive counter-examples are sound, so the new negative
    // is spurious on arrival and is simply not recorded.

    phase_ = LearnerPhase::filling;
    return advance();
}

LearnerEffect Learner::advance() {
    while (true) {
        table_.propagate();
        for (Trace& t : table_.unresolved_cells()) {
            if (!asked_.insert(t).second) continue;
            pending_query_ = t;
            return AskMembership{std::move(t)};
        }
        TableCheck check = table_.check_closed_consistent();
        if (auto* defect = std::get_if<ConsistencyDefect>(&check)) {
            table_.add_suffix(defect->new_suffix);
            continue;
        }
        if (auto* defect = std::get_if<ClosednessDefect>(&check)) {
            table_.add_prefix(defect->new_prefix);
            continue;
        }
        hypothesis_ = build_hypothesis(table_, hypothesis_ ? &*hypothesis_ : nullptr);
        phase_ = LearnerPhase::awaiting_equivalence;
        return ProposeHypothesis{*hypothesis_};
    }
}

}  // namespace parlearn
