#include "parlearn/observations.hpp"

#include "parlearn/errors.hpp"

namespace parlearn {

void Observations::record(const Trace& trace, Verdict v) {
    for (Symbol s : trace)
        if (!alphabet_.contains(s)) throw ContractViolation("observation trace outside the store alphabet");
    auto it = index_.find(trace);
    if (it != index_.end()) {
        if (it->second != v)
            throw ConsistencyError("conflicting verdict re-recorded for an observed trace");
        return;
    }
    index_.emplace(trace, v);
    entries_.emplace_back(trace, v);
}

std::optional<Verdict> Observations::lookup(const Trace& trace) const {
    auto it = index_.find(trace);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const LocalView& Observations::localize(const Alphabet& alpha) const {
    if (!alpha.subset_of(alphabet_)) throw ContractViolation("localize alphabet not within the store alphabet");
    LocalView& view = local_cache_[alpha];
    if (view.applied_entries == 0) view.alphabet = alpha;
    for (size_t i = view.applied_entries; i < entries_.size(); ++i) {
        const auto& [trace, verdict] = entries_[i];
        Trace local = project(trace, alpha);
        auto [it, inserted] = view.verdicts.emplace(local, verdict);
        if (!inserted && verdict == Verdict::positive) it->second = Verdict::positive;
        if (verdict == Verdict::positive)
            view.first_positive.emplace(std::move(local), static_cast<int>(i));
    }
    view.applied_entries = entries_.size();
    return view;
}

std::optional<Trace> Observations::disagreement_witness(const Lts& lts) const {
    if (!(lts.alphabet() == alphabet_))
        throw ContractViolation("agreement check requires matching alphabets");
    for (const auto& [trace, verdict] : entries_) {
        bool in_language = lts.accepts(trace);
        if (in_language != (verdict == Verdict::positive)) return trace;
    }
    return std::nullopt;
}

}  // namespace parlearn
