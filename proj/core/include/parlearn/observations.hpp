#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "parlearn/lts.hpp"
#include "parlearn/trace.hpp"

namespace parlearn {

enum class Verdict : uint8_t { negative = 0, positive = 1 };

inline char verdict_char(Verdict v) { return v == Verdict::positive ? '+' : '-'; }

// Projection of the global store onto a sub-alphabet. A local trace is
// positive iff some global pre-image is positive. Negative local entries are
// advisory only: they may be spuriously negative at the composite level, so
// consumers must not treat them as ground truth for a projected language.
struct LocalView {
    Alphabet alphabet;
    std::unordered_map<Trace, Verdict, TraceHash> verdicts;
    // Index of the first recorded positive entry projecting onto the key.
    std::unordered_map<Trace, int, TraceHash> first_positive;
    size_t applied_entries = 0;
};

// Global observation store: a finite partial map from traces to verdicts.
// Entries never flip; a conflicting re-record signals a broken Teacher.
class Observations {
public:
    Observations() = default;
    explicit Observations(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    const Alphabet& alphabet() const { return alphabet_; }
    size_t size() const { return entries_.size(); }
    uint64_t version() const { return entries_.size(); }

    void record(const Trace& trace, Verdict v);
    std::optional<Verdict> lookup(const Trace& trace) const;

    // Entries in recording order.
    const std::vector<std::pair<Trace, Verdict>>& entries() const { return entries_; }

    // Cached; refreshed incrementally as entries are recorded.
    const LocalView& localize(const Alphabet& alpha) const;

    // First recorded trace whose store verdict disagrees with membership in
    // L(lts); nullopt when the store agrees with the language.
    std::optional<Trace> disagreement_witness(const Lts& lts) const;

private:
    Alphabet alphabet_;
    std::vector<std::pair<Trace, Verdict>> entries_;
    std::unordered_map<Trace, Verdict, TraceHash> index_;
    mutable std::unordered_map<Alphabet, LocalView, AlphabetHash> local_cache_;
};

}  // namespace parlearn
