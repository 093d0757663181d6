#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "parlearn/trace.hpp"

namespace parlearn {

// Deterministic labeled transition system. Every explicit state accepts;
// rejection is the implicit sink reached through a missing transition.
// The language is therefore prefix-closed.
class Lts {
public:
    Lts() = default;
    Lts(int num_states, Alphabet alphabet, int initial = 0);

    int num_states() const { return static_cast<int>(out_.size()); }
    int num_transitions() const { return num_transitions_; }
    int initial() const { return initial_; }
    const Alphabet& alphabet() const { return alphabet_; }

    int add_state();
    void add_transition(int src, Symbol a, int dst);

    // -1 when the transition is missing (the implicit sink).
    int successor(int state, Symbol a) const;

    // Transitions of one state in ascending symbol order.
    const std::vector<std::pair<Symbol, int>>& transitions_from(int state) const { return out_[state]; }

    struct Edge {
        int src;
        Symbol symbol;
        int dst;
    };
    // All transitions in insertion order; the order the writer emits, so a
    // read .aut file round-trips byte for byte.
    const std::vector<Edge>& edges() const { return edges_; }

    // State reached by running `trace` from the initial state, if alive.
    std::optional<int> run(const Trace& trace) const;
    bool accepts(const Trace& trace) const;

private:
    void check_state(int s) const;

    Alphabet alphabet_;
    int initial_ = 0;
    int num_transitions_ = 0;
    std::vector<std::vector<std::pair<Symbol, int>>> out_;
    std::vector<Edge> edges_;
};

// Reachable fragment of the synchronized product: a symbol fires iff every
// component whose alphabet contains it fires it, the others stay idle.
// States are numbered in BFS discovery order with ascending symbols, so the
// result is deterministic in the input order.
Lts parallel_compose(std::span<const Lts> components);
Lts parallel_compose(const std::vector<Lts>& components);

struct EquivalenceResult {
    bool equal = false;
    Trace witness;        // empty when equal
    bool witness_in_a = false;

    explicit operator bool() const { return equal; }
};

// Shortest trace accepted by exactly one of the two systems, ties broken
// lexicographically on symbol ids; `equal` when the languages coincide.
// Both systems must share one alphabet.
EquivalenceResult language_equivalent(const Lts& a, const Lts& b);

}  // namespace parlearn
