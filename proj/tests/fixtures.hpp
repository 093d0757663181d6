#pragma once

#include "parlearn/lts.hpp"
#include "parlearn/observations.hpp"
#include "parlearn/rng.hpp"

namespace parlearn::testing {

// Two components synchronizing on b: the first can loop on b only after an
// initial a or c, the second does b then d. Their composition has 7
// reachable states.
struct SyncPair {
    SymbolTable table;
    Symbol a, b, c, d;
    Lts first, second;

    SyncPair() {
        a = table.intern("a");
        b = table.intern("b");
        c = table.intern("c");
        d = table.intern("d");
        Alphabet abc(4, {a, b, c});
        Alphabet bd(4, {b, d});
        first = Lts(3, abc, 0);
        first.add_transition(0, a, 1);
        first.add_transition(0, c, 1);
        first.add_transition(1, b, 1);
        first.add_transition(1, c, 2);
        second = Lts(3, bd, 0);
        second.add_transition(0, b, 1);
        second.add_transition(1, d, 2);
    }

    Lts composite() const { return parallel_compose(std::vector<Lts>{first, second}); }
    Alphabet global() const { return first.alphabet().unite(second.alphabet()); }
};

// Two components synchronizing on c, the system whose learning exercises
// spurious counter-examples and backtracking. Symbols are interned c, a, b
// so the teacher's lexicographic tie-break prefers c-traces.
struct RepairPair {
    SymbolTable table;
    Symbol c, a, b;
    Lts first, second;

    RepairPair() {
        c = table.intern("c");
        a = table.intern("a");
        b = table.intern("b");
        Alphabet ac(3, {a, c});
        Alphabet bc(3, {b, c});
        first = Lts(3, ac, 0);
        first.add_transition(0, c, 1);
        first.add_transition(1, a, 0);
        first.add_transition(1, c, 2);
        second = Lts(2, bc, 0);
        second.add_transition(0, c, 0);
        second.add_transition(0, b, 1);
    }

    Lts composite() const { return parallel_compose(std::vector<Lts>{first, second}); }
    Alphabet global() const { return first.alphabet().unite(second.alphabet()); }
};

// Random deterministic LTS for property tests.
inline Lts random_lts(Rng& rng, const Alphabet& alphabet, int max_states) {
    int states = 1 + static_cast<int>(rng.below(max_states));
    Lts lts(states, alphabet, 0);
    for (int s = 0; s < states; ++s) {
        for (Symbol sym : alphabet.symbols()) {
            switch (rng.below(3)) {
                case 0: break;  // missing transition
                default: lts.add_transition(s, sym, static_cast<int>(rng.below(states)));
            }
        }
    }
    return lts;
}

inline Trace random_trace(Rng& rng, const Alphabet& alphabet, int max_len) {
    std::vector<Symbol> symbols = alphabet.symbols();
    Trace t;
    int len = static_cast<int>(rng.below(max_len + 1));
    for (int i = 0; i < len; ++i) t.push_back(symbols[rng.below(symbols.size())]);
    return t;
}

// Every trace over `symbols` of length <= max_len, in shortlex order.
inline std::vector<Trace> all_traces(const std::vector<Symbol>& symbols, int max_len) {
    std::vector<Trace> out{kEpsilon};
    size_t layer_begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        size_t layer_end = out.size();
        for (size_t i = layer_begin; i < layer_end; ++i) {
            for (Symbol s : symbols) {
                Trace t = out[i];
                t.push_back(s);
                out.push_back(std::move(t));
            }
        }
        layer_begin = layer_end;
    }
    return out;
}

}  // namespace parlearn::testing
