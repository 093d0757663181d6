#pragma once

#include <string>
#include <vector>

#include "parlearn/symbols.hpp"

namespace parlearn {

using Trace = std::vector<Symbol>;

inline const Trace kEpsilon{};

// Subsequence of `trace` keeping exactly the symbols in `alpha`.
Trace project(const Trace& trace, const Alphabet& alpha);

Trace concat(const Trace& a, const Trace& b);

bool is_prefix_of(const Trace& prefix, const Trace& trace);

// All prefixes of `trace` including epsilon and the trace itself,
// in ascending length.
std::vector<Trace> prefixes(const Trace& trace);

// All suffixes of `trace` including the trace itself and epsilon,
// in descending length.
std::vector<Trace> suffixes(const Trace& trace);

// Plain lexicographic order on symbol ids.
bool lex_less(const Trace& a, const Trace& b);

// Length-then-lexicographic order; the order in which shortest
// counter-examples are reported.
bool shortlex_less(const Trace& a, const Trace& b);

std::string format_trace(const Trace& trace, const SymbolTable& table);
Trace parse_trace(const std::string& text, const SymbolTable& table);

struct TraceHash {
    size_t operator()(const Trace& t) const {
        size_t h = 1469598103934665603ull;
        for (Symbol s : t) {
            h ^= static_cast<size_t>(static_cast<uint32_t>(s.id));
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace parlearn
