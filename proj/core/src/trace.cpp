#include "parlearn/trace.hpp"

#include <algorithm>
#include <sstream>

namespace parlearn {

Trace project(const Trace& trace, const Alphabet& alpha) {
    Trace out;
    out.reserve(trace.size());
    for (Symbol s : trace)
        if (alpha.contains(s)) out.push_back(s);
    return out;
}

Trace concat(const Trace& a, const Trace& b) {
    Trace out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

bool is_prefix_of(const Trace& prefix, const Trace& trace) {
    if (prefix.size() > trace.size()) return false;
    return std::equal(prefix.begin(), prefix.end(), trace.begin());
}

std::vector<Trace> prefixes(const Trace& trace) {
    std::vector<Trace> out;
    out.reserve(trace.size() + 1);
    for (size_t len = 0; len <= trace.size(); ++len) out.emplace_back(trace.begin(), trace.begin() + len);
    return out;
}

std::vector<Trace> suffixes(const Trace& trace) {
    std::vector<Trace> out;
    out.reserve(trace.size() + 1);
    for (size_t start = 0; start <= trace.size(); ++start) out.emplace_back(trace.begin() + start, trace.end());
    return out;
}

bool lex_less(const Trace& a, const Trace& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool shortlex_less(const Trace& a, const Trace& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
}

std::string format_trace(const Trace& trace, const SymbolTable& table) {
    std::string out;
    for (size_t i = 0; i < trace.size(); ++i) {
        if (i) out += ' ';
        out += table.name(trace[i]);
    }
    return out;
}

Trace parse_trace(const std::string& text, const SymbolTable& table) {
    Trace out;
    std::istringstream in(text);
    std::string word;
    while (in >> word) out.push_back(table.find(word));
    return out;
}

}  // namespace parlearn
