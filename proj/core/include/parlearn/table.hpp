#pragma once

#include <set>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "parlearn/observations.hpp"
#include "parlearn/trace.hpp"

namespace parlearn {

// Table cell: unknown is the wildcard, a trace the oracle could not classify.
enum class Cell : uint8_t { unknown = 0, positive, negative };

inline Cell to_cell(Verdict v) { return v == Verdict::positive ? Cell::positive : Cell::negative; }

struct TableOk {};
struct ConsistencyDefect {
    Trace new_suffix;  // a·e to add to the suffix set
    Trace s1, s2;      // the witnessing compatible pair
};
struct ClosednessDefect {
    Trace new_prefix;  // s·a to add to the prefix set
};
using TableCheck = std::variant<TableOk, ConsistencyDefect, ClosednessDefect>;

// L* observation table with partial entries. Prefixes S stay prefix-closed,
// suffixes E suffix-closed, and cells are keyed by the concatenated trace,
// so overlapping row/column pairs share one entry. Copying the table is the
// snapshot operation used for backtracking.
class ObservationTable {
public:
    explicit ObservationTable(Alphabet alphabet);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Trace>& prefixes() const { return prefixes_; }
    const std::vector<Trace>& suffixes() const { return suffixes_; }
    // S followed by the S·Σ rows, in insertion order.
    const std::vector<Trace>& rows() const { return rows_; }

    bool has_prefix(const Trace& s) const { return prefix_set_.count(s) != 0; }
    void add_prefix(const Trace& s);
    void add_suffix(const Trace& e);

    Cell cell(const Trace& t) const;
    void set_cell(const Trace& t, Cell v);
    const std::unordered_map<Trace, Cell, TraceHash>& defined_cells() const { return cells_; }

    // Rows are compatible when no suffix has both cells defined and different.
    bool row_compatible(const Trace& r1, const Trace& r2) const;

    // Consistency defects are reported before closedness defects.
    TableCheck check_closed_consistent() const;

    // Derive every cell implied by prefix closure: extensions of negatives
    // are negative, prefixes of positives are positive.
    void propagate();
    // Needed cells still unknown, in deterministic row-major order.
    std::vector<Trace> unresolved_cells() const;

    // Propagates, asks `member` for the rest; unknown answers stay wildcards.
    template <typename F>
    void fill(F&& member) {
        propagate();
        for (const Trace& t : unresolved_cells()) {
            if (cell(t) != Cell::unknown) continue;
            Cell v = member(t);
            if (v != Cell::unknown) {
                set_cell(t, v);
                propagate();
            }
        }
    }

    std::string dump(const SymbolTable& table) const;

private:
    void ensure_row(const Trace& r);

    struct LexLess {
        bool operator()(const Trace& a, const Trace& b) const { return lex_less(a, b); }
    };

    Alphabet alphabet_;
    std::vector<Symbol> symbols_;
    std::vector<Trace> prefixes_;
    std::vector<Trace> suffixes_;
    std::vector<Trace> rows_;
    std::unordered_set<Trace, TraceHash> prefix_set_;
    std::unordered_set<Trace, TraceHash> suffix_set_;
    std::unordered_set<Trace, TraceHash> row_set_;
    std::unordered_map<Trace, Cell, TraceHash> cells_;
    std::set<Trace, LexLess> positive_cells_;
};

}  // namespace parlearn
