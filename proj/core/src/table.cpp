#include "parlearn/table.hpp"

#include <algorithm>
#include <sstream>

#include "parlearn/errors.hpp"

namespace parlearn {

ObservationTable::ObservationTable(Alphabet alphabet)
    : alphabet_(std::move(alphabet)), symbols_(alphabet_.symbols()) {
    add_suffix(kEpsilon);
    add_prefix(kEpsilon);
}

void ObservationTable::ensure_row(const Trace& r) {
    if (row_set_.insert(r).second) rows_.push_back(r);
}

void ObservationTable::add_prefix(const Trace& s) {
    for (Symbol sym : s)
        if (!alphabet_.contains(sym)) throw ContractViolation("prefix outside the table alphabet");
    for (const Trace& p : ::parlearn::prefixes(s)) {
        if (!prefix_set_.insert(p).second) continue;
        prefixes_.push_back(p);
        ensure_row(p);
        for (Symbol a : symbols_) {
            Trace successor = p;
            successor.push_back(a);
            ensure_row(successor);
        }
    }
}

void ObservationTable::add_suffix(const Trace& e) {
    for (Symbol sym : e)
        if (!alphabet_.contains(sym)) throw ContractViolation("suffix outside the table alphabet");
    auto all = ::parlearn::suffixes(e);
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
        if (!suffix_set_.insert(*it).second) continue;
        suffixes_.push_back(*it);
    }
}

Cell ObservationTable::cell(const Trace& t) const {
    auto it = cells_.find(t);
    return it == cells_.end() ? Cell::unknown : it->second;
}

void ObservationTable::set_cell(const Trace& t, Cell v) {
    if (v == Cell::unknown) throw ContractViolation("cells cannot be reset to unknown");
    auto [it, inserted] = cells_.emplace(t, v);
    if (!inserted) {
        if (it->second != v) throw ConsistencyError("conflicting cell value for an observed trace");
        return;
    }
    if (v == Cell::positive) positive_cells_.insert(t);
}

bool ObservationTable::row_compatible(const Trace& r1, const Trace& r2) const {
    for (const Trace& e : suffixes_) {
        Cell c1 = cell(concat(r1, e));
        if (c1 == Cell::unknown) continue;
        Cell c2 = cell(concat(r2, e));
        if (c2 == Cell::unknown) continue;
        if (c1 != c2) return false;
    }
    return true;
}

TableCheck ObservationTable::check_closed_consistent() const {
    // Consistency first, matching the order defects are repaired in.
    for (size_t i = 0; i < prefixes_.size(); ++i) {
        for (size_t j = i + 1; j < prefixes_.size(); ++j) {
            if (!row_compatible(prefixes_[i], prefixes_[j])) continue;
            for (Symbol a : symbols_) {
                Trace r1 = prefixes_[i];
                r1.push_back(a);
                Trace r2 = prefixes_[j];
                r2.push_back(a);
                for (const Trace& e : suffixes_) {
                    Cell c1 = cell(concat(r1, e));
                    if (c1 == Cell::unknown) continue;
                    Cell c2 = cell(concat(r2, e));
                    if (c2 == Cell::unknown) continue;
                    if (c1 != c2) {
                        Trace suffix{a};
                        suffix.insert(suffix.end(), e.begin(), e.end());
                        return ConsistencyDefect{std::move(suffix), prefixes_[i], prefixes_[j]};
                    }
                }
            }
        }
    }
    for (const Trace& s : prefixes_) {
        for (Symbol a : symbols_) {
            Trace r = s;
            r.push_back(a);
            if (prefix_set_.count(r)) continue;
            bool matched = false;
            for (const Trace& candidate : prefixes_) {
                if (row_compatible(r, candidate)) {
                    matched = true;
                    break;
                }
            }
            if (!matched) return ClosednessDefect{std::move(r)};
        }
    }
    return TableOk{};
}

void ObservationTable::propagate() {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Trace& r : rows_) {
            for (const Trace& e : suffixes_) {
                Trace t = concat(r, e);
                if (cell(t) != Cell::unknown) continue;
                // A recorded negative prefix forces this trace negative.
                bool derived = false;
                for (size_t len = 0; len <= t.size(); ++len) {
                    auto it = cells_.find(Trace(t.begin(), t.begin() + len));
                    if (it != cells_.end() && it->second == Cell::negative) {
                        set_cell(t, Cell::negative);
                        derived = true;
                        break;
                    }
                }
                if (derived) {
                    changed = true;
                    continue;
                }
                // A recorded positive extension forces it positive.
                auto it = positive_cells_.lower_bound(t);
                if (it != positive_cells_.end() && is_prefix_of(t, *it)) {
                    set_cell(t, Cell::positive);
                    changed = true;
                }
            }
        }
    }
}

std::vector<Trace> ObservationTable::unresolved_cells() const {
    std::vector<Trace> out;
    std::unordered_set<Trace, TraceHash> seen;
    for (const Trace& r : rows_) {
        for (const Trace& e : suffixes_) {
            Trace t = concat(r, e);
            if (cell(t) != Cell::unknown) continue;
            if (seen.insert(t).second) out.push_back(std::move(t));
        }
    }
    return out;
}

std::string ObservationTable::dump(const SymbolTable& table) const {
    auto label = [&](const Trace& t) { return t.empty() ? std::string("eps") : format_trace(t, table); };
    size_t width = 3;
    for (const Trace& r : rows_) width = std::max(width, label(r).size());
    std::ostringstream out;
    out << std::string(width, ' ') << " |";
    for (const Trace& e : suffixes_) out << ' ' << label(e);
    out << '\n';
    auto emit = [&](const Trace& r) {
        std::string name = label(r);
        out << name << std::string(width - name.size(), ' ') << " |";
        for (const Trace& e : suffixes_) {
            Cell c = cell(concat(r, e));
            const char* shown = c == Cell::unknown ? "?" : (c == Cell::positive ? "+" : "-");
            out << ' ' << shown << std::string(label(e).size() > 1 ? label(e).size() - 1 : 0, ' ');
        }
        out << '\n';
    };
    for (const Trace& r : prefixes_) emit(r);
    out << std::string(width, '-') << "-+\n";
    for (const Trace& r : rows_)
        if (!prefix_set_.count(r)) emit(r);
    return out.str();
}

}  // namespace parlearn
