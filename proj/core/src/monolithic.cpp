#include "parlearn/monolithic.hpp"

#include <chrono>
#include <map>

#include "parlearn/errors.hpp"

namespace parlearn {

namespace {

struct TimeoutSignal {};

// Row-major table tuned for large fully-defined instances: cells are flat
// byte arrays and rows carry an incrementally maintained 128-bit content
// hash, so closedness and consistency are bucket lookups instead of
// cell-by-cell row comparisons.
class ClassicTable {
public:
    explicit ClassicTable(const Alphabet& alphabet)
        : alphabet_(alphabet), symbols_(alphabet.symbols()) {
        add_suffix(kEpsilon);
        add_to_s(kEpsilon);
    }

    int ensure_row(const Trace& t) {
        auto it = row_index_.find(t);
        if (it != row_index_.end()) return it->second;
        int id = static_cast<int>(rows_.size());
        rows_.push_back(Row{t, std::vector<int8_t>(suffixes_.size(), kUnfilled), 0, 0, false});
        row_index_.emplace(t, id);
        return id;
    }

    void add_to_s(const Trace& t) {
        for (const Trace& p : prefixes(t)) {
            int id = ensure_row(p);
            if (rows_[id].in_s) continue;
            rows_[id].in_s = true;
            s_rows_.push_back(id);
            for (Symbol a : symbols_) {
                Trace successor = p;
                successor.push_back(a);
                ensure_row(successor);
            }
        }
    }

    void add_suffix(const Trace& e) {
        if (!suffix_index_.emplace(e, suffixes_.size()).second) return;
        suffixes_.push_back(e);
        for (Row& row : rows_) row.cells.push_back(kUnfilled);
    }

    template <typename F>
    void fill(F&& member) {
        for (size_t r = 0; r < rows_.size(); ++r)
            for (size_t e = 0; e < suffixes_.size(); ++e)
                if (rows_[r].cells[e] == kUnfilled) set_cell(static_cast<int>(r), static_cast<int>(e),
                                                            member(concat(rows_[r].trace, suffixes_[e])));
    }

    struct Defect {
        enum Kind { none, closedness, consistency } kind = none;
        Trace new_prefix;
        Trace new_suffix;
    };

    Defect find_defect() const {
        // Consistency: rows of S in one bucket must have matching successors.
        std::map<std::pair<uint64_t, uint64_t>, std::vector<int>> buckets;
        for (int id : s_rows_) buckets[{rows_[id].hash_lo, rows_[id].hash_hi}].push_back(id);
        for (const auto& [key, members] : buckets) {
            if (members.size() < 2) continue;
            int reference = members.front();
            for (size_t m = 1; m < members.size(); ++m) {
                for (Symbol a : symbols_) {
                    int r1 = successor_row(reference, a);
                    int r2 = successor_row(members[m], a);
                    if (row_hash(r1) == row_hash(r2)) continue;
                    for (size_t e = 0; e < suffixes_.size(); ++e) {
                        if (rows_[r1].cells[e] != rows_[r2].cells[e]) {
                            Defect d;
                            d.kind = Defect::consistency;
                            d.new_suffix = Trace{a};
                            d.new_suffix.insert(d.new_suffix.end(), suffixes_[e].begin(), suffixes_[e].end());
                            return d;
                        }
                    }
                }
            }
        }
        // Closedness: every successor row must match some S row.
        std::map<std::pair<uint64_t, uint64_t>, int> s_hashes;
        for (int id : s_rows_) s_hashes.emplace(row_hash(id), id);
        for (int id : s_rows_) {
            for (Symbol a : symbols_) {
                int succ = successor_row(id, a);
                if (rows_[succ].in_s) continue;
                if (!s_hashes.count(row_hash(succ))) {
                    Defect d;
                    d.kind = Defect::closedness;
                    d.new_prefix = rows_[succ].trace;
                    return d;
                }
            }
        }
        return Defect{};
    }

    Lts hypothesis() const {
        std::map<std::pair<uint64_t, uint64_t>, int> state_of;
        std::vector<int> representatives;
        for (int id : s_rows_) {
            if (rows_[id].cells[0] != 1) continue;  // suffix 0 is epsilon
            if (state_of.emplace(row_hash(id), static_cast<int>(representatives.size())).second)
                representatives.push_back(id);
        }
        if (representatives.empty()) throw ConsistencyError("table rejects epsilon");
        Lts lts(static_cast<int>(representatives.size()), alphabet_,
                state_of.at(row_hash(row_index_.at(kEpsilon))));
        for (size_t i = 0; i < representatives.size(); ++i) {
            for (Symbol a : symbols_) {
                int succ = successor_row(representatives[i], a);
                if (rows_[succ].cells[0] != 1) continue;
                lts.add_transition(static_cast<int>(i), a, state_of.at(row_hash(succ)));
            }
        }
        return lts;
    }

private:
    static constexpr int8_t kUnfilled = -1;

    struct Row {
        Trace trace;
        std::vector<int8_t> cells;
        uint64_t hash_lo, hash_hi;
        bool in_s;
    };

    std::pair<uint64_t, uint64_t> row_hash(int id) const { return {rows_[id].hash_lo, rows_[id].hash_hi}; }

    int successor_row(int id, Symbol a) const {
        Trace t = rows_[id].trace;
        t.push_back(a);
        return row_index_.at(t);
    }

    void set_cell(int row, int e, Verdict v) {
        Row& r = rows_[row];
        r.cells[e] = v == Verdict::positive ? 1 : 0;
        // Commutative mix so the hash is independent of fill order.
        uint64_t x = (static_cast<uint64_t>(e) << 1) | (v == Verdict::positive ? 1 : 0);
        x *= 0x9e3779b97f4a7c15ull;
        x ^= x >> 29;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 32;
        r.hash_lo += x;
        r.hash_hi += x * 0x94d049bb133111ebull + 0x2545f4914f6cdd1dull;
    }

    Alphabet alphabet_;
    std::vector<Symbol> symbols_;
    std::vector<Trace> suffixes_;
    std::unordered_map<Trace, size_t, TraceHash> suffix_index_;
    std::vector<Row> rows_;
    std::unordered_map<Trace, int, TraceHash> row_index_;
    std::vector<int> s_rows_;
};

}  // namespace

MonolithicResult learn_monolithic(Teacher& teacher, double time_budget_seconds) {
    using Clock = std::chrono::steady_clock;
    std::optional<Clock::time_point> deadline;
    if (time_budget_seconds > 0)
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(time_budget_seconds));
    long queries_since_check = 0;
    auto member = [&](const Trace& t) {
        if (deadline && ++queries_since_check >= 1024) {
            queries_since_check = 0;
            if (Clock::now() > *deadline) throw TimeoutSignal{};
        }
        return teacher.membership(t);
    };

    MonolithicResult result;
    ClassicTable table(teacher.alphabet());
    try {
        while (true) {
            table.fill(member);
            while (true) {
                ClassicTable::Defect defect = table.find_defect();
                if (defect.kind == ClassicTable::Defect::none) break;
                if (defect.kind == ClassicTable::Defect::consistency)
                    table.add_suffix(defect.new_suffix);
                else
                    table.add_to_s(defect.new_prefix);
                table.fill(member);
            }
            Lts hypothesis = table.hypothesis();
            ++result.rounds;
            Teacher::Answer answer = teacher.equivalence(hypothesis);
            if (answer.yes) {
                result.hypothesis = std::move(hypothesis);
                result.completed = true;
                break;
            }
            if (deadline && Clock::now() > *deadline) throw TimeoutSignal{};
            table.add_to_s(answer.counterexample);
        }
    } catch (const TimeoutSignal&) {
        result.timed_out = true;
    }
    result.stats = teacher.stats();
    return result;
}

}  // namespace parlearn
