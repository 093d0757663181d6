#include "parlearn/hypothesis.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "parlearn/errors.hpp"

namespace parlearn {

namespace {

// Prefix tree over the defined cells. A node is live when it or a
// descendant must be accepted, dead when it or an ancestor must be
// rejected; the root is live because every LTS accepts epsilon.
struct Pta {
    struct Node {
        int parent = -1;
        Symbol via;
        std::vector<std::pair<Symbol, int>> children;  // ascending symbol order
        Cell value = Cell::unknown;
        bool live = false;
        bool dead = false;
    };
    std::vector<Node> nodes;
    std::vector<int> bfs_order;

    int child(int node, Symbol a) const {
        const auto& kids = nodes[node].children;
        auto it = std::lower_bound(kids.begin(), kids.end(), a,
                                   [](const auto& e, Symbol s) { return e.first < s; });
        if (it == kids.end() || it->first != a) return -1;
        return it->second;
    }

    int ensure_child(int node, Symbol a) {
        int existing = child(node, a);
        if (existing >= 0) return existing;
        int id = static_cast<int>(nodes.size());
        nodes.push_back(Node{node, a, {}, Cell::unknown, false, false});
        auto& kids = nodes[node].children;
        kids.insert(std::lower_bound(kids.begin(), kids.end(), a,
                                     [](const auto& e, Symbol s) { return e.first < s; }),
                    {a, id});
        return id;
    }
};

Pta build_pta(const ObservationTable& table) {
    Pta pta;
    pta.nodes.push_back({});
    std::vector<std::pair<Trace, Cell>> cells(table.defined_cells().begin(), table.defined_cells().end());
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return shortlex_less(a.first, b.first); });
    for (const auto& [trace, value] : cells) {
        int node = 0;
        for (Symbol a : trace) node = pta.ensure_child(node, a);
        pta.nodes[node].value = value;
    }

    pta.bfs_order.reserve(pta.nodes.size());
    pta.bfs_order.push_back(0);
    for (size_t i = 0; i < pta.bfs_order.size(); ++i)
        for (const auto& [a, child] : pta.nodes[pta.bfs_order[i]].children) pta.bfs_order.push_back(child);

    pta.nodes[0].live = true;
    for (int id : pta.bfs_order) {
        Pta::Node& n = pta.nodes[id];
        if (n.value == Cell::negative) n.dead = true;
        if (n.parent >= 0 && pta.nodes[n.parent].dead) n.dead = true;
    }
    for (auto it = pta.bfs_order.rbegin(); it != pta.bfs_order.rend(); ++it) {
        Pta::Node& n = pta.nodes[*it];
        if (n.value == Cell::positive) n.live = true;
        if (n.live && n.parent >= 0) pta.nodes[n.parent].live = true;
    }
    for (const Pta::Node& n : pta.nodes)
        if (n.live && n.dead)
            throw ConsistencyError("table admits no prefix-closed automaton");
    return pta;
}

// Last-resort consistent automaton: the live prefix-tree nodes themselves.
Lts pta_automaton(const Pta& pta, const Alphabet& alphabet) {
    std::vector<int> state_of(pta.nodes.size(), -1);
    std::vector<int> live_nodes;
    for (int id : pta.bfs_order) {
        if (!pta.nodes[id].live) continue;
        state_of[id] = static_cast<int>(live_nodes.size());
        live_nodes.push_back(id);
    }
    Lts lts(static_cast<int>(live_nodes.size()), alphabet, 0);
    for (int id : live_nodes)
        for (const auto& [sym, child] : pta.nodes[id].children)
            if (state_of[child] >= 0) lts.add_transition(state_of[id], sym, state_of[child]);
    return lts;
}

bool has_positive_cell(const ObservationTable& table, const Trace& row) {
    for (const Trace& e : table.suffixes())
        if (table.cell(concat(row, e)) == Cell::positive) return true;
    return false;
}

bool fully_defined(const ObservationTable& table) {
    for (const Trace& r : table.rows())
        for (const Trace& e : table.suffixes())
            if (table.cell(concat(r, e)) == Cell::unknown) return false;
    return true;
}

// Classic construction for a fully defined, closed and consistent table:
// states are the distinct accepting rows of S.
Lts classic_construction(const ObservationTable& table) {
    const auto& S = table.prefixes();
    const auto& E = table.suffixes();
    auto fingerprint = [&](const Trace& row) {
        std::string fp;
        fp.reserve(E.size());
        for (const Trace& e : E) fp += table.cell(concat(row, e)) == Cell::positive ? '+' : '-';
        return fp;
    };

    std::map<std::string, int> state_of;
    std::vector<Trace> representative;
    for (const Trace& s : S) {
        if (table.cell(s) != Cell::positive) continue;
        std::string fp = fingerprint(s);
        if (state_of.emplace(fp, static_cast<int>(representative.size())).second)
            representative.push_back(s);
    }
    if (representative.empty()) throw ConsistencyError("table rejects epsilon");

    Lts lts(static_cast<int>(representative.size()), table.alphabet(),
            state_of.at(fingerprint(kEpsilon)));
    for (size_t i = 0; i < representative.size(); ++i) {
        for (Symbol a : table.alphabet().symbols()) {
            Trace successor = representative[i];
            successor.push_back(a);
            if (table.cell(successor) != Cell::positive) continue;
            lts.add_transition(static_cast<int>(i), a, state_of.at(fingerprint(successor)));
        }
    }
    return lts;
}

// Red-blue merging over the prefix tree, the heuristic shortcut tried
// before the exact search.
struct MergeState {
    std::vector<int> parent;  // union-find
    std::vector<char> live, dead;
    std::vector<std::map<Symbol, int>> next;
    std::vector<Trace> access;  // shortlex-least access trace per class root

    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    bool fold(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return true;
        if (b < a) std::swap(a, b);  // keep the earlier node as root
        if ((live[a] && dead[b]) || (dead[a] && live[b])) return false;
        parent[b] = a;
        live[a] |= live[b];
        dead[a] |= dead[b];
        if (shortlex_less(access[b], access[a])) access[a] = access[b];
        std::map<Symbol, int> moved = std::move(next[b]);
        for (auto& [sym, target] : moved) {
            auto it = next[a].find(sym);
            if (it == next[a].end()) {
                next[a][sym] = target;
            } else if (!fold(it->second, target)) {
                return false;
            }
        }
        return true;
    }
};

std::optional<Lts> rpni_merge(const Pta& pta, const Alphabet& alphabet) {
    MergeState st;
    size_t n = pta.nodes.size();
    st.parent.resize(n);
    std::iota(st.parent.begin(), st.parent.end(), 0);
    st.live.resize(n);
    st.dead.resize(n);
    st.next.resize(n);
    st.access.resize(n);
    for (size_t i = 0; i < n; ++i) {
        st.live[i] = pta.nodes[i].live;
        st.dead[i] = pta.nodes[i].dead;
        for (const auto& [a, c] : pta.nodes[i].children) st.next[i][a] = c;
        int node = static_cast<int>(i);
        Trace acc;
        while (pta.nodes[node].parent >= 0) {
            acc.push_back(pta.nodes[node].via);
            node = pta.nodes[node].parent;
        }
        std::reverse(acc.begin(), acc.end());
        st.access[i] = std::move(acc);
    }

    std::vector<int> reds{0};
    while (true) {
        // Fringe: non-dead child classes of red classes not yet red.
        std::vector<int> blues;
        for (int r : reds) {
            for (const auto& [sym, child] : st.next[st.find(r)]) {
                int c = st.find(child);
                if (st.dead[c]) continue;
                if (std::find(reds.begin(), reds.end(), c) != reds.end()) continue;
                if (std::find(blues.begin(), blues.end(), c) == blues.end()) blues.push_back(c);
            }
        }
        if (blues.empty()) break;
        int blue = *std::min_element(blues.begin(), blues.end(), [&](int a, int b) {
            return shortlex_less(st.access[a], st.access[b]);
        });
        bool merged = false;
        std::vector<int> red_order = reds;
        std::sort(red_order.begin(), red_order.end(), [&](int a, int b) {
            return shortlex_less(st.access[st.find(a)], st.access[st.find(b)]);
        });
        for (int red : red_order) {
            MergeState trial = st;
            if (trial.fold(red, blue)) {
                st = std::move(trial);
                merged = true;
                break;
            }
        }
        if (!merged) reds.push_back(blue);
        for (int& r : reds) r = st.find(r);
        std::sort(reds.begin(), reds.end());
        reds.erase(std::unique(reds.begin(), reds.end()), reds.end());
    }

    // Live classes become states; free and dead classes fall into the sink.
    std::vector<int> live_reds;
    for (int r : reds)
        if (st.live[st.find(r)]) live_reds.push_back(st.find(r));
    std::sort(live_reds.begin(), live_reds.end());
    live_reds.erase(std::unique(live_reds.begin(), live_reds.end()), live_reds.end());
    if (live_reds.empty()) return std::nullopt;

    int root = st.find(0);
    std::map<int, int> state_of;
    std::vector<int> order{root};
    state_of[root] = 0;
    for (size_t i = 0; i < order.size(); ++i) {
        for (const auto& [sym, child] : st.next[order[i]]) {
            int c = st.find(child);
            if (!st.live[c] || state_of.count(c)) continue;
            state_of[c] = static_cast<int>(order.size());
            order.push_back(c);
        }
    }

    Lts lts(static_cast<int>(order.size()), alphabet, 0);
    for (size_t i = 0; i < order.size(); ++i)
        for (const auto& [sym, child] : st.next[order[i]]) {
            int c = st.find(child);
            if (st.live[c]) lts.add_transition(static_cast<int>(i), sym, state_of.at(c));
        }
    return lts;
}

// Exact bounded search: assign prefix-tree nodes to at most `bound` states
// (or the sink). Nodes are picked fewest-admissible-choices first, which
// makes forced assignments propagate before any branching; fresh states are
// numbered in creation order for symmetry breaking and the sink is tried
// first so unconstrained behavior stays rejected. A step budget keeps
// pathological instances from stalling the learner; exhaustion is reported
// so the caller can fall back to a heuristic automaton.
class ExactSearch {
public:
    ExactSearch(const Pta& pta, const std::vector<Symbol>& symbols, int bound, long budget)
        : pta_(pta), symbols_(symbols), bound_(bound), budget_(budget) {
        assign_.assign(pta.nodes.size(), kUnset);
        delta_.assign(static_cast<size_t>(bound) * std::max<size_t>(symbols.size(), 1), kUnset);
        sym_index_.assign(symbols.empty() ? 0 : symbols.back().id + 1, -1);
        for (size_t i = 0; i < symbols.size(); ++i) sym_index_[symbols[i].id] = static_cast<int>(i);
    }

    bool exhausted() const { return exhausted_; }

    std::optional<Lts> run(const Alphabet& alphabet) {
        assign_[0] = 0;
        used_ = 1;
        for (const auto& [sym, child] : pta_.nodes[0].children) frontier_.push_back(child);
        if (!search()) return std::nullopt;
        Lts lts(bound_, alphabet, 0);
        for (int s = 0; s < bound_; ++s)
            for (size_t a = 0; a < symbols_.size(); ++a) {
                int t = delta_[s * symbols_.size() + a];
                if (t >= 0) lts.add_transition(s, symbols_[a], t);
            }
        return lts;
    }

private:
    static constexpr int kUnset = -2;
    static constexpr int kSink = -1;

    int& delta(int state, Symbol a) { return delta_[state * symbols_.size() + sym_index_[a.id]]; }

    // Admissible targets for a frontier node, cheapest order: sink, existing
    // states, one fresh state. Returns false in `viable` when none exist.
    void options_for(int node, std::vector<int>& out) const {
        out.clear();
        const Pta::Node& n = pta_.nodes[node];
        int parent_state = assign_[n.parent];
        if (parent_state == kSink) {
            if (!n.live) out.push_back(kSink);
            return;
        }
        int slot = delta_[parent_state * symbols_.size() + sym_index_[n.via.id]];
        if (slot != kUnset) {
            bool ok = slot == kSink ? !n.live : !n.dead;
            if (ok) out.push_back(slot);
            return;
        }
        if (!n.live) out.push_back(kSink);
        if (!n.dead) {
            for (int s = 0; s < used_; ++s) out.push_back(s);
            if (used_ < bound_) out.push_back(used_);
        }
    }

    bool search() {
        if (exhausted_ || --budget_ < 0) {
            exhausted_ = true;
            return false;
        }
        if (frontier_.empty()) return true;

        // fewest options first; ties on the smaller node id for determinism
        std::vector<int> options;
        size_t pick = 0;
        size_t best_count = SIZE_MAX;
        std::vector<int> best_options;
        for (size_t i = 0; i < frontier_.size(); ++i) {
            options_for(frontier_[i], options);
            if (options.size() < best_count ||
                (options.size() == best_count && frontier_[i] < frontier_[pick])) {
                pick = i;
                best_count = options.size();
                best_options = options;
                if (best_count == 0) return false;
                if (best_count == 1) break;
            }
        }

        int node = frontier_[pick];
        std::swap(frontier_[pick], frontier_.back());
        frontier_.pop_back();
        size_t frontier_mark = frontier_.size();
        for (const auto& [sym, child] : pta_.nodes[node].children) frontier_.push_back(child);

        const Pta::Node& n = pta_.nodes[node];
        int parent_state = assign_[n.parent];
        for (int choice : best_options) {
            bool fresh = parent_state != kSink && choice == used_;
            int* slot = nullptr;
            if (parent_state != kSink) {
                slot = &delta(parent_state, n.via);
                bool forced = *slot != kUnset;
                if (!forced) *slot = choice;
                assign_[node] = choice;
                if (fresh) ++used_;
                if (search()) return true;
                if (fresh) --used_;
                assign_[node] = kUnset;
                if (!forced) *slot = kUnset;
            } else {
                assign_[node] = choice;
                if (search()) return true;
                assign_[node] = kUnset;
            }
            if (exhausted_) break;
        }

        frontier_.resize(frontier_mark);
        frontier_.push_back(node);
        std::swap(frontier_[pick], frontier_.back());
        return false;
    }

    const Pta& pta_;
    const std::vector<Symbol>& symbols_;
    int bound_;
    long budget_;
    bool exhausted_ = false;
    int used_ = 1;
    std::vector<int> assign_;
    std::vector<int> delta_;
    std::vector<int> sym_index_;
    std::vector<int> frontier_;
};

}  // namespace

int hypothesis_lower_bound(const ObservationTable& table) {
    std::vector<const Trace*> rows;
    for (const Trace& r : table.rows()) rows.push_back(&r);
    auto defined_count = [&](const Trace& r) {
        int n = 0;
        for (const Trace& e : table.suffixes())
            if (table.cell(concat(r, e)) != Cell::unknown) ++n;
        return n;
    };
    std::stable_sort(rows.begin(), rows.end(),
                     [&](const Trace* a, const Trace* b) { return defined_count(*a) > defined_count(*b); });

    std::vector<const Trace*> chosen;
    for (const Trace* r : rows) {
        bool clashes_all = true;
        for (const Trace* c : chosen) {
            if (table.row_compatible(*r, *c)) {
                clashes_all = false;
                break;
            }
        }
        if (clashes_all) chosen.push_back(r);
    }
    bool has_sink_row = false;
    for (const Trace* c : chosen)
        if (!has_positive_cell(table, *c)) has_sink_row = true;
    int bound = static_cast<int>(chosen.size()) - (has_sink_row ? 1 : 0);
    return std::max(1, bound);
}

bool lts_consistent_with(const Lts& lts, const ObservationTable& table) {
    if (!(lts.alphabet() == table.alphabet())) return false;
    for (const auto& [trace, value] : table.defined_cells())
        if (lts.accepts(trace) != (value == Cell::positive)) return false;
    return true;
}

Lts build_hypothesis(const ObservationTable& table, const Lts* previous) {
    Pta pta = build_pta(table);  // also validates feasibility

    if (fully_defined(table) && std::holds_alternative<TableOk>(table.check_closed_consistent())) {
        Lts lts = classic_construction(table);
        if (!lts_consistent_with(lts, table))
            throw ConsistencyError("row construction disagrees with the table");
        return lts;
    }

    int bound = hypothesis_lower_bound(table);
    if (previous && previous->num_states() == bound && lts_consistent_with(*previous, table))
        return *previous;

    std::optional<Lts> heuristic = rpni_merge(pta, table.alphabet());
    if (heuristic && !lts_consistent_with(*heuristic, table)) heuristic.reset();
    if (heuristic && heuristic->num_states() == bound) return *heuristic;

    int ceiling = heuristic ? heuristic->num_states() : static_cast<int>(pta.nodes.size()) + 1;
    std::vector<Symbol> symbols = table.alphabet().symbols();
    constexpr long kBudgetPerBound = 2'000'000;
    for (int k = bound; k < ceiling; ++k) {
        ExactSearch search(pta, symbols, k, kBudgetPerBound);
        if (auto lts = search.run(table.alphabet())) {
            if (!lts_consistent_with(*lts, table))
                throw ConsistencyError("exact search produced an inconsistent automaton");
            return *lts;
        }
        // Out of budget at this bound: settle for a consistent automaton
        // rather than stalling the learner on a hard identification instance.
        if (search.exhausted()) break;
    }
    if (heuristic) return *heuristic;
    Lts fallback = pta_automaton(pta, table.alphabet());
    if (!lts_consistent_with(fallback, table))
        throw ConsistencyError("no consistent automaton found within the prefix-tree bound");
    return fallback;
}

}  // namespace parlearn
