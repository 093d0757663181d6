#include "parlearn/adapter.hpp"

#include <algorithm>
#include <deque>

#include "parlearn/errors.hpp"

namespace parlearn {

Trace interleave(const Trace& sigma, const Trace& partner, const Alphabet& own_alphabet,
                 const Alphabet& partner_alphabet) {
    Alphabet shared = own_alphabet.intersect(partner_alphabet);
    Trace out;
    out.reserve(sigma.size() + partner.size());
    size_t ip = 0, is = 0;
    while (true) {
        while (ip < partner.size() && !shared.contains(partner[ip])) out.push_back(partner[ip++]);
        while (is < sigma.size() && !shared.contains(sigma[is])) out.push_back(sigma[is++]);
        if (ip == partner.size() && is == sigma.size()) break;
        if (ip == partner.size() || is == sigma.size() || !(partner[ip] == sigma[is]))
            throw ContractViolation("interleave requires matching synchronizing content");
        out.push_back(sigma[is]);
        ++ip;
        ++is;
    }
    return out;
}

namespace {
bool trace_lex_less(const Trace& a, const Trace& b) { return lex_less(a, b); }
}  // namespace

Adapter::Adapter(Teacher& teacher, Observations& obs, Distribution dist, EventSink* sink)
    : teacher_(teacher), obs_(obs), dist_(std::move(dist)), sink_(sink) {
    const auto& parts = dist_.parts();
    const int universe = dist_.global().universe_size();
    for (size_t i = 0; i < parts.size(); ++i) {
        Alphabet rest(universe);
        for (size_t j = 0; j < parts.size(); ++j)
            if (j != i) rest = rest.unite(parts[j]);
        others_.push_back(rest);
        sync_.push_back(parts[i].intersect(rest));
        stores_.emplace_back();
        positive_projections_.emplace_back(&trace_lex_less);
        partner_memo_.emplace_back();
        add_to_store(static_cast<int>(i), kEpsilon);
    }
}

Trace Adapter::reduce_for_store(int component, const Trace& local) const {
    const Alphabet& sync = sync_[component];
    size_t keep = 0;
    for (size_t k = 0; k < local.size(); ++k)
        if (sync.contains(local[k])) keep = k + 1;
    return Trace(local.begin(), local.begin() + keep);
}

void Adapter::add_to_store(int component, const Trace& reduced) {
    Store& store = stores_[component];
    if (!store.index.insert(reduced).second) return;
    store.traces.push_back(reduced);
    // New cooperation opportunities invalidate every cached partner search.
    for (auto& memo : partner_memo_) memo.clear();
}

void Adapter::refresh_positive_index() {
    const auto& entries = obs_.entries();
    for (; obs_applied_ < entries.size(); ++obs_applied_) {
        const auto& [trace, verdict] = entries[obs_applied_];
        if (verdict != Verdict::positive) continue;
        for (size_t i = 0; i < dist_.parts().size(); ++i)
            positive_projections_[i].insert(project(trace, dist_.parts()[i]));
    }
}

void Adapter::seed_stores_from_observations() {
    refresh_positive_index();
    for (const auto& [trace, verdict] : obs_.entries()) {
        if (verdict != Verdict::positive) continue;
        for (size_t i = 0; i < dist_.parts().size(); ++i) {
            int component = static_cast<int>(i);
            add_to_store(component, reduce_for_store(component, project(trace, dist_.parts()[i])));
        }
    }
}

void Adapter::emit_membership(int component, const Trace& local, const Trace& global, int verdict) {
    if (!sink_) return;
    Event e;
    e.kind = verdict < 0 ? EventKind::membership_unknown : EventKind::membership_answered;
    e.component = component;
    e.round = rounds_;
    e.local = local;
    e.global = global;
    e.verdict = verdict;
    sink_->on_event(e);
}

Cell Adapter::member(int component, const Trace& sigma) {
    const Alphabet& part = dist_.parts()[component];
    for (Symbol s : sigma)
        if (!part.contains(s)) throw ContractViolation("local query outside the component alphabet");

    refresh_positive_index();
    // Prefixes of positive projections are in the projected language; no
    // global query is needed for them.
    const auto& known = positive_projections_[component];
    auto it = known.lower_bound(sigma);
    if (it != known.end() && is_prefix_of(sigma, *it)) {
        add_to_store(component, reduce_for_store(component, sigma));
        emit_membership(component, sigma, kEpsilon, 1);
        return Cell::positive;
    }

    Trace sync_content = project(sigma, others_[component]);
    std::optional<Trace> partner = first_partner(component, sync_content);
    if (!partner) {
        emit_membership(component, sigma, kEpsilon, -1);
        return Cell::unknown;
    }

    Trace global = interleave(sigma, *partner, part, others_[component]);
    Verdict verdict;
    if (auto recorded = obs_.lookup(global)) {
        verdict = *recorded;
    } else {
        verdict = teacher_.membership(global);
        obs_.record(global, verdict);
    }
    if (verdict == Verdict::positive) add_to_store(component, reduce_for_store(component, sigma));
    emit_membership(component, sigma, global, verdict == Verdict::positive ? 1 : 0);
    return to_cell(verdict);
}

std::optional<Trace> Adapter::first_partner(int component, const Trace& sync_content) {
    auto& memo = partner_memo_[component];
    auto it = memo.find(sync_content);
    if (it != memo.end()) return it->second;
    std::vector<Trace> found = search_partners(component, sync_content, 1);
    std::optional<Trace> result;
    if (!found.empty()) result = std::move(found.front());
    memo.emplace(sync_content, result);
    return result;
}

std::vector<Trace> Adapter::enumerate_partners(int component, const Trace& sync_content, size_t limit) {
    return search_partners(component, sync_content, limit);
}

// BFS over the product of the other components' store tries plus the
// required synchronizing content; first discovery paths are shortest-lex.
std::vector<Trace> Adapter::search_partners(int component, const Trace& sync_content, size_t limit) const {
    const auto& parts = dist_.parts();
    const size_t n = parts.size();
    std::vector<size_t> other_index;
    for (size_t j = 0; j < n; ++j)
        if (j != static_cast<size_t>(component)) other_index.push_back(j);

    // Store tries, one per other component; node 0 is the root.
    struct TrieNode {
        std::vector<std::pair<Symbol, int>> children;
        bool accepting = false;
    };
    std::vector<std::vector<TrieNode>> tries(other_index.size());
    for (size_t k = 0; k < other_index.size(); ++k) {
        auto& trie = tries[k];
        trie.emplace_back();
        for (const Trace& t : stores_[other_index[k]].traces) {
            int node = 0;
            for (Symbol a : t) {
                auto& kids = trie[node].children;
                auto pos = std::lower_bound(kids.begin(), kids.end(), a,
                                            [](const auto& e, Symbol s) { return e.first < s; });
                if (pos != kids.end() && pos->first == a) {
                    node = pos->second;
                } else {
                    int id = static_cast<int>(trie.size());
                    // iterator may dangle after emplace_back; recompute
                    size_t at = pos - kids.begin();
                    trie.emplace_back();
                    trie[node].children.insert(trie[node].children.begin() + at, {a, id});
                    node = id;
                }
            }
            trie[node].accepting = true;
        }
    }

    std::vector<Symbol> symbols = others_[component].symbols();
    const Alphabet& own = dist_.parts()[component];

    struct StateHash {
        size_t operator()(const std::vector<int>& v) const {
            size_t h = 1469598103934665603ull;
            for (int x : v) {
                h ^= static_cast<size_t>(static_cast<uint32_t>(x));
                h *= 1099511628211ull;
            }
            return h;
        }
    };
    // state = trie node per other component, plus progress in sync_content
    std::unordered_map<std::vector<int>, Trace, StateHash> best;
    std::deque<std::vector<int>> queue;
    std::vector<int> start(other_index.size() + 1, 0);
    best.emplace(start, kEpsilon);
    queue.push_back(start);

    auto accepting = [&](const std::vector<int>& state) {
        for (size_t k = 0; k < other_index.size(); ++k)
            if (!tries[k][state[k]].accepting) return false;
        return state.back() == static_cast<int>(sync_content.size());
    };

    std::vector<Trace> out;
    if (accepting(start)) out.push_back(kEpsilon);
    while (!queue.empty() && out.size() < limit) {
        std::vector<int> state = queue.front();
        queue.pop_front();
        const Trace& path = best.at(state);
        for (Symbol a : symbols) {
            std::vector<int> next = state;
            bool alive = true;
            for (size_t k = 0; k < other_index.size() && alive; ++k) {
                if (!parts[other_index[k]].contains(a)) continue;
                int child = -1;
                for (const auto& [sym, c] : tries[k][state[k]].children)
                    if (sym == a) child = c;
                if (child < 0)
                    alive = false;
                else
                    next[k] = child;
            }
            if (!alive) continue;
            if (own.contains(a)) {
                int pos = state.back();
                if (pos >= static_cast<int>(sync_content.size()) || !(sync_content[pos] == a)) continue;
                next.back() = pos + 1;
            }
            Trace extended = path;
            extended.push_back(a);
            auto [slot, inserted] = best.emplace(std::move(next), std::move(extended));
            if (!inserted) continue;
            if (accepting(slot->first)) {
                out.push_back(slot->second);
                if (out.size() >= limit) break;
            }
            queue.push_back(slot->first);
        }
    }
    return out;
}

Adapter::RoundOutcome Adapter::equivalence_round(const std::vector<Lts>& hypotheses) {
    if (hypotheses.size() != dist_.parts().size())
        throw ContractViolation("one hypothesis per component is required");
    ++rounds_;
    Lts composite = parallel_compose(hypotheses);
    Teacher::Answer answer = teacher_.equivalence(composite);
    RoundOutcome outcome;
    if (answer.yes) {
        outcome.yes = true;
        if (sink_) {
            Event e;
            e.kind = EventKind::equivalence_yes;
            e.round = rounds_;
            sink_->on_event(e);
        }
        return outcome;
    }
    outcome.counterexample = answer.counterexample;
    outcome.verdict = answer.verdict;
    if (sink_) {
        Event e;
        e.kind = EventKind::equivalence_cex;
        e.round = rounds_;
        e.global = answer.counterexample;
        e.verdict = answer.verdict == Verdict::positive ? 1 : 0;
        sink_->on_event(e);
    }
    return outcome;
}

std::vector<Adapter::Delivery> Adapter::deliver_local(const Trace& cex, Verdict verdict,
                                                      const std::vector<Lts>& hypotheses) {
    if (cex.empty()) throw ContractViolation("a counter-example cannot be empty");
    const auto& parts = dist_.parts();
    refresh_positive_index();
    if (verdict == Verdict::positive) {
        for (size_t i = 0; i < parts.size(); ++i) {
            int component = static_cast<int>(i);
            add_to_store(component, reduce_for_store(component, project(cex, parts[i])));
        }
    }

    Symbol last = cex.back();
    bool in_composite = verdict == Verdict::negative;  // a counter-example is in exactly one language
    std::vector<Delivery> deliveries;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (!parts[i].contains(last)) continue;
        Trace local = project(cex, parts[i]);
        if (hypotheses[i].accepts(local) != in_composite) continue;
        deliveries.push_back({static_cast<int>(i), std::move(local), verdict});
        if (sink_) {
            Event e;
            e.kind = EventKind::cex_delivered;
            e.component = static_cast<int>(i);
            e.round = rounds_;
            e.local = deliveries.back().local;
            e.verdict = verdict == Verdict::positive ? 1 : 0;
            sink_->on_event(e);
        }
    }
    return deliveries;
}

}  // namespace parlearn
