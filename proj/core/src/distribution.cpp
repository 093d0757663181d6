#include "parlearn/distribution.hpp"

#include <algorithm>
#include <map>

#include "parlearn/errors.hpp"

namespace parlearn {

Distribution::Distribution(Alphabet global, std::vector<Alphabet> parts)
    : global_(std::move(global)), parts_(std::move(parts)) {
    if (parts_.empty()) throw ContractViolation("a distribution needs at least one part");
    std::sort(parts_.begin(), parts_.end(), Alphabet::lex_less);
    parts_.erase(std::unique(parts_.begin(), parts_.end()), parts_.end());
    Alphabet covered(global_.universe_size());
    for (const Alphabet& p : parts_) {
        if (!p.subset_of(global_)) throw ContractViolation("distribution part outside the global alphabet");
        covered = covered.unite(p);
    }
    if (!(covered == global_)) throw ContractViolation("distribution parts must cover the global alphabet");
}

Distribution Distribution::singletons(const Alphabet& global) {
    std::vector<Alphabet> parts;
    for (Symbol s : global.symbols()) {
        Alphabet one(global.universe_size());
        one.add(s);
        parts.push_back(std::move(one));
    }
    return Distribution(global, std::move(parts));
}

Distribution Distribution::with_part(const Alphabet& extra) const {
    std::vector<Alphabet> parts = parts_;
    parts.push_back(extra);
    return Distribution(global_, std::move(parts));
}

const Trace& DistributionCex::positive_for(const Distribution& dist, const Alphabet& part) const {
    for (int i = 0; i < dist.size(); ++i)
        if (dist.parts()[i] == part) return positives[i];
    throw ContractViolation("alphabet is not a part of the distribution");
}

Distribution canonicalize(const Distribution& dist) {
    std::vector<Alphabet> kept;
    for (const Alphabet& p : dist.parts()) {
        bool strictly_contained = false;
        for (const Alphabet& q : dist.parts()) {
            if (!(p == q) && p.subset_of(q)) {
                strictly_contained = true;
                break;
            }
        }
        if (!strictly_contained) kept.push_back(p);
    }
    return Distribution(dist.global(), std::move(kept));
}

bool less_connecting(const Distribution& d1, const Distribution& d2) {
    if (!(d1.global() == d2.global()))
        throw ContractViolation("connectivity preorder requires one global alphabet");
    for (const Alphabet& p : d1.parts()) {
        bool contained = false;
        for (const Alphabet& q : d2.parts()) {
            if (p.subset_of(q)) {
                contained = true;
                break;
            }
        }
        if (!contained) return false;
    }
    return true;
}

bool preorder_equivalent(const Distribution& d1, const Distribution& d2) {
    return less_connecting(d1, d2) && less_connecting(d2, d1);
}

bool is_product_observation(const Observations& obs, const Distribution& dist) {
    if (!(dist.global() == obs.alphabet()))
        throw ContractViolation("distribution global alphabet must match the store alphabet");
    // Positive entries always satisfy the conjunction, so only negative
    // entries can disagree with their local projections.
    for (const auto& [trace, verdict] : obs.entries()) {
        if (verdict == Verdict::positive) continue;
        bool all_locally_positive = true;
        for (const Alphabet& part : dist.parts()) {
            const LocalView& view = obs.localize(part);
            auto it = view.verdicts.find(project(trace, part));
            if (it == view.verdicts.end() || it->second == Verdict::negative) {
                all_locally_positive = false;
                break;
            }
        }
        if (all_locally_positive) return false;
    }
    return true;
}

std::optional<DistributionCex> find_ced(const Observations& obs, const Distribution& dist,
                                        const std::optional<std::pair<Trace, Verdict>>& last) {
    if (!(dist.global() == obs.alphabet()))
        throw ContractViolation("distribution global alphabet must match the store alphabet");

    const auto& entries = obs.entries();
    const auto& parts = dist.parts();

    auto try_negative = [&](const Trace& negative) -> std::optional<DistributionCex> {
        DistributionCex cex;
        cex.negative = negative;
        cex.positives.resize(parts.size());
        for (size_t i = 0; i < parts.size(); ++i) {
            const LocalView& view = obs.localize(parts[i]);
            auto it = view.first_positive.find(project(negative, parts[i]));
            if (it == view.first_positive.end()) return std::nullopt;
            cex.positives[i] = entries[it->second].first;
        }
        return cex;
    };

    // A fresh negative entry can only be the counter-example's own negative
    // trace when the distribution modeled everything before it. A fresh
    // positive entry shows up in the image on its own: it is the newest
    // recording, so wherever its projection matches it is the only match or
    // the first-hit index already points at an equivalent witness.
    if (last && last->second == Verdict::negative) return try_negative(last->first);

    for (const auto& [trace, verdict] : entries) {
        if (verdict == Verdict::positive) continue;
        if (auto cex = try_negative(trace)) return cex;
    }
    return std::nullopt;
}

namespace {

std::vector<Symbol> symbol_multiset(const Trace& t) {
    std::vector<Symbol> out = t;
    std::sort(out.begin(), out.end());
    return out;
}

// Multiset symmetric difference of the two traces' symbols.
std::vector<Symbol> multiset_delta(const Trace& a, const Trace& b) {
    std::vector<Symbol> ma = symbol_multiset(a), mb = symbol_multiset(b);
    std::vector<Symbol> out;
    std::set_symmetric_difference(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(out));
    return out;
}

}  // namespace

std::vector<Symbol> multiplicity_discrepancies(const DistributionCex& cex, const Distribution& dist,
                                               const Alphabet& part) {
    return multiset_delta(cex.negative, cex.positive_for(dist, part));
}

std::vector<std::pair<Symbol, Symbol>> order_discrepancies(const DistributionCex& cex, const Distribution& dist,
                                                           const Alphabet& part) {
    const Trace& positive = cex.positive_for(dist, part);
    std::vector<Symbol> delta = multiset_delta(cex.negative, positive);
    Alphabet agreed(dist.global().universe_size());
    for (Symbol s : dist.global().symbols()) agreed.add(s);
    for (Symbol s : delta) agreed.remove(s);

    Trace neg = project(cex.negative, agreed);
    Trace pos = project(positive, agreed);

    // pi maps positions of neg to positions in pos, sending the l-th
    // occurrence of each symbol to its l-th occurrence.
    std::map<Symbol, std::vector<int>> occurrences;
    for (int j = 0; j < static_cast<int>(pos.size()); ++j) occurrences[pos[j]].push_back(j);
    std::map<Symbol, int> used;
    std::vector<int> pi(neg.size());
    for (int j = 0; j < static_cast<int>(neg.size()); ++j) {
        auto it = occurrences.find(neg[j]);
        int k = used[neg[j]]++;
        if (it == occurrences.end() || k >= static_cast<int>(it->second.size()))
            throw ContractViolation("traces disagree outside the multiplicity difference");
        pi[j] = it->second[k];
    }

    std::vector<std::pair<Symbol, Symbol>> out;
    for (int k = 0; k < static_cast<int>(neg.size()); ++k) {
        for (int j = k + 1; j < static_cast<int>(neg.size()); ++j) {
            if (pi[k] > pi[j]) {
                Symbol a = neg[j], b = neg[k];
                if (b < a) std::swap(a, b);
                out.emplace_back(a, b);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

struct PartNeeds {
    std::vector<Symbol> multiplicity;
    std::vector<std::pair<Symbol, Symbol>> order;
};

bool delta_satisfies(const Alphabet& delta, const std::vector<PartNeeds>& needs) {
    for (const PartNeeds& n : needs) {
        bool ok = false;
        for (Symbol s : n.multiplicity) {
            if (delta.contains(s)) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            for (const auto& [a, b] : n.order) {
                if (delta.contains(a) && delta.contains(b)) {
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) return false;
    }
    return true;
}

}  // namespace

Alphabet choose_discrepancy(const DistributionCex& cex, const Distribution& dist, DiscrepancyPolicy policy) {
    std::vector<PartNeeds> needs;
    Alphabet universe(dist.global().universe_size());
    for (const Alphabet& part : dist.parts()) {
        PartNeeds n;
        n.multiplicity = multiplicity_discrepancies(cex, dist, part);
        std::sort(n.multiplicity.begin(), n.multiplicity.end());
        n.multiplicity.erase(std::unique(n.multiplicity.begin(), n.multiplicity.end()), n.multiplicity.end());
        n.order = order_discrepancies(cex, dist, part);
        if (n.multiplicity.empty() && n.order.empty())
            throw ContractViolation("not a counter-example: a part has no discrepancy");
        for (Symbol s : n.multiplicity) universe.add(s);
        for (const auto& [a, b] : n.order) {
            universe.add(a);
            universe.add(b);
        }
        needs.push_back(std::move(n));
    }

    if (policy == DiscrepancyPolicy::first_found) {
        Alphabet delta(dist.global().universe_size());
        for (const PartNeeds& n : needs) {
            if (!n.multiplicity.empty()) {
                delta.add(n.multiplicity.front());
            } else {
                delta.add(n.order.front().first);
                delta.add(n.order.front().second);
            }
        }
        return delta;
    }

    // Minimum cardinality, ties broken lexicographically on sorted symbol
    // ids: enumerate k-combinations of the relevant symbols in lex order.
    std::vector<Symbol> pool = universe.symbols();
    int n = static_cast<int>(pool.size());
    for (int k = 1; k <= n; ++k) {
        std::vector<int> comb(k);
        for (int i = 0; i < k; ++i) comb[i] = i;
        while (true) {
            Alphabet delta(dist.global().universe_size());
            for (int idx : comb) delta.add(pool[idx]);
            if (delta_satisfies(delta, needs)) return delta;
            int i = k - 1;
            while (i >= 0 && comb[i] == n - k + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    throw ContractViolation("no discrepancy covers the counter-example");
}

RefineResult refine(const Distribution& dist, const Observations& obs, DiscrepancyPolicy policy,
                    const std::optional<std::pair<Trace, Verdict>>& last) {
    if (is_product_observation(obs, dist))
        throw ContractViolation("refine requires a distribution that does not model the store");

    RefineResult result;
    result.distribution = dist;
    int symbol_count = dist.global().size();
    long cap = symbol_count < 20 ? (1L << symbol_count) : 1'000'000L;
    // The restriction to counter-examples mentioning `last` stays valid
    // across iterations as long as the distribution modeled the store before
    // that entry: each added discrepancy only makes the distribution more
    // connecting. It is still only a search hint; once the restricted search
    // dries up we fall back to the full search to guarantee the result
    // models the store.
    std::optional<std::pair<Trace, Verdict>> hint = last;
    while (true) {
        auto cex = find_ced(obs, result.distribution, hint);
        if (!cex) {
            if (!hint || is_product_observation(obs, result.distribution)) break;
            hint.reset();
            continue;
        }
        Alphabet delta = choose_discrepancy(*cex, result.distribution, policy);
        result.added.push_back(delta);
        result.distribution = canonicalize(result.distribution.with_part(delta));
        if (++result.iterations > cap)
            throw ConsistencyError("distribution refinement exceeded its iteration bound");
    }
    return result;
}

Distribution optimize(const Distribution& dist, const std::vector<Alphabet>& history,
                      const OptimizeOptions& options) {
    if (history.empty()) return canonicalize(dist);

    const int universe = dist.global().universe_size();
    std::vector<Symbol> symbols = dist.global().symbols();

    std::vector<Alphabet> edges = history;
    std::sort(edges.begin(), edges.end(), Alphabet::lex_less);
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // 2-section of the discrepancy hypergraph: symbols co-occurring in an edge.
    auto adjacent = [&](Symbol a, Symbol b) {
        for (const Alphabet& e : edges)
            if (e.contains(a) && e.contains(b)) return true;
        return false;
    };
    std::unordered_map<int32_t, int> degree;
    for (Symbol a : symbols) {
        int d = 0;
        for (Symbol b : symbols)
            if (!(a == b) && adjacent(a, b)) ++d;
        degree[a.id] = d;
    }

    // Grow cliques greedily from the highest-degree unused symbol.
    std::vector<Alphabet> cover;
    Alphabet used(universe);
    auto next_seed = [&]() -> std::optional<Symbol> {
        std::optional<Symbol> best;
        for (Symbol s : symbols) {
            if (used.contains(s) || degree[s.id] == 0) continue;
            if (!best || degree[s.id] > degree[best->id]) best = s;
        }
        return best;
    };
    while (auto seed = next_seed()) {
        Alphabet clique(universe);
        clique.add(*seed);
        used.add(*seed);
        while (true) {
            std::optional<Symbol> candidate;
            for (Symbol s : symbols) {
                if (used.contains(s)) continue;
                bool joins_all = true;
                for (Symbol c : clique.symbols()) {
                    if (!adjacent(s, c)) {
                        joins_all = false;
                        break;
                    }
                }
                if (joins_all && (!candidate || degree[s.id] > degree[candidate->id])) candidate = s;
            }
            if (!candidate) break;
            clique.add(*candidate);
            used.add(*candidate);
        }
        cover.push_back(std::move(clique));
    }

    auto covered_by = [&](const Alphabet& a) {
        for (const Alphabet& c : cover)
            if (a.subset_of(c)) return true;
        return false;
    };
    // Extend to an edge cover of the history, then make sure the current
    // distribution stays dominated so modeled observations stay modeled.
    for (const Alphabet& e : edges)
        if (!covered_by(e)) cover.push_back(e);
    for (const Alphabet& p : dist.parts())
        if (!covered_by(p)) cover.push_back(p);

    int max_merged = options.merge_max_size.value_or((dist.global().size() + 1) / 2);
    bool merged = true;
    while (merged) {
        merged = false;
        std::sort(cover.begin(), cover.end(), Alphabet::lex_less);
        for (size_t i = 0; i < cover.size() && !merged; ++i) {
            for (size_t j = i + 1; j < cover.size() && !merged; ++j) {
                if (cover[i].intersect(cover[j]).size() < options.merge_min_shared) continue;
                Alphabet fused = cover[i].unite(cover[j]);
                if (fused.size() > max_merged) continue;
                cover.erase(cover.begin() + j);
                cover.erase(cover.begin() + i);
                cover.push_back(std::move(fused));
                merged = true;
            }
        }
    }

    return canonicalize(Distribution(dist.global(), std::move(cover)));
}

std::string format_distribution(const Distribution& dist, const SymbolTable& table) {
    // Name-ordered so the text is stable under symbol interning order.
    std::vector<std::string> lines;
    for (const Alphabet& part : dist.parts()) {
        std::vector<std::string> names;
        for (Symbol s : part.symbols()) names.push_back(table.name(s));
        std::sort(names.begin(), names.end());
        std::string line;
        for (const std::string& n : names) {
            if (!line.empty()) line += ' ';
            line += n;
        }
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const std::string& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace parlearn
