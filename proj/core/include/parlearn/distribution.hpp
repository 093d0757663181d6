#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "parlearn/observations.hpp"

namespace parlearn {

// A set of sub-alphabets covering the global alphabet: the current
// decomposition hypothesis. Parts are kept sorted (Alphabet::lex_less) and
// deduplicated, so equality is set equality.
class Distribution {
public:
    Distribution() = default;
    Distribution(Alphabet global, std::vector<Alphabet> parts);

    static Distribution singletons(const Alphabet& global);

    const Alphabet& global() const { return global_; }
    const std::vector<Alphabet>& parts() const { return parts_; }
    int size() const { return static_cast<int>(parts_.size()); }

    Distribution with_part(const Alphabet& extra) const;

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    Alphabet global_;
    std::vector<Alphabet> parts_;
};

// A witness that a distribution cannot model the store: a negative trace
// whose projection onto every part matches the projection of some positive
// trace. `positives` is aligned with dist.parts().
struct DistributionCex {
    Trace negative;
    std::vector<Trace> positives;

    const Trace& positive_for(const Distribution& dist, const Alphabet& part) const;
};

// Removes every part strictly contained in another; idempotent and
// counter-example-emptiness preserving.
Distribution canonicalize(const Distribution& dist);

// Connectivity preorder: every part of d1 is contained in some part of d2.
bool less_connecting(const Distribution& d1, const Distribution& d2);
bool preorder_equivalent(const Distribution& d1, const Distribution& d2);

// True iff every recorded verdict equals the conjunction of its local
// verdicts under the distribution's projections.
bool is_product_observation(const Observations& obs, const Distribution& dist);

// Searches for a counter-example to `dist` modeling `obs`. When `last` is
// the store entry recorded most recently, and the distribution modeled the
// store before it, the search may restrict itself to counter-examples
// mentioning that entry; the result is still empty iff none exists at all.
std::optional<DistributionCex> find_ced(const Observations& obs, const Distribution& dist,
                                        const std::optional<std::pair<Trace, Verdict>>& last = std::nullopt);

// Symbols occurring a different number of times in the negative trace and
// the matched positive of `part`; multiset symmetric difference, sorted.
std::vector<Symbol> multiplicity_discrepancies(const DistributionCex& cex, const Distribution& dist,
                                               const Alphabet& part);

// Unordered symbol pairs inverted between the two traces once restricted to
// their agreed multiset, under the stable permutation that keeps equal
// symbols in relative order. Pairs are normalized (first < second) and sorted.
std::vector<std::pair<Symbol, Symbol>> order_discrepancies(const DistributionCex& cex, const Distribution& dist,
                                                           const Alphabet& part);

enum class DiscrepancyPolicy { greedy_min, first_found };

// A symbol set whose addition as a new part breaks the counter-example for
// every existing part. greedy_min picks a minimum-cardinality set with
// lexicographic tie-break; first_found assembles one cheaply.
Alphabet choose_discrepancy(const DistributionCex& cex, const Distribution& dist,
                            DiscrepancyPolicy policy = DiscrepancyPolicy::greedy_min);

struct RefineResult {
    Distribution distribution;
    std::vector<Alphabet> added;  // discrepancies, in addition order
    int iterations = 0;
};

// Adds one chosen discrepancy per counter-example until none remains,
// canonicalizing along the way. Requires that `dist` does not model `obs`.
RefineResult refine(const Distribution& dist, const Observations& obs,
                    DiscrepancyPolicy policy = DiscrepancyPolicy::greedy_min,
                    const std::optional<std::pair<Trace, Verdict>>& last = std::nullopt);

struct OptimizeOptions {
    int merge_min_shared = 2;           // merge parts sharing at least this many symbols
    std::optional<int> merge_max_size;  // default: ceil(|global|/2)
};

// Rebuilds the distribution as an edge cover of the discrepancy hypergraph:
// greedily grown cliques, extended to cover every discrepancy in `history`
// and every part of `dist`, optionally merged, then canonicalized. The
// result is never less connecting than `dist`.
Distribution optimize(const Distribution& dist, const std::vector<Alphabet>& history,
                      const OptimizeOptions& options = {});

std::string format_distribution(const Distribution& dist, const SymbolTable& table);

}  // namespace parlearn
