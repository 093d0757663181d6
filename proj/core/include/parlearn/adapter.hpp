#pragma once

#include "parlearn/distribution.hpp"
#include "parlearn/event_log.hpp"
#include "parlearn/table.hpp"
#include "parlearn/teacher.hpp"

namespace parlearn {

// Deterministic shuffle of two traces with matching synchronizing content:
// between consecutive shared symbols the partner's local block is emitted
// first, then sigma's. The result projects back to sigma on own_alphabet and
// to partner on partner_alphabet.
Trace interleave(const Trace& sigma, const Trace& partner, const Alphabet& own_alphabet,
                 const Alphabet& partner_alphabet);

// Translates local learner queries into global Teacher queries by composing
// them with known positive behavior of the other components. Holds, per
// component, the set of positive local traces in storage-reduced form: only
// the shortest prefix carrying the same synchronizing actions is kept.
class Adapter {
public:
    Adapter(Teacher& teacher, Observations& obs, Distribution dist, EventSink* sink = nullptr);

    const Distribution& distribution() const { return dist_; }

    // Seeds every store with the reduced projections of the positive
    // entries recorded so far (epsilon is always present).
    void seed_stores_from_observations();

    // Membership for component i over its part alphabet; unknown when no
    // cooperating global query can be built.
    Cell member(int component, const Trace& sigma);

    struct RoundOutcome {
        bool yes = false;
        Trace counterexample;
        Verdict verdict = Verdict::negative;
    };
    // Composes the hypotheses and asks one global equivalence query.
    RoundOutcome equivalence_round(const std::vector<Lts>& hypotheses);

    struct Delivery {
        int component;
        Trace local;
        Verdict verdict;
    };
    // The counter-example goes to every component whose alphabet contains
    // its last action and whose local hypothesis agrees with the composite
    // on it; on a positive counter-example all stores grow first.
    std::vector<Delivery> deliver_local(const Trace& cex, Verdict verdict,
                                        const std::vector<Lts>& hypotheses);

    // Storage-reduced form: shortest prefix with the same synchronizing
    // actions under the current distribution.
    Trace reduce_for_store(int component, const Trace& local) const;

    const std::vector<Trace>& store(int component) const { return stores_[component].traces; }

    // Members of the composed other-component store whose projection onto
    // the component's alphabet equals `sync_content`; shortest-lex order.
    std::vector<Trace> enumerate_partners(int component, const Trace& sync_content,
                                          size_t limit = SIZE_MAX);

    int rounds() const { return rounds_; }

private:
    struct Store {
        std::vector<Trace> traces;
        std::unordered_set<Trace, TraceHash> index;
    };

    void add_to_store(int component, const Trace& reduced);
    void refresh_positive_index();
    std::optional<Trace> first_partner(int component, const Trace& sync_content);
    std::vector<Trace> search_partners(int component, const Trace& sync_content, size_t limit) const;
    void emit_membership(int component, const Trace& local, const Trace& global, int verdict);

    Teacher& teacher_;
    Observations& obs_;
    Distribution dist_;
    EventSink* sink_;
    std::vector<Alphabet> others_;  // union of the other parts, per component
    std::vector<Alphabet> sync_;    // part ∩ others, per component
    std::vector<Store> stores_;
    // Projections of positive global observations, per component; sorted so
    // prefix membership is a range lookup.
    std::vector<std::set<Trace, bool (*)(const Trace&, const Trace&)>> positive_projections_;
    size_t obs_applied_ = 0;
    std::vector<std::unordered_map<Trace, std::optional<Trace>, TraceHash>> partner_memo_;
    int rounds_ = 0;
};

}  // namespace parlearn
