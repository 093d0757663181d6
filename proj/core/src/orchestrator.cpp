#include "parlearn/orchestrator.hpp"

#include <chrono>

#include "parlearn/errors.hpp"

namespace parlearn {

namespace {

struct TimeoutSignal {};

using Clock = std::chrono::steady_clock;

}  // namespace

CexScope classify_counterexample(const Observations& obs, const Distribution& dist,
                                 const std::pair<Trace, Verdict>& cex) {
    auto recorded = obs.lookup(cex.first);
    if (!recorded || *recorded != cex.second)
        throw ContractViolation("classification requires the counter-example to be recorded first");
    return is_product_observation(obs, dist) ? CexScope::local : CexScope::global;
}

RunResult run_learning(Teacher& teacher, const RunConfig& config) {
    RunResult result;
    Observations obs(teacher.alphabet());
    Distribution dist;
    if (config.given_distribution) {
        if (!(config.given_distribution->global() == teacher.alphabet()))
            throw ContractViolation("given distribution does not cover the SUL alphabet");
        dist = *config.given_distribution;
    } else {
        dist = Distribution::singletons(teacher.alphabet());
    }

    std::optional<Clock::time_point> deadline;
    if (config.time_budget_seconds > 0)
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(config.time_budget_seconds));
    auto check_deadline = [&] {
        if (deadline && Clock::now() > *deadline) throw TimeoutSignal{};
    };

    std::unique_ptr<Adapter> adapter;
    std::vector<Learner> learners;
    std::vector<Lts> proposals;
    std::vector<Alphabet> history;

    auto drive = [&](int i, LearnerEffect effect) {
        while (auto* ask = std::get_if<AskMembership>(&effect)) {
            check_deadline();
            effect = learners[i].answer_membership(adapter->member(i, ask->trace));
        }
        if (auto* proposal = std::get_if<ProposeHypothesis>(&effect)) {
            proposals[i] = std::move(proposal->hypothesis);
            return;
        }
        throw ContractViolation("learner finished outside an equivalence round");
    };

    auto boot = [&] {
        adapter = std::make_unique<Adapter>(teacher, obs, dist, config.sink);
        adapter->seed_stores_from_observations();
        learners.clear();
        proposals.assign(dist.parts().size(), Lts(1, Alphabet(0)));
        for (int i = 0; i < dist.size(); ++i) learners.emplace_back(i, dist.parts()[i], config.sink);
        for (int i = 0; i < dist.size(); ++i) drive(i, learners[i].start());
    };

    try {
        boot();
        while (true) {
            check_deadline();
            if (result.rounds >= config.max_rounds)
                throw ConsistencyError("equivalence round cap exceeded");

            Adapter::RoundOutcome outcome = adapter->equivalence_round(proposals);
            ++result.rounds;
            if (outcome.yes) {
                for (Learner& l : learners) l.accept_hypothesis();
                result.components = proposals;
                result.completed = true;
                result.round_log.push_back("round " + std::to_string(result.rounds) + ": yes");
                break;
            }

            obs.record(outcome.counterexample, outcome.verdict);
            bool global = !config.given_distribution &&
                          classify_counterexample(obs, dist, {outcome.counterexample, outcome.verdict}) ==
                              CexScope::global;
            result.round_log.push_back("round " + std::to_string(result.rounds) + ": cex " +
                                       std::string(1, verdict_char(outcome.verdict)) +
                                       (global ? " global" : " local"));

            if (global) {
                if (++result.refinements > config.max_refinements)
                    throw ConsistencyError("refinement cap exceeded");
                RefineResult refined = refine(dist, obs, config.policy,
                                              std::make_pair(outcome.counterexample, outcome.verdict));
                for (Alphabet& delta : refined.added) history.push_back(std::move(delta));
                dist = optimize(refined.distribution, history, config.optimize_options);
                if (!is_product_observation(obs, dist))
                    throw ConsistencyError("optimized distribution no longer models the store");
                if (config.sink) {
                    Event e;
                    e.kind = EventKind::refinement;
                    e.round = result.rounds;
                    e.global = outcome.counterexample;
                    e.verdict = outcome.verdict == Verdict::positive ? 1 : 0;
                    e.note = "parts=" + std::to_string(dist.size());
                    config.sink->on_event(e);
                }
                boot();
            } else {
                auto deliveries = adapter->deliver_local(outcome.counterexample, outcome.verdict, proposals);
                if (deliveries.empty())
                    throw ConsistencyError("counter-example was delivered to no learner");
                for (const auto& d : deliveries)
                    drive(d.component, learners[d.component].receive_counterexample(d.local, d.verdict));
            }
        }
    } catch (const TimeoutSignal&) {
        result.timed_out = true;
    }

    result.distribution = dist;
    result.stats = teacher.stats();
    result.observations = obs.entries();
    if (config.sink && result.completed) {
        Event e;
        e.kind = EventKind::run_finished;
        e.round = result.rounds;
        e.note = "components=" + std::to_string(result.components.size());
        config.sink->on_event(e);
    }
    return result;
}

}  // namespace parlearn
