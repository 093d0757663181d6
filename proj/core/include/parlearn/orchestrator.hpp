#pragma once

#include <memory>

#include "parlearn/adapter.hpp"
#include "parlearn/learner.hpp"

namespace parlearn {

struct RunConfig {
    DiscrepancyPolicy policy = DiscrepancyPolicy::greedy_min;
    OptimizeOptions optimize_options;
    long max_rounds = 1'000'000;
    long max_refinements = 100'000;
    double time_budget_seconds = 0;  // 0 means unlimited
    uint64_t seed = 0;               // reserved for sampling tie-break policies
    // Fixed-decomposition mode: no classification, every counter-example is
    // treated as local.
    std::optional<Distribution> given_distribution;
    EventSink* sink = nullptr;
};

struct RunResult {
    Distribution distribution;
    std::vector<Lts> components;
    QueryStats stats;
    int refinements = 0;  // global counter-examples processed
    int rounds = 0;       // equivalence rounds
    bool completed = false;
    bool timed_out = false;
    std::vector<std::string> round_log;
    // The final global store, in recording order; what the observation log
    // report is written from.
    std::vector<std::pair<Trace, Verdict>> observations;
};

enum class CexScope { local, global };

// A recorded counter-example is global exactly when the distribution no
// longer models the store.
CexScope classify_counterexample(const Observations& obs, const Distribution& dist,
                                 const std::pair<Trace, Verdict>& cex);

// Top level: runs one learner per part of the current distribution through
// the Adapter, classifies equivalence counter-examples, refines and
// optimizes the distribution on global ones, forwards local ones, and stops
// at the Teacher's yes.
RunResult run_learning(Teacher& teacher, const RunConfig& config = {});

}  // namespace parlearn
