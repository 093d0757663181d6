#pragma once

#include "parlearn/teacher.hpp"

namespace parlearn {

struct MonolithicResult {
    Lts hypothesis;
    QueryStats stats;
    int rounds = 0;
    bool completed = false;
    bool timed_out = false;
};

// Classic L* against the full teacher: no wildcards, no backtracking, the
// table always fully defined by membership queries; counter-example prefixes
// are added to the prefix set. The baseline the compositional runs are
// measured against.
MonolithicResult learn_monolithic(Teacher& teacher, double time_budget_seconds = 0);

}  // namespace parlearn
