#pragma once

#include "parlearn/lts.hpp"
#include "parlearn/table.hpp"

namespace parlearn {

// Greedy pairwise-incompatible row count, adjusted for the implicit sink;
// no consistent LTS can have fewer states.
int hypothesis_lower_bound(const ObservationTable& table);

bool lts_consistent_with(const Lts& lts, const ObservationTable& table);

// Minimal LTS agreeing with every defined cell. Tries, in order: the classic
// row construction when the table is fully defined, reuse of `previous` when
// it already matches at the lower bound, red-blue state merging, and finally
// an exact bounded search that guarantees minimality.
Lts build_hypothesis(const ObservationTable& table, const Lts* previous = nullptr);

}  // namespace parlearn
