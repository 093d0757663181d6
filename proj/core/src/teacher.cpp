#include "parlearn/teacher.hpp"

#include "parlearn/errors.hpp"

namespace parlearn {

Verdict Teacher::membership(const Trace& trace) {
    for (Symbol s : trace)
        if (!sul_.alphabet().contains(s)) throw ContractViolation("membership query outside the SUL alphabet");
    ++stats_.membership_queries;
    return sul_.accepts(trace) ? Verdict::positive : Verdict::negative;
}

Teacher::Answer Teacher::equivalence(const Lts& hypothesis) {
    if (!(hypothesis.alphabet() == sul_.alphabet()))
        throw ContractViolation("equivalence query over a different alphabet");
    ++stats_.equivalence_queries;
    EquivalenceResult r = language_equivalent(hypothesis, sul_);
    Answer answer;
    if (r.equal) {
        answer.yes = true;
        return answer;
    }
    answer.counterexample = r.witness;
    answer.verdict = r.witness_in_a ? Verdict::negative : Verdict::positive;
    return answer;
}

}  // namespace parlearn
