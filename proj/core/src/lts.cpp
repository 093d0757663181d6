#include "parlearn/lts.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "parlearn/errors.hpp"

namespace parlearn {

Lts::Lts(int num_states, Alphabet alphabet, int initial)
    : alphabet_(std::move(alphabet)), initial_(initial), out_(num_states) {
    if (num_states <= 0) throw ContractViolation("an LTS needs at least one state");
    if (initial < 0 || initial >= num_states) throw ContractViolation("initial state out of range");
}

void Lts::check_state(int s) const {
    if (s < 0 || s >= num_states()) throw ContractViolation("state index out of range");
}

int Lts::add_state() {
    out_.emplace_back();
    return num_states() - 1;
}

void Lts::add_transition(int src, Symbol a, int dst) {
    check_state(src);
    check_state(dst);
    if (!alphabet_.contains(a)) throw ContractViolation("transition symbol not in the LTS alphabet");
    auto& row = out_[src];
    auto it = std::lower_bound(row.begin(), row.end(), a,
                               [](const auto& e, Symbol s) { return e.first < s; });
    if (it != row.end() && it->first == a) throw ContractViolation("nondeterministic transition");
    row.insert(it, {a, dst});
    edges_.push_back({src, a, dst});
    ++num_transitions_;
}

int Lts::successor(int state, Symbol a) const {
    const auto& row = out_[state];
    auto it = std::lower_bound(row.begin(), row.end(), a,
                               [](const auto& e, Symbol s) { return e.first < s; });
    if (it == row.end() || it->first != a) return -1;
    return it->second;
}

std::optional<int> Lts::run(const Trace& trace) const {
    int state = initial_;
    for (Symbol s : trace) {
        if (!alphabet_.contains(s)) throw ContractViolation("trace symbol not in the LTS alphabet");
        state = successor(state, s);
        if (state < 0) return std::nullopt;
    }
    return state;
}

bool Lts::accepts(const Trace& trace) const { return run(trace).has_value(); }

Lts parallel_compose(const std::vector<Lts>& components) {
    return parallel_compose(std::span<const Lts>(components.data(), components.size()));
}

Lts parallel_compose(std::span<const Lts> components) {
    if (components.empty()) throw ContractViolation("parallel_compose needs at least one component");

    Alphabet global = components[0].alphabet();
    for (size_t i = 1; i < components.size(); ++i) global = global.unite(components[i].alphabet());
    const std::vector<Symbol> symbols = global.symbols();
    const size_t n = components.size();

    std::vector<int> init(n);
    for (size_t i = 0; i < n; ++i) init[i] = components[i].initial();

    struct VecHash {
        size_t operator()(const std::vector<int>& v) const {
            size_t h = 1469598103934665603ull;
            for (int x : v) {
                h ^= static_cast<size_t>(static_cast<uint32_t>(x));
                h *= 1099511628211ull;
            }
            return h;
        }
    };
    std::unordered_map<std::vector<int>, int, VecHash> index;
    std::vector<std::vector<int>> tuples;
    std::deque<int> work;

    index.emplace(init, 0);
    tuples.push_back(init);
    work.push_back(0);

    Lts product(1, global, 0);
    std::vector<int> succ(n);
    while (!work.empty()) {
        int id = work.front();
        work.pop_front();
        for (Symbol a : symbols) {
            const std::vector<int>& tuple = tuples[id];
            bool alive = true;
            for (size_t i = 0; i < n && alive; ++i) {
                if (!components[i].alphabet().contains(a)) {
                    succ[i] = tuple[i];
                } else {
                    succ[i] = components[i].successor(tuple[i], a);
                    alive = succ[i] >= 0;
                }
            }
            if (!alive) continue;
            auto [it, inserted] = index.emplace(succ, static_cast<int>(tuples.size()));
            if (inserted) {
                tuples.push_back(succ);
                product.add_state();
                work.push_back(it->second);
            }
            product.add_transition(id, a, it->second);
        }
    }
    return product;
}

EquivalenceResult language_equivalent(const Lts& a, const Lts& b) {
    if (!(a.alphabet() == b.alphabet()))
        throw ContractViolation("language_equivalent requires matching alphabets");

    const std::vector<Symbol> symbols = a.alphabet().symbols();
    const int nb = b.num_states() + 1;
    auto encode = [nb](int sa, int sb) { return (sa + 1) * nb + (sb + 1); };

    struct Step {
        int parent;
        Symbol symbol;
    };
    std::unordered_map<int, Step> seen;
    std::deque<int> queue;

    int root = encode(a.initial(), b.initial());
    seen.emplace(root, Step{-1, Symbol{}});
    queue.push_back(root);

    auto rebuild = [&](int node) {
        Trace out;
        while (true) {
            const Step& st = seen.at(node);
            if (st.parent < 0) break;
            out.push_back(st.symbol);
            node = st.parent;
        }
        std::reverse(out.begin(), out.end());
        return out;
    };

    while (!queue.empty()) {
        int node = queue.front();
        queue.pop_front();
        int sa = node / nb - 1;
        int sb = node % nb - 1;
        if (sa < 0 && sb < 0) continue;  // both sides dead, nothing new below
        for (Symbol s : symbols) {
            int ta = sa < 0 ? -1 : a.successor(sa, s);
            int tb = sb < 0 ? -1 : b.successor(sb, s);
            int next = encode(ta, tb);
            auto [it, inserted] = seen.emplace(next, Step{node, s});
            if (!inserted) continue;
            if ((ta < 0) != (tb < 0)) {
                EquivalenceResult r;
                r.equal = false;
                r.witness = rebuild(next);
                r.witness_in_a = ta >= 0;
                return r;
            }
            queue.push_back(next);
        }
    }
    return EquivalenceResult{true, {}, false};
}

}  // namespace parlearn
