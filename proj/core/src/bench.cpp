#include "parlearn/bench.hpp"

#include <deque>

#include "parlearn/errors.hpp"
#include "parlearn/rng.hpp"

namespace parlearn {

const char* structure_name(StructureKind kind) {
    switch (kind) {
        case StructureKind::multiparty: return "multiparty";
        case StructureKind::ring: return "ring";
        case StructureKind::bipartite: return "bipartite";
        case StructureKind::star: return "star";
        case StructureKind::random_graph: return "random";
    }
    return "?";
}

std::optional<StructureKind> parse_structure(const std::string& name) {
    for (StructureKind kind : kAllStructures)
        if (name == structure_name(kind)) return kind;
    return std::nullopt;
}

namespace {

Lts bfs_trim(const Lts& lts) {
    std::vector<int> index(lts.num_states(), -1);
    std::vector<int> order;
    index[lts.initial()] = 0;
    order.push_back(lts.initial());
    for (size_t i = 0; i < order.size(); ++i) {
        for (const auto& [a, dst] : lts.transitions_from(order[i])) {
            if (index[dst] >= 0) continue;
            index[dst] = static_cast<int>(order.size());
            order.push_back(dst);
        }
    }
    Lts out(static_cast<int>(order.size()), lts.alphabet(), 0);
    for (size_t i = 0; i < order.size(); ++i)
        for (const auto& [a, dst] : lts.transitions_from(order[i]))
            out.add_transition(static_cast<int>(i), a, index[dst]);
    return out;
}

Lts random_component(const Alphabet& alphabet, const BenchSpec& spec, Rng& rng) {
    std::vector<Symbol> symbols = alphabet.symbols();
    while (true) {
        int states = rng.range(spec.states_min, spec.states_max);
        Lts lts(states, alphabet, 0);
        for (int s = 0; s < states; ++s) {
            int degree = std::min(rng.range(spec.out_degree_min, spec.out_degree_max),
                                  static_cast<int>(symbols.size()));
            std::vector<Symbol> pool = symbols;
            for (int d = 0; d < degree; ++d) {
                size_t pick = d + rng.below(pool.size() - d);
                std::swap(pool[d], pool[pick]);
                int target = static_cast<int>(rng.below(states));
                lts.add_transition(s, pool[d], target);
            }
        }
        Lts trimmed = bfs_trim(lts);
        if (trimmed.num_states() >= 2) return trimmed;
    }
}

}  // namespace

GeneratedSystem gen_system(const BenchSpec& spec, SymbolTable& table) {
    const int n = spec.components;
    if (n < 2) throw ContractViolation("benchmark systems need at least two components");
    if (spec.states_min < 1 || spec.states_max < spec.states_min || spec.out_degree_min < 1 ||
        spec.out_degree_max < spec.out_degree_min)
        throw ContractViolation("invalid benchmark parameter ranges");

    Rng rng(spec.seed * 0x100000001b3ull + static_cast<uint64_t>(spec.structure) * 8191 +
            static_cast<uint64_t>(n));

    std::string tag = std::string(structure_name(spec.structure)) + std::to_string(n) + "s" +
                      std::to_string(spec.seed) + "_";

    // Channels first: a channel is a set of symbols shared by a set of
    // endpoints (all components for multiparty, two otherwise).
    struct Channel {
        std::vector<int> endpoints;
        std::vector<Symbol> symbols;
    };
    std::vector<Channel> channels;
    auto add_channel = [&](std::vector<int> endpoints, int width, const std::string& name) {
        Channel ch;
        ch.endpoints = std::move(endpoints);
        for (int k = 0; k < width; ++k)
            ch.symbols.push_back(table.intern(tag + name + (width > 1 ? std::to_string(k) : "")));
        channels.push_back(std::move(ch));
    };

    switch (spec.structure) {
        case StructureKind::multiparty: {
            std::vector<int> all(n);
            for (int i = 0; i < n; ++i) all[i] = i;
            add_channel(all, spec.channel_width, "m");
            break;
        }
        case StructureKind::ring: {
            if (n == 2) {
                add_channel({0, 1}, spec.channel_width, "c0_1");
            } else {
                for (int i = 0; i < n; ++i) {
                    int j = (i + 1) % n;
                    add_channel({std::min(i, j), std::max(i, j)}, spec.channel_width,
                                "c" + std::to_string(std::min(i, j)) + "_" + std::to_string(std::max(i, j)));
                }
            }
            break;
        }
        case StructureKind::bipartite: {
            int left = n / 2;
            for (int i = 0; i < left; ++i)
                for (int j = left; j < n; ++j)
                    add_channel({i, j}, spec.channel_width,
                                "c" + std::to_string(i) + "_" + std::to_string(j));
            break;
        }
        case StructureKind::star: {
            for (int i = 1; i < n; ++i)
                add_channel({0, i}, spec.channel_width, "c0_" + std::to_string(i));
            break;
        }
        case StructureKind::random_graph: {
            // 2(n-1) single-symbol channels over a connected graph: a random
            // spanning tree plus n-1 extra edges.
            int edge = 0;
            for (int i = 1; i < n; ++i) {
                int j = static_cast<int>(rng.below(i));
                add_channel({j, i}, 1, "r" + std::to_string(edge++));
            }
            for (int k = 0; k < n - 1; ++k) {
                int u = static_cast<int>(rng.below(n));
                int v = static_cast<int>(rng.below(n - 1));
                if (v >= u) ++v;
                add_channel({std::min(u, v), std::max(u, v)}, 1, "r" + std::to_string(edge++));
            }
            break;
        }
    }

    std::vector<std::vector<Symbol>> local_symbols(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < spec.locals_per_component; ++k)
            local_symbols[i].push_back(table.intern(tag + "u" + std::to_string(i) + "_" + std::to_string(k)));

    const int universe = table.size();
    std::vector<Alphabet> parts(n, Alphabet(universe));
    for (const Channel& ch : channels)
        for (int endpoint : ch.endpoints)
            for (Symbol s : ch.symbols) parts[endpoint].add(s);
    for (int i = 0; i < n; ++i)
        for (Symbol s : local_symbols[i]) parts[i].add(s);

    Alphabet global(universe);
    for (const Alphabet& p : parts) global = global.unite(p);

    GeneratedSystem system;
    for (int i = 0; i < n; ++i) system.components.push_back(random_component(parts[i], spec, rng));
    system.true_distribution = Distribution(global, parts);
    return system;
}

}  // namespace parlearn
