#pragma once

#include <array>
#include <optional>
#include <string>

#include "parlearn/distribution.hpp"
#include "parlearn/lts.hpp"

namespace parlearn {

// The five communication structures of the random benchmark family.
enum class StructureKind { multiparty, ring, bipartite, star, random_graph };

inline constexpr std::array<StructureKind, 5> kAllStructures = {
    StructureKind::multiparty, StructureKind::ring, StructureKind::bipartite, StructureKind::star,
    StructureKind::random_graph};

const char* structure_name(StructureKind kind);
std::optional<StructureKind> parse_structure(const std::string& name);

struct BenchSpec {
    StructureKind structure = StructureKind::ring;
    int components = 4;
    uint64_t seed = 0;
    int states_min = 5;
    int states_max = 9;
    int out_degree_min = 2;
    int out_degree_max = 4;
    int locals_per_component = 2;
    // Synchronizing symbols per communication channel; the random structure
    // always uses single-symbol channels.
    int channel_width = 2;
};

struct GeneratedSystem {
    std::vector<Lts> components;
    Distribution true_distribution;
};

// Deterministic in the seed: alphabets assigned by the communication
// structure, then per component a uniformly drawn state count and per-state
// out-degree; unreachable states are pruned and degenerate single-state
// components redrawn.
GeneratedSystem gen_system(const BenchSpec& spec, SymbolTable& table);

}  // namespace parlearn
