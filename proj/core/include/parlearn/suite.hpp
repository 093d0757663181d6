#pragma once

#include <iosfwd>

#include "parlearn/bench.hpp"
#include "parlearn/orchestrator.hpp"

namespace parlearn {

struct SuiteSpec {
    std::vector<StructureKind> structures = {StructureKind::ring};
    int components_min = 2;
    int components_max = 3;
    int instances = 1;
    uint64_t seed = 0;
    double time_budget_seconds = 120;
    bool mode_compositional = true;
    bool mode_given = true;
    bool mode_monolithic = true;
    BenchSpec base;  // state/degree ranges shared by every system
};

// Simple key=value format: structure, components (n or lo..hi), instances,
// seed, time_budget, modes (comma list of comp,given,mono), states (lo..hi),
// out_degree (lo..hi).
SuiteSpec parse_suite_spec(std::istream& in);
SuiteSpec parse_suite_spec_file(const std::string& path);

struct ModeCells {
    bool ran = false;      // mode enabled and finished within budget
    long millis = 0;
    long membership = 0;
    long equivalence = 0;
    int iterations = 0;    // refinements; meaningful for the adaptive mode
    int components = 0;
};

struct SuiteRow {
    std::string id;
    StructureKind structure;
    int components;
    uint64_t seed;
    long sul_states = 0;
    ModeCells comp;        // adaptive compositional
    ModeCells alphabets;   // compositional with the true distribution given
    ModeCells mono;        // classic monolithic baseline
};

// Expands the spec, generates each system, runs the selected modes, and
// optionally dumps component .aut files under out_dir. Rows come back in
// generation order regardless of the number of worker threads.
std::vector<SuiteRow> run_suite(const SuiteSpec& spec, const std::string& out_dir = "", int jobs = 1);

// Semicolon-separated, one row per system; timeouts leave empty cells.
void write_suite_csv(std::ostream& out, const std::vector<SuiteRow>& rows);

}  // namespace parlearn
