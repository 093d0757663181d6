#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "parlearn/aut_io.hpp"
#include "parlearn/errors.hpp"
#include "parlearn/monolithic.hpp"
#include "parlearn/orchestrator.hpp"
#include "parlearn/suite.hpp"

namespace fs = std::filesystem;
using namespace parlearn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;

Distribution read_distribution_file(const std::string& path, const SymbolTable& table,
                                    const Alphabet& global) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<Alphabet> parts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        Alphabet part(global.universe_size());
        std::istringstream ls(line);
        std::string name;
        while (ls >> name) part.add(table.find(name));
        parts.push_back(std::move(part));
    }
    if (parts.empty()) throw ParseError("empty distribution file " + path);
    return Distribution(global, std::move(parts));
}

void write_observation_log(const std::string& path, const std::vector<std::pair<Trace, Verdict>>& entries,
                           const SymbolTable& table) {
    std::ofstream out(path);
    for (const auto& [trace, verdict] : entries)
        out << verdict_char(verdict) << '\t' << format_trace(trace, table) << '\n';
}

struct LearnOptions {
    std::string sul_path;
    std::string distribution_path;
    std::string trace_path;
    std::string out_dir = ".";
    std::string policy = "greedy-min";
    uint64_t seed = 0;
    double time_budget = 0;
    int merge_shared = 2;
};

void add_learn_flags(CLI::App* cmd, LearnOptions& opt) {
    cmd->add_option("sul", opt.sul_path, "SUL in .aut format")->required();
    cmd->add_option("--distribution", opt.distribution_path,
                    "fixed decomposition file: one alphabet per line");
    cmd->add_option("--seed", opt.seed, "seed for sampling tie-break policies");
    cmd->add_option("--time-budget", opt.time_budget, "wall-clock budget in seconds (0: unlimited)");
    cmd->add_option("--trace-run", opt.trace_path, "write the structured event log to this file");
    cmd->add_option("--out", opt.out_dir, "output directory for artifacts");
    cmd->add_option("--policy", opt.policy, "discrepancy policy: greedy-min or first-found")
        ->check(CLI::IsMember({"greedy-min", "first-found"}));
    cmd->add_option("--merge-shared", opt.merge_shared,
                    "merge components sharing at least this many symbols");
}

// Runs a compositional learn and returns (result, event log text).
std::pair<RunResult, std::string> run_learn(const LearnOptions& opt, SymbolTable& table) {
    Lts sul = read_aut_file(opt.sul_path, table);
    RunConfig config;
    config.seed = opt.seed;
    config.time_budget_seconds = opt.time_budget;
    config.policy = opt.policy == "first-found" ? DiscrepancyPolicy::first_found
                                                : DiscrepancyPolicy::greedy_min;
    config.optimize_options.merge_min_shared = opt.merge_shared;
    if (!opt.distribution_path.empty())
        config.given_distribution = read_distribution_file(opt.distribution_path, table, sul.alphabet());

    std::ostringstream log_stream;
    TextEventLog log(log_stream, table);
    config.sink = &log;

    Teacher teacher(std::move(sul));
    RunResult result = run_learning(teacher, config);
    return {std::move(result), log_stream.str()};
}

int cmd_learn(const LearnOptions& opt) {
    SymbolTable table;
    auto [result, log_text] = run_learn(opt, table);
    if (!opt.trace_path.empty()) {
        std::ofstream out(opt.trace_path);
        out << log_text;
    }
    if (!result.completed) {
        std::string log_path = opt.trace_path.empty()
                                   ? (fs::path(opt.out_dir) / "failed_run.log").string()
                                   : opt.trace_path;
        if (opt.trace_path.empty()) {
            fs::create_directories(opt.out_dir);
            std::ofstream out(log_path);
            out << log_text;
        }
        std::cerr << (result.timed_out ? "time budget exceeded" : "run did not complete")
                  << "; event log at " << log_path << "\n";
        return kExitInternal;
    }

    fs::create_directories(opt.out_dir);
    std::ofstream dist_out(fs::path(opt.out_dir) / "distribution.txt");
    dist_out << format_distribution(result.distribution, table);
    // component files follow the name-ordered distribution listing
    std::vector<std::pair<std::string, size_t>> order;
    for (size_t i = 0; i < result.components.size(); ++i) {
        Distribution one(result.distribution.parts()[i], {result.distribution.parts()[i]});
        order.emplace_back(format_distribution(one, table), i);
    }
    std::sort(order.begin(), order.end());
    for (size_t i = 0; i < order.size(); ++i)
        write_aut_file((fs::path(opt.out_dir) / ("component_" + std::to_string(i) + ".aut")).string(),
                       result.components[order[i].second], table);
    write_observation_log((fs::path(opt.out_dir) / "observations.log").string(), result.observations,
                          table);

    std::cout << "memQ=" << result.stats.membership_queries << " eqQ=" << result.stats.equivalence_queries
              << " rounds=" << result.rounds << " refinements=" << result.refinements
              << " components=" << result.components.size() << "\n";
    return kExitOk;
}

int cmd_learn_mono(const std::string& sul_path, double time_budget, const std::string& out_dir) {
    SymbolTable table;
    Lts sul = read_aut_file(sul_path, table);
    Teacher teacher(std::move(sul));
    MonolithicResult result = learn_monolithic(teacher, time_budget);
    if (!result.completed) {
        std::cerr << "time budget exceeded\n";
        return kExitInternal;
    }
    fs::create_directories(out_dir);
    write_aut_file((fs::path(out_dir) / "learned.aut").string(), result.hypothesis, table);
    std::cout << "memQ=" << result.stats.membership_queries << " eqQ=" << result.stats.equivalence_queries
              << " rounds=" << result.rounds << " states=" << result.hypothesis.num_states() << "\n";
    return kExitOk;
}

int cmd_gen_bench(const std::string& spec_path, const std::string& out_dir) {
    SuiteSpec spec = parse_suite_spec_file(spec_path);
    int systems = 0;
    for (StructureKind structure : spec.structures) {
        for (int n = spec.components_min; n <= spec.components_max; ++n) {
            for (int instance = 0; instance < spec.instances; ++instance) {
                BenchSpec bench = spec.base;
                bench.structure = structure;
                bench.components = n;
                bench.seed = spec.seed + static_cast<uint64_t>(instance);
                bench.channel_width =
                    structure == StructureKind::random_graph ? 1 : spec.base.channel_width;

                SymbolTable table;
                GeneratedSystem system = gen_system(bench, table);
                fs::path dir = fs::path(out_dir) / (std::string(structure_name(structure)) + "-n" +
                                                    std::to_string(n) + "-s" + std::to_string(bench.seed));
                fs::create_directories(dir);
                for (size_t i = 0; i < system.components.size(); ++i)
                    write_aut_file((dir / ("component_" + std::to_string(i) + ".aut")).string(),
                                   system.components[i], table);
                std::ofstream dist_out(dir / "true_distribution.txt");
                dist_out << format_distribution(system.true_distribution, table);
                write_aut_file((dir / "sul.aut").string(), parallel_compose(system.components), table);
                ++systems;
            }
        }
    }
    std::cout << "systems=" << systems << "\n";
    return kExitOk;
}

int cmd_run_suite(const std::string& spec_path, const std::string& out_dir, int jobs,
                  double time_budget_override) {
    SuiteSpec spec = parse_suite_spec_file(spec_path);
    if (time_budget_override > 0) spec.time_budget_seconds = time_budget_override;
    fs::create_directories(out_dir);
    std::vector<SuiteRow> rows = run_suite(spec, out_dir, jobs);
    std::ofstream csv(fs::path(out_dir) / "results.csv");
    write_suite_csv(csv, rows);
    std::cout << "systems=" << rows.size() << " csv=" << (fs::path(out_dir) / "results.csv").string()
              << "\n";
    return kExitOk;
}

int cmd_replay(const LearnOptions& opt, const std::string& log_path) {
    std::ifstream in(log_path);
    if (!in) throw ParseError("cannot open " + log_path);
    std::stringstream expected;
    expected << in.rdbuf();

    SymbolTable table;
    auto [result, log_text] = run_learn(opt, table);
    (void)result;
    if (log_text == expected.str()) {
        std::istringstream count(log_text);
        std::string line;
        long lines = 0;
        while (std::getline(count, line)) ++lines;
        std::cout << "replay: identical (" << lines << " events)\n";
        return kExitOk;
    }
    std::cerr << "replay: event logs differ\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compositional LTS learning with automatic alphabet decomposition"};
    app.require_subcommand(1);

    LearnOptions learn_opt;
    CLI::App* learn = app.add_subcommand("learn", "learn a .aut system compositionally");
    add_learn_flags(learn, learn_opt);

    std::string mono_sul, mono_out = ".";
    double mono_budget = 0;
    CLI::App* mono = app.add_subcommand("learn-mono", "learn a .aut system with the monolithic baseline");
    mono->add_option("sul", mono_sul, "SUL in .aut format")->required();
    mono->add_option("--time-budget", mono_budget, "wall-clock budget in seconds (0: unlimited)");
    mono->add_option("--out", mono_out, "output directory");

    std::string gen_spec, gen_out = "bench";
    CLI::App* gen = app.add_subcommand("gen-bench", "generate random benchmark systems");
    gen->add_option("spec", gen_spec, "benchmark spec file (key=value)")->required();
    gen->add_option("--out", gen_out, "output directory")->required();

    std::string suite_spec, suite_out = "suite";
    int suite_jobs = 1;
    double suite_budget = 0;
    CLI::App* suite = app.add_subcommand("run-suite", "generate systems and run the selected modes");
    suite->add_option("spec", suite_spec, "benchmark spec file (key=value)")->required();
    suite->add_option("--out", suite_out, "output directory")->required();
    suite->add_option("--jobs", suite_jobs, "worker threads");
    suite->add_option("--time-budget", suite_budget, "override the spec's per-run budget in seconds");

    LearnOptions replay_opt;
    std::string replay_log;
    CLI::App* replay = app.add_subcommand("replay", "re-run a traced learn and compare event logs");
    add_learn_flags(replay, replay_opt);
    replay->add_option("log", replay_log, "event log from a previous --trace-run")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (learn->parsed()) return cmd_learn(learn_opt);
        if (mono->parsed()) return cmd_learn_mono(mono_sul, mono_budget, mono_out);
        if (gen->parsed()) return cmd_gen_bench(gen_spec, gen_out);
        if (suite->parsed()) return cmd_run_suite(suite_spec, suite_out, suite_jobs, suite_budget);
        if (replay->parsed()) return cmd_replay(replay_opt, replay_log);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ContractViolation& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
