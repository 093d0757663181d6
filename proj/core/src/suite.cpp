#include "parlearn/suite.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "parlearn/aut_io.hpp"
#include "parlearn/errors.hpp"
#include "parlearn/monolithic.hpp"

namespace parlearn {

namespace {

std::pair<int, int> parse_range(const std::string& value) {
    auto dots = value.find("..");
    if (dots == std::string::npos) {
        int v = std::stoi(value);
        return {v, v};
    }
    return {std::stoi(value.substr(0, dots)), std::stoi(value.substr(dots + 2))};
}

}  // namespace

SuiteSpec parse_suite_spec(std::istream& in) {
    SuiteSpec spec;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw ParseError("suite spec line " + std::to_string(line_no) + ": expected key=value");
        auto strip = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r\n");
            size_t e = s.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        try {
            if (key == "structure") {
                if (value == "all") {
                    spec.structures.assign(kAllStructures.begin(), kAllStructures.end());
                } else {
                    spec.structures.clear();
                    std::istringstream vs(value);
                    std::string one;
                    while (std::getline(vs, one, ',')) {
                        auto kind = parse_structure(one);
                        if (!kind) throw ParseError("unknown structure: " + one);
                        spec.structures.push_back(*kind);
                    }
                }
            } else if (key == "components") {
                auto [lo, hi] = parse_range(value);
                spec.components_min = lo;
                spec.components_max = hi;
            } else if (key == "instances") {
                spec.instances = std::stoi(value);
            } else if (key == "seed") {
                spec.seed = std::stoull(value);
            } else if (key == "time_budget") {
                spec.time_budget_seconds = std::stod(value);
            } else if (key == "states") {
                auto [lo, hi] = parse_range(value);
                spec.base.states_min = lo;
                spec.base.states_max = hi;
            } else if (key == "out_degree") {
                auto [lo, hi] = parse_range(value);
                spec.base.out_degree_min = lo;
                spec.base.out_degree_max = hi;
            } else if (key == "modes") {
                spec.mode_compositional = spec.mode_given = spec.mode_monolithic = false;
                std::istringstream vs(value);
                std::string one;
                while (std::getline(vs, one, ',')) {
                    if (one == "comp")
                        spec.mode_compositional = true;
                    else if (one == "given")
                        spec.mode_given = true;
                    else if (one == "mono")
                        spec.mode_monolithic = true;
                    else
                        throw ParseError("unknown mode: " + one);
                }
            } else {
                throw ParseError("unknown suite spec key: " + key);
            }
        } catch (const std::invalid_argument&) {
            throw ParseError("suite spec line " + std::to_string(line_no) + ": bad value for " + key);
        }
    }
    if (spec.structures.empty() || spec.instances < 1 || spec.components_min < 2 ||
        spec.components_max < spec.components_min)
        throw ParseError("suite spec does not describe any system");
    return spec;
}

SuiteSpec parse_suite_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_suite_spec(in);
}

namespace {

long elapsed_ms(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - from)
        .count();
}

SuiteRow run_one(const SuiteSpec& spec, const BenchSpec& bench, const std::string& out_dir) {
    SuiteRow row;
    row.structure = bench.structure;
    row.components = bench.components;
    row.seed = bench.seed;
    row.id = std::string(structure_name(bench.structure)) + "-n" + std::to_string(bench.components) +
             "-s" + std::to_string(bench.seed);

    SymbolTable table;
    GeneratedSystem system = gen_system(bench, table);
    Lts sul = parallel_compose(system.components);
    row.sul_states = sul.num_states();

    if (!out_dir.empty()) {
        std::filesystem::path dir = std::filesystem::path(out_dir) / row.id;
        std::filesystem::create_directories(dir);
        for (size_t i = 0; i < system.components.size(); ++i)
            write_aut_file((dir / ("component_" + std::to_string(i) + ".aut")).string(),
                           system.components[i], table);
        std::ofstream dist_out(dir / "true_distribution.txt");
        dist_out << format_distribution(system.true_distribution, table);
        write_aut_file((dir / "sul.aut").string(), sul, table);
    }

    auto run_mode = [&](ModeCells& cells, auto&& body) {
        auto start = std::chrono::steady_clock::now();
        body(cells);
        cells.millis = elapsed_ms(start);
    };

    if (spec.mode_compositional) {
        run_mode(row.comp, [&](ModeCells& cells) {
            Teacher teacher(sul);
            RunConfig config;
            config.time_budget_seconds = spec.time_budget_seconds;
            RunResult result = run_learning(teacher, config);
            cells.ran = result.completed;
            cells.membership = result.stats.membership_queries;
            cells.equivalence = result.stats.equivalence_queries;
            cells.iterations = result.refinements;
            cells.components = static_cast<int>(result.components.size());
        });
    }
    if (spec.mode_given) {
        run_mode(row.alphabets, [&](ModeCells& cells) {
            Teacher teacher(sul);
            RunConfig config;
            config.time_budget_seconds = spec.time_budget_seconds;
            config.given_distribution = system.true_distribution;
            RunResult result = run_learning(teacher, config);
            cells.ran = result.completed;
            cells.membership = result.stats.membership_queries;
            cells.equivalence = result.stats.equivalence_queries;
            cells.components = static_cast<int>(result.components.size());
        });
    }
    if (spec.mode_monolithic) {
        run_mode(row.mono, [&](ModeCells& cells) {
            Teacher teacher(sul);
            MonolithicResult result = learn_monolithic(teacher, spec.time_budget_seconds);
            cells.ran = result.completed;
            cells.membership = result.stats.membership_queries;
            cells.equivalence = result.stats.equivalence_queries;
            cells.components = 1;
        });
    }
    return row;
}

}  // namespace

std::vector<SuiteRow> run_suite(const SuiteSpec& spec, const std::string& out_dir, int jobs) {
    std::vector<BenchSpec> benches;
    for (StructureKind structure : spec.structures) {
        for (int n = spec.components_min; n <= spec.components_max; ++n) {
            for (int instance = 0; instance < spec.instances; ++instance) {
                BenchSpec bench = spec.base;
                bench.structure = structure;
                bench.components = n;
                bench.seed = spec.seed + static_cast<uint64_t>(instance);
                bench.channel_width = structure == StructureKind::random_graph ? 1 : spec.base.channel_width;
                benches.push_back(bench);
            }
        }
    }

    std::vector<SuiteRow> rows(benches.size());
    std::atomic<size_t> cursor{0};
    auto worker = [&] {
        while (true) {
            size_t i = cursor.fetch_add(1);
            if (i >= benches.size()) break;
            rows[i] = run_one(spec, benches[i], out_dir);
        }
    };
    int workers = std::max(1, jobs);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return rows;
}

void write_suite_csv(std::ostream& out, const std::vector<SuiteRow>& rows) {
    out << "id;type;components;seed;sulStates;"
           "compmillis;compmemQ;compequivQ;compnumIterations;compnumComponents;"
           "alphabetsmillis;alphabetsmemQ;alphabetsequivQ;alphabetsnumComponents;"
           "monomillis;monomemQ;monoequivQ\n";
    auto cell = [](bool ran, long v) { return ran ? std::to_string(v) : std::string(); };
    for (const SuiteRow& row : rows) {
        out << row.id << ';' << structure_name(row.structure) << ';' << row.components << ';' << row.seed
            << ';' << row.sul_states << ';';
        out << cell(row.comp.ran, row.comp.millis) << ';' << cell(row.comp.ran, row.comp.membership) << ';'
            << cell(row.comp.ran, row.comp.equivalence) << ';' << cell(row.comp.ran, row.comp.iterations)
            << ';' << cell(row.comp.ran, row.comp.components) << ';';
        out << cell(row.alphabets.ran, row.alphabets.millis) << ';'
            << cell(row.alphabets.ran, row.alphabets.membership) << ';'
            << cell(row.alphabets.ran, row.alphabets.equivalence) << ';'
            << cell(row.alphabets.ran, row.alphabets.components) << ';';
        out << cell(row.mono.ran, row.mono.millis) << ';' << cell(row.mono.ran, row.mono.membership) << ';'
            << cell(row.mono.ran, row.mono.equivalence) << '\n';
    }
}

}  // namespace parlearn
