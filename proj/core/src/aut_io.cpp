#include "parlearn/aut_io.hpp"

#include <fstream>
#include <sstream>

#include "parlearn/errors.hpp"

namespace parlearn {

namespace {

void skip_spaces(const std::string& s, size_t& pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

long parse_number(const std::string& s, size_t& pos, const char* what) {
    skip_spaces(s, pos);
    size_t start = pos;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw ParseError(std::string("expected ") + what + " in: " + s);
    return std::stol(s.substr(start, pos - start));
}

void expect_char(const std::string& s, size_t& pos, char c) {
    skip_spaces(s, pos);
    if (pos >= s.size() || s[pos] != c)
        throw ParseError(std::string("expected '") + c + "' in: " + s);
    ++pos;
}

}  // namespace

Lts read_aut(std::istream& in, SymbolTable& table) {
    std::string line;
    do {
        if (!std::getline(in, line)) throw ParseError("empty .aut input");
    } while (line.find_first_not_of(" \t\r\n") == std::string::npos);

    size_t pos = 0;
    skip_spaces(line, pos);
    if (line.compare(pos, 3, "des") != 0) throw ParseError(".aut input must start with a des header");
    pos += 3;
    expect_char(line, pos, '(');
    long initial = parse_number(line, pos, "initial state");
    expect_char(line, pos, ',');
    long transitions = parse_number(line, pos, "transition count");
    expect_char(line, pos, ',');
    long states = parse_number(line, pos, "state count");
    expect_char(line, pos, ')');
    if (states <= 0 || initial < 0 || initial >= states)
        throw ParseError("inconsistent .aut header");

    struct Edge {
        long src;
        std::string label;
        long dst;
    };
    std::vector<Edge> edges;
    edges.reserve(transitions);
    for (long i = 0; i < transitions; ++i) {
        if (!std::getline(in, line)) throw ParseError("unexpected end of .aut input");
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) {
            --i;
            continue;
        }
        pos = 0;
        expect_char(line, pos, '(');
        long src = parse_number(line, pos, "source state");
        expect_char(line, pos, ',');
        expect_char(line, pos, '"');
        size_t close = line.find('"', pos);
        if (close == std::string::npos) throw ParseError("unterminated label in: " + line);
        std::string label = line.substr(pos, close - pos);
        pos = close + 1;
        expect_char(line, pos, ',');
        long dst = parse_number(line, pos, "target state");
        expect_char(line, pos, ')');
        if (src < 0 || src >= states || dst < 0 || dst >= states)
            throw ParseError("transition state out of range in: " + line);
        edges.push_back({src, std::move(label), dst});
    }

    Alphabet alphabet(table.size() + static_cast<int>(edges.size()));
    std::vector<Symbol> symbols;
    symbols.reserve(edges.size());
    for (const Edge& e : edges) {
        Symbol s = table.intern(e.label);
        if (s.id >= alphabet.universe_size()) throw ParseError("alphabet overflow");
        alphabet.add(s);
        symbols.push_back(s);
    }

    Lts lts(static_cast<int>(states), alphabet, static_cast<int>(initial));
    for (size_t i = 0; i < edges.size(); ++i) {
        try {
            lts.add_transition(static_cast<int>(edges[i].src), symbols[i], static_cast<int>(edges[i].dst));
        } catch (const ContractViolation&) {
            throw ParseError("nondeterministic .aut input: duplicate transition from state " +
                             std::to_string(edges[i].src) + " on \"" + edges[i].label + "\"");
        }
    }
    return lts;
}

Lts read_aut_file(const std::string& path, SymbolTable& table) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_aut(in, table);
}

void write_aut(std::ostream& out, const Lts& lts, const SymbolTable& table) {
    out << "des (" << lts.initial() << ',' << lts.num_transitions() << ',' << lts.num_states() << ")\n";
    for (const Lts::Edge& e : lts.edges())
        out << '(' << e.src << ",\"" << table.name(e.symbol) << "\"," << e.dst << ")\n";
}

void write_aut_file(const std::string& path, const Lts& lts, const SymbolTable& table) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    write_aut(out, lts, table);
}

}  // namespace parlearn
