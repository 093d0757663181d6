#include <catch2/catch_amalgamated.hpp>

#include "parlearn/errors.hpp"
#include "parlearn/hypothesis.hpp"
#include "fixtures.hpp"

using namespace parlearn;
using namespace parlearn::testing;

namespace {

struct AlternatingFixture {
    SymbolTable table;
    Symbol a, b;
    Alphabet sigma{2};

    AlternatingFixture() {
        a = table.intern("a");
        b = table.intern("b");
        sigma.add(a);
        sigma.add(b);
    }

    // a and b strictly alternate, starting with a
    Cell member(const Trace& t) const {
        for (size_t i = 0; i < t.size(); ++i) {
            Symbol expected = i % 2 == 0 ? a : b;
            if (!(t[i] == expected)) return Cell::negative;
        }
        return Cell::positive;
    }
};

// Test-only oracle: row-major enumeration of all canonical transition
// tables with exactly k states, pruned against the defined cells.
class EnumerationOracle {
public:
    EnumerationOracle(const ObservationTable& table) : symbols_(table.alphabet().symbols()) {
        for (const auto& [trace, value] : table.defined_cells())
            cells_.emplace_back(trace, value == Cell::positive);
    }

    int minimal_states(int max_states) const {
        for (int k = 1; k <= max_states; ++k) {
            std::vector<int> delta(static_cast<size_t>(k) * symbols_.size(), kUnset);
            if (search(delta, 0, 0, k)) return k;
        }
        return -1;
    }

private:
    static constexpr int kUnset = -2;
    static constexpr int kSink = -1;

    // 1 accepted, 0 rejected, -1 undecided under the partial table
    int classify(const std::vector<int>& delta, const Trace& t, int k) const {
        int state = 0;
        for (Symbol s : t) {
            size_t index = 0;
            while (!(symbols_[index] == s)) ++index;
            int next = delta[state * symbols_.size() + index];
            if (next == kUnset) return -1;
            if (next == kSink) return 0;
            state = next;
        }
        return 1;
    }

    bool viable(const std::vector<int>& delta, int k) const {
        for (const auto& [trace, positive] : cells_) {
            int got = classify(delta, trace, k);
            if (got >= 0 && got != (positive ? 1 : 0)) return false;
        }
        return true;
    }

    bool search(std::vector<int>& delta, size_t slot, int max_ref, int k) const {
        if (!viable(delta, k)) return false;
        if (slot == delta.size()) return max_ref == k - 1;  // every state referenced
        for (int target = kSink; target <= std::min(max_ref + 1, k - 1); ++target) {
            delta[slot] = target;
            if (search(delta, slot + 1, std::max(max_ref, target), k)) return true;
        }
        delta[slot] = kUnset;
        return false;
    }

    std::vector<Symbol> symbols_;
    std::vector<std::pair<Trace, bool>> cells_;
};

}  // namespace

TEST_CASE("row compatibility treats wildcards as matching anything") {
    AlternatingFixture f;
    ObservationTable table(f.sigma);
    table.add_prefix({f.a});
    table.add_suffix({f.b});
    table.set_cell(kEpsilon, Cell::positive);
    table.set_cell({f.b}, Cell::negative);
    table.set_cell({f.a}, Cell::positive);
    table.set_cell({f.a, f.b}, Cell::positive);

    // row(eps) = (+,-), row(a) = (+,+): defined conflict on column b
    CHECK_FALSE(table.row_compatible(kEpsilon, Trace{f.a}));
    CHECK(table.row_compatible(kEpsilon, kEpsilon));
    // row(b) has cell b·b unknown; (−,?) vs (−,−) is compatible
    table.set_cell({f.b, f.b}, Cell::negative);
    table.set_cell({f.a, f.a}, Cell::negative);
    table.set_cell({f.a, f.a, f.b}, Cell::negative);
    CHECK(table.row_compatible(Trace{f.b}, Trace{f.a, f.a}));
}

TEST_CASE("the alternating-language table is closed and consistent") {
    AlternatingFixture f;
    ObservationTable table(f.sigma);
    table.add_prefix({f.b});
    table.add_prefix({f.a, f.b});
    table.add_suffix({f.b});
    table.fill([&](const Trace& t) { return f.member(t); });

    CHECK(std::holds_alternative<TableOk>(table.check_closed_consistent()));

    Lts lts = build_hypothesis(table);
    CHECK(lts.num_states() == 2);
    CHECK(lts.accepts(Trace{f.a}));
    CHECK(lts.accepts(Trace{f.a, f.b, f.a}));
    CHECK_FALSE(lts.accepts(Trace{f.b}));
    CHECK_FALSE(lts.accepts(Trace{f.a, f.a}));
    CHECK_FALSE(lts.accepts(Trace{f.a, f.b, f.b}));
}

TEST_CASE("closedness defects name the missing row") {
    AlternatingFixture f;
    ObservationTable table(f.sigma);
    table.set_cell(kEpsilon, Cell::positive);
    table.set_cell({f.a}, Cell::positive);
    table.set_cell({f.b}, Cell::negative);
    // row(a)=(+) matches row(eps); adding column b separates them
    table.add_suffix({f.b});
    table.set_cell({f.a, f.b}, Cell::positive);
    table.set_cell({f.b, f.b}, Cell::negative);
    TableCheck check = table.check_closed_consistent();
    auto* defect = std::get_if<ClosednessDefect>(&check);
    REQUIRE(defect);
    CHECK(defect->new_prefix == Trace{f.a});
}

TEST_CASE("consistency defects name the distinguishing suffix") {
    AlternatingFixture f;
    ObservationTable table(f.sigma);
    table.add_prefix({f.a});
    // rows eps and a look alike on E={eps} but their b-successors differ
    table.set_cell(kEpsilon, Cell::positive);
    table.set_cell({f.a}, Cell::positive);
    table.set_cell({f.b}, Cell::negative);
    table.set_cell({f.a, f.a}, Cell::negative);
    table.set_cell({f.a, f.b}, Cell::positive);
    TableCheck check = table.check_closed_consistent();
    auto* defect = std::get_if<ConsistencyDefect>(&check);
    REQUIRE(defect);
    CHECK(defect->new_suffix == Trace{f.a});
    CHECK(defect->s1 == kEpsilon);
    CHECK(defect->s2 == Trace{f.a});
}

TEST_CASE("prefix closure fills cells without queries") {
    AlternatingFixture f;
    ObservationTable table(f.sigma);
    table.add_prefix({f.b});

    SECTION("negative entries poison their extensions") {
        table.set_cell({f.b}, Cell::negative);
        long queries = 0;
        table.fill([&](const Trace& t) {
            ++queries;
            return f.member(t);
        });
        CHECK(table.cell({f.b, f.a}) == Cell::negative);
        CHECK(table.cell({f.b, f.b}) == Cell::negative);
        // only eps and a still needed asking
        CHECK(queries == 2);
    }

    SECTION("positive entries validate their prefixes") {
        table.add_prefix({f.a, f.b});
        table.set_cell({f.a, f.b}, Cell::positive);
        table.propagate();
        CHECK(table.cell({f.a}) == Cell::positive);
        CHECK(table.cell(kEpsilon) == Cell::positive);
    }

    SECTION("an uninformative oracle leaves wildcards") {
        table.fill([](const Trace&) { return Cell::unknown; });
        CHECK(table.cell(kEpsilon) == Cell::unknown);
        CHECK(std::holds_alternative<TableOk>(table.check_closed_consistent()));
        Lts lts = build_hypothesis(table);
        CHECK(lts.num_states() == 1);
        CHECK(lts.num_transitions() == 0);
    }
}

TEST_CASE("snapshots are deep copies") {
    AlternatingFixture f;
    ObservationTable table(f.sigma);
    table.fill([&](const Trace& t) { return f.member(t); });
    ObservationTable snapshot = table;

    table.add_prefix({f.a, f.a});
    table.set_cell({f.a, f.a}, Cell::negative);
    CHECK(table.prefixes().size() > snapshot.prefixes().size());
    CHECK(snapshot.cell({f.a, f.a}) == Cell::unknown);

    table = snapshot;
    CHECK(table.prefixes().size() == snapshot.prefixes().size());
}

TEST_CASE("an all-positive single-symbol table yields the self-loop") {
    SymbolTable t;
    Symbol x = t.intern("x");
    Alphabet sigma(1, {x});
    ObservationTable table(sigma);
    table.add_prefix({x});
    table.fill([](const Trace&) { return Cell::positive; });
    Lts lts = build_hypothesis(table);
    CHECK(lts.num_states() == 1);
    CHECK(lts.accepts(Trace{x, x, x}));
}

TEST_CASE("tables mixing positives under negatives are infeasible") {
    AlternatingFixture f;
    ObservationTable table(f.sigma);
    table.add_prefix({f.a, f.b});
    table.set_cell({f.a}, Cell::negative);
    table.set_cell({f.a, f.b}, Cell::positive);
    CHECK_THROWS_AS(build_hypothesis(table), ConsistencyError);
}

TEST_CASE("hypotheses are minimal on random partial tables") {
    SymbolTable t;
    std::vector<Symbol> syms{t.intern("a"), t.intern("b"), t.intern("c")};
    Alphabet sigma(3);
    for (Symbol s : syms) sigma.add(s);
    Rng rng(2024);

    int tested = 0;
    while (tested < 40) {
        Lts target = random_lts(rng, sigma, 4);
        ObservationTable table(sigma);
        auto oracle = [&](const Trace& trace) {
            if (rng.below(3) == 0) return Cell::unknown;
            return target.accepts(trace) ? Cell::positive : Cell::negative;
        };
        table.fill(oracle);
        bool ok = true;
        for (int round = 0; round < 12; ++round) {
            TableCheck check = table.check_closed_consistent();
            if (std::holds_alternative<TableOk>(check)) break;
            if (auto* defect = std::get_if<ConsistencyDefect>(&check))
                table.add_suffix(defect->new_suffix);
            else
                table.add_prefix(std::get<ClosednessDefect>(check).new_prefix);
            table.fill(oracle);
            if (round == 11) ok = false;
        }
        if (!ok || table.defined_cells().size() > 40) continue;

        Lts hypothesis = build_hypothesis(table);
        CHECK(lts_consistent_with(hypothesis, table));
        CHECK(hypothesis.num_states() >= hypothesis_lower_bound(table));

        int oracle_min = EnumerationOracle(table).minimal_states(6);
        REQUIRE(oracle_min > 0);
        CHECK(hypothesis.num_states() == oracle_min);
        ++tested;
    }
}

TEST_CASE("prefix and suffix sets stay closed under growth") {
    AlternatingFixture f;
    ObservationTable table(f.sigma);
    table.add_prefix({f.a, f.b, f.a});
    table.add_suffix({f.b, f.a});
    for (const Trace& s : table.prefixes()) {
        if (s.empty()) continue;
        Trace parent(s.begin(), s.end() - 1);
        CHECK(table.has_prefix(parent));
    }
    const auto& suffixes = table.suffixes();
    for (const Trace& e : suffixes) {
        if (e.empty()) continue;
        Trace tail(e.begin() + 1, e.end());
        CHECK(std::find(suffixes.begin(), suffixes.end(), tail) != suffixes.end());
    }
}

TEST_CASE("table dumps are printable") {
    AlternatingFixture f;
    ObservationTable table(f.sigma);
    table.add_suffix({f.b});
    table.fill([&](const Trace& t) { return t.size() > 1 ? Cell::unknown : f.member(t); });
    std::string text = table.dump(f.table);
    CHECK(text.find('+') != std::string::npos);
    CHECK(text.find('?') != std::string::npos);
    CHECK(text.find("eps") != std::string::npos);
}
