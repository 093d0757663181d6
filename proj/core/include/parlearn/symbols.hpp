#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "parlearn/errors.hpp"

namespace parlearn {

// An action symbol, a dense index into the run's SymbolTable.
struct Symbol {
    int32_t id = -1;

    constexpr bool valid() const { return id >= 0; }
    friend constexpr auto operator<=>(Symbol, Symbol) = default;
};

// Interning table for symbol display names. Ids are assigned in
// interning order and are dense in [0, size).
class SymbolTable {
public:
    Symbol intern(const std::string& name);

    // Lookup without interning; throws if unknown.
    Symbol find(const std::string& name) const;
    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    const std::string& name(Symbol s) const;
    int size() const { return static_cast<int>(names_.size()); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int32_t> index_;
};

// A set of symbols over a fixed universe, stored as a bitset.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(int universe_size);
    Alphabet(int universe_size, std::initializer_list<Symbol> symbols);

    int universe_size() const { return universe_; }
    bool empty() const;
    int size() const;

    void add(Symbol s);
    void remove(Symbol s);
    bool contains(Symbol s) const;

    bool subset_of(const Alphabet& other) const;
    Alphabet unite(const Alphabet& other) const;
    Alphabet intersect(const Alphabet& other) const;
    Alphabet minus(const Alphabet& other) const;

    // Symbols in ascending id order.
    std::vector<Symbol> symbols() const;

    // Set equality; the universe size is a capacity hint and does not
    // participate in comparisons.
    friend bool operator==(const Alphabet& a, const Alphabet& b);

    // Order matching lexicographic comparison of the ascending symbol lists,
    // used wherever ties between symbol sets must be broken deterministically.
    static bool lex_less(const Alphabet& a, const Alphabet& b);

    size_t hash() const;

private:
    void ensure_word(int word_index);

    int universe_ = 0;
    std::vector<uint64_t> words_;
};

struct AlphabetHash {
    size_t operator()(const Alphabet& a) const { return a.hash(); }
};

}  // namespace parlearn
