#include "parlearn/symbols.hpp"

#include <bit>

namespace parlearn {

Symbol SymbolTable::intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return Symbol{it->second};
    int32_t id = static_cast<int32_t>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return Symbol{id};
}

Symbol SymbolTable::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ContractViolation("unknown symbol: " + name);
    return Symbol{it->second};
}

const std::string& SymbolTable::name(Symbol s) const {
    if (!s.valid() || s.id >= size()) throw ContractViolation("symbol id out of range");
    return names_[s.id];
}

Alphabet::Alphabet(int universe_size) : universe_(universe_size) {
    words_.resize((universe_size + 63) / 64, 0);
}

Alphabet::Alphabet(int universe_size, std::initializer_list<Symbol> symbols) : Alphabet(universe_size) {
    for (Symbol s : symbols) add(s);
}

bool Alphabet::empty() const {
    for (uint64_t w : words_)
        if (w) return false;
    return true;
}

int Alphabet::size() const {
    int n = 0;
    for (uint64_t w : words_) n += std::popcount(w);
    return n;
}

void Alphabet::ensure_word(int word_index) {
    if (word_index >= static_cast<int>(words_.size())) words_.resize(word_index + 1, 0);
}

void Alphabet::add(Symbol s) {
    if (!s.valid() || s.id >= universe_) throw ContractViolation("symbol outside alphabet universe");
    ensure_word(s.id / 64);
    words_[s.id / 64] |= uint64_t{1} << (s.id % 64);
}

void Alphabet::remove(Symbol s) {
    if (!s.valid() || s.id >= universe_) return;
    if (s.id / 64 < static_cast<int>(words_.size())) words_[s.id / 64] &= ~(uint64_t{1} << (s.id % 64));
}

bool Alphabet::contains(Symbol s) const {
    if (!s.valid() || s.id / 64 >= static_cast<int>(words_.size())) return false;
    return (words_[s.id / 64] >> (s.id % 64)) & 1;
}

bool Alphabet::subset_of(const Alphabet& other) const {
    for (size_t i = 0; i < words_.size(); ++i) {
        uint64_t ow = i < other.words_.size() ? other.words_[i] : 0;
        if (words_[i] & ~ow) return false;
    }
    return true;
}

Alphabet Alphabet::unite(const Alphabet& other) const {
    Alphabet out(std::max(universe_, other.universe_));
    out.words_.resize(std::max(words_.size(), other.words_.size()), 0);
    for (size_t i = 0; i < out.words_.size(); ++i) {
        uint64_t a = i < words_.size() ? words_[i] : 0;
        uint64_t b = i < other.words_.size() ? other.words_[i] : 0;
        out.words_[i] = a | b;
    }
    return out;
}

Alphabet Alphabet::intersect(const Alphabet& other) const {
    Alphabet out(std::max(universe_, other.universe_));
    out.words_.resize(std::max(words_.size(), other.words_.size()), 0);
    for (size_t i = 0; i < out.words_.size(); ++i) {
        uint64_t a = i < words_.size() ? words_[i] : 0;
        uint64_t b = i < other.words_.size() ? other.words_[i] : 0;
        out.words_[i] = a & b;
    }
    return out;
}

Alphabet Alphabet::minus(const Alphabet& other) const {
    Alphabet out(std::max(universe_, other.universe_));
    out.words_.resize(std::max(words_.size(), other.words_.size()), 0);
    for (size_t i = 0; i < out.words_.size(); ++i) {
        uint64_t a = i < words_.size() ? words_[i] : 0;
        uint64_t b = i < other.words_.size() ? other.words_[i] : 0;
        out.words_[i] = a & ~b;
    }
    return out;
}

std::vector<Symbol> Alphabet::symbols() const {
    std::vector<Symbol> out;
    for (size_t i = 0; i < words_.size(); ++i) {
        uint64_t w = words_[i];
        while (w) {
            int bit = std::countr_zero(w);
            out.push_back(Symbol{static_cast<int32_t>(i * 64 + bit)});
            w &= w - 1;
        }
    }
    return out;
}

bool operator==(const Alphabet& a, const Alphabet& b) {
    size_t n = std::max(a.words_.size(), b.words_.size());
    for (size_t i = 0; i < n; ++i) {
        uint64_t aw = i < a.words_.size() ? a.words_[i] : 0;
        uint64_t bw = i < b.words_.size() ? b.words_[i] : 0;
        if (aw != bw) return false;
    }
    return true;
}

bool Alphabet::lex_less(const Alphabet& a, const Alphabet& b) {
    size_t n = std::max(a.words_.size(), b.words_.size());
    for (size_t i = 0; i < n; ++i) {
        uint64_t aw = i < a.words_.size() ? a.words_[i] : 0;
        uint64_t bw = i < b.words_.size() ? b.words_[i] : 0;
        uint64_t diff = aw ^ bw;
        if (diff) {
            // The set holding the lowest differing symbol compares smaller:
            // its ascending symbol list diverges first with a smaller id
            // (or is a proper prefix of the other).
            uint64_t low = diff & ~(diff - 1);
            return (aw & low) != 0;
        }
    }
    return false;
}

size_t Alphabet::hash() const {
    size_t last = words_.size();
    while (last > 0 && words_[last - 1] == 0) --last;
    size_t h = 1469598103934665603ull;
    for (size_t i = 0; i < last; ++i) {
        h ^= static_cast<size_t>(words_[i]);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace parlearn
