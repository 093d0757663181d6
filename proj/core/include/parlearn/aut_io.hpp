#pragma once

#include <iosfwd>
#include <string>

#include "parlearn/lts.hpp"

namespace parlearn {

// Aldebaran text format: a header `des (I,M,N)` followed by M lines
// `(src,"label",dst)`. Labels are interned into `table` in order of first
// appearance. The reader rejects nondeterministic inputs.
Lts read_aut(std::istream& in, SymbolTable& table);
Lts read_aut_file(const std::string& path, SymbolTable& table);

void write_aut(std::ostream& out, const Lts& lts, const SymbolTable& table);
void write_aut_file(const std::string& path, const Lts& lts, const SymbolTable& table);

}  // namespace parlearn
