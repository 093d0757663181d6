#pragma once

#include <stdexcept>
#include <string>

namespace parlearn {

// Misuse of an operation's contract (caller bug).
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Data that can only arise from a broken oracle or an internal bug,
// e.g. a verdict flip in the observation store.
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Malformed external input (files, specs).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace parlearn
