#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nclmp {

// Malformed text, duplicate ids, unknown tokens.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller passed something that does not fit the operation (unknown id,
// size mismatch, non-bijective assignment).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A documented precondition does not hold (invalid orientation, non-free
// configuration, ...).
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

// A search or enumeration hit its configured cap. Callers turn this into
// an INCONCLUSIVE answer; it is never treated as "no".
struct CapExceeded : std::runtime_error {
    std::size_t cap;
    CapExceeded(const std::string& what, std::size_t c) : std::runtime_error(what), cap(c) {}
};

struct PlanarityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Orders "e2" before "e10": runs of digits compare by value.
bool natural_less(std::string_view a, std::string_view b);

std::vector<std::string> split_ws(std::string_view line);

}  // namespace nclmp
