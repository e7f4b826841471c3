#pragma once

#include "freediv/poly.hpp"

#include <stdexcept>
#include <string>

namespace freediv {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    size_t pos;
};

// Grammar: integer and rational literals (3, -2/5), identifiers (letters then
// digits), operators + - * ^, parentheses; ^ takes a nonnegative integer;
// whitespace insignificant; no implicit multiplication.
polynomial parse_polynomial(const std::string& text, const ring_ptr& ring);

} // namespace freediv
