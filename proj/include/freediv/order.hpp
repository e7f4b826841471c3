#pragma once

#include "freediv/ring.hpp"

#include <cstdint>
#include <vector>

namespace freediv {

// Total multiplicative order on monomials of a fixed signature. Built from
// comparison layers executed in sequence; the usual kinds (lex, degrevlex,
// block orders, weight-first orders) are provided as factories.
class monomial_order {
public:
    enum class layer_kind : uint8_t { weight, lex, revlex };
    struct layer {
        layer_kind kind;
        std::vector<int> vars;     // lex: significance order; revlex: block order
        std::vector<int64_t> w;    // weight layer only, indexed by variable
    };

    monomial_order() = default;

    // returns <0, 0, >0  (a < b, a == b, a > b)
    int compare(const monomial& a, const monomial& b) const;
    bool less(const monomial& a, const monomial& b) const { return compare(a, b) < 0; }

    // well-order test: every variable must exceed 1
    bool is_global(int arity) const;

    const std::vector<layer>& layers() const { return layers_; }
    std::string describe() const { return desc_; }

    static monomial_order lex(const ring_ptr& r);
    static monomial_order degrevlex(const ring_ptr& r);
    // degrevlex per block, listed blocks first (elimination style)
    static monomial_order block_drl(const ring_ptr& r, const std::vector<std::vector<int>>& blocks);
    // block order eliminating the given variables (they dominate)
    static monomial_order eliminating(const ring_ptr& r, const std::vector<int>& elim);
    // weight layer first, then the given tiebreak
    static monomial_order weighted(const ring_ptr& r, std::vector<int64_t> w, monomial_order tiebreak);

private:
    std::vector<layer> layers_;
    std::string desc_;
};

} // namespace freediv
