#pragma once

#include "freediv/order.hpp"
#include "freediv/rational.hpp"
#include "freediv/ring.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace freediv {

struct term {
    monomial m;
    rational c;
};

// Exact multivariate polynomial over the rationals. Terms are kept sorted
// descending under the signature-wide degrevlex order, so the canonical
// leading term is terms()[0] and equality is structural.
class polynomial {
public:
    polynomial() = default;
    explicit polynomial(ring_ptr r) : ring_(std::move(r)) {}

    static polynomial zero(ring_ptr r) { return polynomial(std::move(r)); }
    static polynomial constant(ring_ptr r, const rational& c);
    static polynomial variable(const ring_ptr& r, const std::string& name);
    static polynomial from_terms(ring_ptr r, std::vector<term> ts); // normalizes

    const ring_ptr& ring() const { return ring_; }
    const std::vector<term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    rational constant_value() const; // requires is_constant()
    size_t term_count() const { return terms_.size(); }

    // canonical (degrevlex) leading data
    const term& lt() const;

    int64_t total_degree() const; // -1 for zero
    int64_t degree_in(int var) const;
    int64_t degree_over(const std::vector<int>& vars) const;
    bool homogeneous_over(const std::vector<int>& vars) const;
    bool involves(const std::vector<int>& vars) const;

    polynomial operator-() const;
    polynomial& operator+=(const polynomial& o);
    polynomial& operator-=(const polynomial& o);
    friend polynomial operator+(polynomial a, const polynomial& b) { return a += b; }
    friend polynomial operator-(polynomial a, const polynomial& b) { return a -= b; }
    friend polynomial operator*(const polynomial& a, const polynomial& b);
    polynomial& operator*=(const polynomial& o) { return *this = *this * o; }
    polynomial scaled(const rational& c) const;
    polynomial times_monomial(const monomial& m, const rational& c) const;
    polynomial pow(int k) const;

    friend bool operator==(const polynomial& a, const polynomial& b);
    friend bool operator!=(const polynomial& a, const polynomial& b) { return !(a == b); }

    polynomial derivative(const std::string& var) const;
    polynomial derivative(int var) const;

    // exact division; nullopt when not divisible
    std::optional<polynomial> divided_by(const polynomial& d) const;

    // variables map by name into the target signature; missing names are an error
    polynomial mapped_to(const ring_ptr& target) const;
    // rename var `from` (index) to `to` (index in target), other vars by name
    polynomial mapped_to(const ring_ptr& target,
                         const std::vector<std::pair<std::string, std::string>>& renames) const;

    // substitute a polynomial for one variable (commutative semantics)
    polynomial substituted(int var, const polynomial& value) const;

    rational evaluate(const std::vector<rational>& point) const;

    // primitive integer form: returns content c (rational) with *this == c * primitive
    std::pair<rational, polynomial> primitive_part() const;

    std::string str() const;

private:
    void normalize(); // sort desc, merge, drop zeros
    ring_ptr ring_;
    std::vector<term> terms_;
};

// gcd over Q[x...] via primitive PRS; result is primitive with positive lead
polynomial poly_gcd(const polynomial& a, const polynomial& b);

int canonical_compare(const monomial& a, const monomial& b);

} // namespace freediv
