#pragma once

#include "freediv/gb.hpp"

#include <vector>

namespace freediv {

// ---- normal ordering ----

// Product of two normally ordered monomials, expanded through the
// signature's commutation pairs ([d_i, x_i] = 1, s*t = t*(s-1)).
// Coefficients are exact integers.
std::vector<std::pair<monomial, mpz_class>> weyl_monomial_product(const ring_signature& R,
                                                                  const monomial& a,
                                                                  const monomial& b);

// Normally ordered product in the Weyl algebra of the common signature.
polynomial weyl_product(const polynomial& a, const polynomial& b);

// [a, b] = a*b - b*a
polynomial weyl_bracket(const polynomial& a, const polynomial& b);

// literal action of a normally ordered operator on a polynomial of the same
// signature (momenta act as partial derivatives)
polynomial weyl_apply(const polynomial& op, const polynomial& g);

// ---- filtrations and symbols ----

enum class filtration : uint8_t { order, total_order }; // F (d-degree) vs F_T (d+s degree)

int64_t weyl_order(const polynomial& p, filtration f);

// Principal symbol into the commutative symbol ring (d_i -> xi_i; s kept).
// For filtration::order the s powers ride along in the coefficients.
polynomial symbol(const polynomial& p, filtration f, const ring_ptr& symbol_ring);

// ---- action on f^s ----

// numerator * f^{-pole_order} * f^s with numerator in Q[x, s]
struct fs_value {
    polynomial numerator;
    int pole_order = 0;
    bool is_zero() const { return numerator.is_zero(); }
};

// exact action of P in D_n[s] on the module O[f^{-1}, s] f^s
fs_value apply_to_fs(const polynomial& op, const polynomial& f);

// ---- left ideals ----

struct left_ideal {
    ring_ptr ring;
    std::vector<polynomial> gens;
    mutable std::shared_ptr<cached_basis> cache;

    left_ideal() = default;
    left_ideal(ring_ptr r, std::vector<polynomial> g) : ring(std::move(r)), gens(std::move(g)) {}
};

std::vector<polynomial> left_groebner_basis(const std::vector<polynomial>& gens,
                                            const monomial_order& ord, budget* bud = nullptr);
const std::vector<polynomial>& left_basis(const left_ideal& I, const monomial_order& ord,
                                          budget* bud = nullptr);
polynomial left_normal_form(const polynomial& p, const std::vector<polynomial>& basis,
                            const monomial_order& ord, budget* bud = nullptr);
bool in_left_ideal(const polynomial& p, const left_ideal& I, budget* bud = nullptr);
bool left_ideal_equal(const left_ideal& I, const left_ideal& J, budget* bud = nullptr);

syzygy_module left_syzygies(const std::vector<polynomial>& gens, budget* bud = nullptr);

// {P : c P in I} for a central polynomial c (in s and commutative variables)
left_ideal colon_by_central(const left_ideal& I, const polynomial& c, budget* bud = nullptr);

// I intersect Q[s]: monic generator, or 0 when the slice is trivial.
// The minpoly strategy needs the slice to be nonzero to terminate, so the
// default first bounds the search and falls back to elimination.
polynomial central_slice(const left_ideal& I, budget* bud = nullptr, int minpoly_cap = 24);

// {b(s) : b * p in I}: monic generator of the central annihilator of p mod I
polynomial central_colon_element(const left_ideal& I, const polynomial& p, budget* bud = nullptr,
                                 int minpoly_cap = 24);

// ---- annihilator of f^s ----

enum class annfs_algorithm : uint8_t { briancon_maisonobe, oaku_takayama };

// Generators of ann_{D_n[s]} f^s with s acting as in delta(f^s) = delta(f) s f^{-1} f^s.
// Every returned generator is certified against apply_to_fs.
left_ideal ann_fs(const polynomial& f, annfs_algorithm algo = annfs_algorithm::briancon_maisonobe,
                  budget* bud = nullptr);

// the D_n[s] signature used by ann_fs for a given base ring
ring_ptr weyl_s_ring_for(const ring_ptr& base);

} // namespace freediv
