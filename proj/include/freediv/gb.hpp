#pragma once

#include "freediv/budget.hpp"
#include "freediv/poly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace freediv {

// Which multiplication the engine uses. weyl_left computes left Groebner
// bases using the signature's commutation pairs; commutative ignores them.
enum class algebra : uint8_t { commutative, weyl_left };

bool order_equal(const monomial_order& a, const monomial_order& b);

struct cached_basis {
    monomial_order order;
    std::vector<polynomial> basis;
    algebra alg;
};

struct ideal {
    ring_ptr ring;
    std::vector<polynomial> gens;
    mutable std::shared_ptr<cached_basis> cache;

    ideal() = default;
    ideal(ring_ptr r, std::vector<polynomial> g) : ring(std::move(r)), gens(std::move(g)) {}
};

struct module_vector {
    std::vector<polynomial> comps;
    bool is_zero() const;
};

struct syzygy_module {
    int rank = 0;
    std::vector<module_vector> gens;
};

// ---- core engine ----

// Reduced monic Groebner basis. The order must be global; for weyl_left it
// is additionally validated against the signature (all global orders are
// admissible for the Weyl commutation rules).
std::vector<polynomial> groebner_basis(const std::vector<polynomial>& gens,
                                       const monomial_order& ord,
                                       algebra alg = algebra::commutative,
                                       budget* bud = nullptr);

// cached access: computes and stores the basis on the ideal
const std::vector<polynomial>& ideal_basis(const ideal& I, const monomial_order& ord,
                                           algebra alg = algebra::commutative,
                                           budget* bud = nullptr);

polynomial normal_form(const polynomial& p, const std::vector<polynomial>& basis,
                       const monomial_order& ord, algebra alg = algebra::commutative,
                       budget* bud = nullptr);

// division with quotients against a basis: p == sum q_i b_i + r
struct division_result {
    std::vector<polynomial> quotients;
    polynomial remainder;
};
division_result divide_full(const polynomial& p, const std::vector<polynomial>& basis,
                            const monomial_order& ord, algebra alg = algebra::commutative,
                            budget* bud = nullptr);

// Groebner basis with transformation rows: basis[i] == sum rows[i][j] * gens[j]
struct gb_with_transform {
    std::vector<polynomial> basis;
    std::vector<std::vector<polynomial>> rows;
};
gb_with_transform groebner_basis_transform(const std::vector<polynomial>& gens,
                                           const monomial_order& ord,
                                           algebra alg = algebra::commutative,
                                           budget* bud = nullptr);

// ---- module engine ----

std::vector<module_vector> module_groebner(const std::vector<module_vector>& gens,
                                           const monomial_order& ord, int dominant_comps,
                                           algebra alg = algebra::commutative,
                                           budget* bud = nullptr);

module_vector module_normal_form(const module_vector& v, const std::vector<module_vector>& basis,
                                 const monomial_order& ord, int dominant_comps,
                                 algebra alg = algebra::commutative, budget* bud = nullptr);

// full syzygy module of a tuple of ring elements
syzygy_module syzygies(const std::vector<polynomial>& g, const monomial_order& ord,
                       algebra alg = algebra::commutative, budget* bud = nullptr);

// syzygies of a tuple of module vectors
syzygy_module vector_syzygies(const std::vector<module_vector>& g, const monomial_order& ord,
                              algebra alg = algebra::commutative, budget* bud = nullptr);

// ---- derived commutative ideal operations ----

bool in_ideal(const polynomial& p, const ideal& I, budget* bud = nullptr);
bool ideal_equal(const ideal& I, const ideal& J, budget* bud = nullptr);

ideal eliminate(const ideal& I, const std::vector<int>& block_vars, budget* bud = nullptr);
ideal intersect(const ideal& I, const ideal& J, budget* bud = nullptr);
ideal ideal_quotient(const ideal& I, const polynomial& g, budget* bud = nullptr);
ideal quotient_by_ideal(const ideal& I, const ideal& J, budget* bud = nullptr);
std::pair<ideal, int> saturation(const ideal& I, const polynomial& g, budget* bud = nullptr);

// Krull dimension of R/I; -1 for the unit ideal, arity for (0)
int dimension(const ideal& I, budget* bud = nullptr);

// independent-set dimension directly from leading-term supports (test oracle hook)
int dimension_of_supports(const std::vector<uint32_t>& supports, int nvars);

struct regseq_result {
    bool regular = false;
    ideal locus; // contracted to the base block; (1) when regular everywhere
};
// seq elements must be homogeneous over the symbol/s variables of their ring
regseq_result regular_sequence_failure_locus(const std::vector<polynomial>& seq,
                                             budget* bud = nullptr);

} // namespace freediv
