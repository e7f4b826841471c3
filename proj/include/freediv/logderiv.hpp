#pragma once

#include "freediv/gb.hpp"
#include "freediv/weyl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace freediv {

class non_reduced_error : public std::runtime_error {
public:
    non_reduced_error(const std::string& msg, polynomial w)
        : std::runtime_error(msg), witness(std::move(w)) {}
    polynomial witness; // repeated-factor gcd
};

class not_applicable_error : public std::runtime_error {
public:
    explicit not_applicable_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Reduced polynomial divisor f = 0 in C^n.
struct divisor {
    ring_ptr ring; // Q[x_1..x_n]
    polynomial f;
    int n = 0;
};

// Construction enforces: f nonconstant and squarefree; throws
// non_reduced_error with the gcd witness otherwise.
divisor make_divisor(const polynomial& f);

// delta = sum a_i d/dx_i with delta(f) = weight * f (exact identity, checked)
struct log_derivation {
    std::vector<polynomial> coef;
    polynomial weight;
};

log_derivation make_log_derivation(const divisor& d, std::vector<polynomial> coef,
                                   polynomial weight);

// Saito-certified basis: det(coef matrix) = c * f with c in Q*.
struct log_basis {
    std::vector<log_derivation> delta;
    polynomial det;
    rational c;
};

ideal jacobian_ideal(const divisor& d);

// generating set of Der(log D) from the syzygies of (f, f_x1, ..., f_xn)
std::vector<log_derivation> log_derivations(const divisor& d, budget* bud = nullptr);

struct saito_outcome {
    std::optional<log_basis> basis;
    std::string reason; // set when not certified free
};

saito_outcome saito_test(const divisor& d, const std::vector<log_derivation>& gens,
                         budget* bud = nullptr);

// requires constant weights; produces delta_i(f) = 0 for i < n, delta_n(f) = f
log_basis euler_normalize(const divisor& d, const log_basis& basis);

// the operators delta_i - alpha_i s in D_n[s]; each checked against f^s
std::vector<polynomial> theta_fs(const divisor& d, const log_basis& basis);

// global ideal membership f in (f_x1, ..., f_xn)
bool euler_homogeneous_test(const divisor& d, budget* bud = nullptr);

log_derivation bracket(const divisor& d, const log_derivation& a, const log_derivation& b);

// delta as element of a Weyl signature containing the base variables
polynomial derivation_operator(const log_derivation& del, const divisor& d, const ring_ptr& W);

bool weight_is_constant(const log_derivation& del);
rational constant_weight(const log_derivation& del);

} // namespace freediv
