#pragma once

#include "freediv/logderiv.hpp"

#include <optional>
#include <string>
#include <vector>

namespace freediv {

// ker phi for phi: Q[x][s, xi] -> Rees(jac D), s -> f t, xi_i -> f_{x_i} t,
// with the degree-one part Delta_i singled out.
struct rees_kernel_t {
    ring_ptr sring;                    // Q[x, xi, s]
    ideal full;                        // ker phi
    std::vector<polynomial> degree_one; // Delta_i = -alpha_i s + sum a_ij xi_j
    std::vector<polynomial> extras;     // minimal generators outside the degree-one span
    std::vector<int64_t> extra_degrees; // their xi-degrees
};

rees_kernel_t rees_kernel(const divisor& d, const log_basis& basis, budget* bud = nullptr);

// ker phi generated by its degree-one part (commutative linear type)
bool clt_test(const rees_kernel_t& k, budget* bud = nullptr);

// minimal N with s^N ker phi contained in ker^(1) phi; nullopt if none exists
std::optional<int> gcl_exponent(const rees_kernel_t& k, budget* bud = nullptr);

struct flag_locus {
    bool flag = false;
    ideal locus; // colon-support locus contracted to the x-block
};

// sigma_T(delta_i - alpha_i s) regular sequence in Q[x, xi, s]
flag_locus gk_test(const divisor& d, const log_basis& basis, budget* bud = nullptr);
// sigma(delta_i) regular sequence in Q[x, xi]
flag_locus koszul_test(const divisor& d, const log_basis& basis, budget* bud = nullptr);

// monic generator of (ann f^s + D[s] f) cap Q[s]
polynomial bernstein(const divisor& d, const left_ideal& ann, budget* bud = nullptr);

// ann^(1) = D[s] Theta_{f,s} and the colon tower up to ann f^s
struct ann_tower_t {
    struct level_t {
        int k = 0;                       // total-order filtration level reached
        polynomial factor;               // connecting (s + gamma)
        std::vector<polynomial> new_gens; // generators entering at this level
    };
    std::vector<level_t> levels; // one entry per strict step
    int terminal = 1;            // k_0 with ann^(k_0) = ann f^s
    bool complete = false;
    std::string abort_reason;    // set when NonPrincipalStep aborts the tower
    left_ideal ann1;
};

ann_tower_t ann_tower(const divisor& d, const std::vector<polynomial>& theta,
                      const left_ideal& ann, budget* bud = nullptr);

// beta(s) with beta * ann in ann^(1); from the tower when complete, else by a
// single colon computation; checked directly against the generators
polynomial gdl_witness(const divisor& d, const ann_tower_t& tower, const left_ideal& ann,
                       budget* bud = nullptr);

bool dlt_test(const left_ideal& ann, const std::vector<polynomial>& theta, budget* bud = nullptr);

// Gr_{F_T} ann f^s == ker phi
bool gr_ann_check(const divisor& d, const left_ideal& ann, const rees_kernel_t& k,
                  budget* bud = nullptr);

struct pre_spencer_result {
    bool flag = false;
    std::string method; // "s-torsion criterion" or "direct syzygy"
};

pre_spencer_result pre_spencer_test(const divisor& d, const std::vector<polynomial>& theta,
                                    bool gk, const log_basis& basis, budget* bud = nullptr);

// left syzygies of gens generated by the Spencer-type relations R_ij
bool spencer_syzygy_test(const divisor& d, const log_basis& basis, int use_first,
                         budget* bud = nullptr);

// characteristic variety of D/D(gens) has dimension n
bool holonomicity_test(const std::vector<polynomial>& gens, const divisor& d,
                       budget* bud = nullptr);

bool spencer_test(const divisor& d, const pre_spencer_result& ps, const log_basis& basis,
                  budget* bud = nullptr);

enum class check_status : uint8_t { proved, disproved, inconclusive };

// ann_D f^{-1} == D(delta_i + alpha_i), via s = -1 specialization guarded by
// the integer roots of b
check_status ann_f_inverse_check(const divisor& d, const polynomial& b, const log_basis& basis,
                                 const left_ideal& ann, budget* bud = nullptr);

check_status lct_test(const pre_spencer_result& ps, check_status ann_f_inverse);

struct funceq_result {
    bool found = false;
    int64_t order_p = -1;
    bool in_ann1 = false;           // b - P f in ann^(1)
    bool regular_candidate = false; // s^{deg b} in (f) + ker phi
    int process_rounds = 0;         // symbol-syzygy extension rounds used
    std::string note;
};

// functional equation b(s) = P f mod ann^(1) via total-symbol descent with the
// iterative generator-extension process; falls back to division against
// ann + D[s] f (membership level "ann")
funceq_result functional_equation(const divisor& d, const polynomial& b,
                                  const std::vector<polynomial>& theta, const left_ideal& ann,
                                  const rees_kernel_t* kernel, budget* bud = nullptr,
                                  int process_round_cap = 25);

// T f in D({delta_i : alpha_i = 0}) for every higher-order generator T
bool ann_f_generated_by(const divisor& d, const left_ideal& ann, const log_basis& basis,
                        budget* bud = nullptr);

// integer/rational root utilities for b(s)
std::vector<std::pair<rational, int>> rational_roots(const polynomial& b);
bool has_integer_root_below(const polynomial& b, long bound);

} // namespace freediv
