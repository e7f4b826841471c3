#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace freediv {

// Hard cap on ring arity. The largest signature in use is the
// Briancon-Maisonobe / Oaku-Takayama ring for n=4 base variables (12 vars).
constexpr int kMaxVars = 16;

// How a variable multiplies against its partner.
//   commutative : central, commutes with everything
//   position    : x_i or t; commutes with everything except its momentum
//   momentum    : d_i with [d_i, x_i] = 1
//   shift_var   : t in the Briancon-Maisonobe ring
//   shift_actor : s with s*t = t*(s-1)
enum class var_kind : uint8_t { commutative, position, momentum, shift_var, shift_actor };

// Semantic block a variable belongs to (drives symbol maps, elimination
// presets and report printing).
enum class var_block : uint8_t { base, momentum, symbol, s, t, dt, aux };

class ring_signature;
using ring_ptr = std::shared_ptr<const ring_signature>;

class ring_signature {
public:
    struct var {
        std::string name;
        var_kind kind = var_kind::commutative;
        var_block block = var_block::aux;
        int partner = -1; // pairing index for momentum / shift_actor
        int shift = 0;    // shift_var only: s * v = v * (s + shift)
    };

    explicit ring_signature(std::vector<var> vars);

    int arity() const { return (int)vars_.size(); }
    const var& at(int i) const { return vars_[i]; }
    const std::vector<var>& vars() const { return vars_; }
    int index_of(const std::string& name) const; // -1 if absent
    bool has(const std::string& name) const { return index_of(name) >= 0; }
    bool is_weyl() const { return weyl_; }

    std::vector<int> block_indices(var_block b) const;
    int base_count() const { return base_count_; }

    bool same_names(const ring_signature& o) const;

    // --- factories ---

    // plain commutative polynomial ring
    static ring_ptr polynomial(const std::vector<std::string>& names);

    // commutative ring of x-variables only (all block base)
    static ring_ptr base_ring(const std::vector<std::string>& xs);

    // D_n (momenta named d<i+1>), optionally with central s
    static ring_ptr weyl(const std::vector<std::string>& xs, bool with_s);

    // Briancon-Maisonobe ring: D_n plus the pair (dt, s) with s*dt = dt*(s+1)
    static ring_ptr weyl_bm(const std::vector<std::string>& xs);

    // Oaku-Takayama ring: D_{n+1} (extra pair t, dt) plus commutative u, v
    static ring_ptr weyl_ot(const std::vector<std::string>& xs);

    // commutative symbol ring Q[x, xi_1..xi_n (, s)] of a Weyl signature
    static ring_ptr symbol_ring(const std::vector<std::string>& xs, bool with_s);

    // Rees elimination ring Q[x, s, xi, t]
    static ring_ptr rees_ring(const std::vector<std::string>& xs);

    // same signature plus one extra commutative aux variable
    static ring_ptr with_extra_aux(const ring_ptr& r, const std::string& name);

    static std::string momentum_name(const std::string& base) { return "d" + base; }
    static std::string symbol_name(int i) { return "xi" + std::to_string(i + 1); }

private:
    std::vector<var> vars_;
    bool weyl_ = false;
    int base_count_ = 0;
};

// Exponent vector over a signature. Fixed capacity, cheap to copy.
class monomial {
public:
    monomial() : n_(0) { e_.fill(0); }
    explicit monomial(int arity) : n_((int8_t)arity) { e_.fill(0); }

    int arity() const { return n_; }
    int32_t operator[](int i) const { return e_[i]; }
    void set(int i, int32_t v) { e_[i] = v; }
    void bump(int i, int32_t v) { e_[i] += v; }

    int64_t degree() const;
    int64_t degree_over(const std::vector<int>& idx) const;
    bool is_one() const;

    monomial operator*(const monomial& o) const;
    // exact quotient; caller must check divisibility
    monomial operator/(const monomial& o) const;
    bool divides(const monomial& o) const; // *this | o
    monomial lcm(const monomial& o) const;
    monomial gcd(const monomial& o) const;
    bool coprime(const monomial& o) const;

    bool operator==(const monomial& o) const;
    size_t hash() const;

private:
    std::array<int32_t, kMaxVars> e_;
    int8_t n_;
};

struct monomial_hasher {
    size_t operator()(const monomial& m) const { return m.hash(); }
};

} // namespace freediv
