#include "freediv/ring.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace freediv {

ring_signature::ring_signature(std::vector<var> vars) : vars_(std::move(vars)) {
    if (vars_.empty() || (int)vars_.size() > kMaxVars)
        throw std::invalid_argument("ring_signature: arity must be in [1, " +
                                    std::to_string(kMaxVars) + "]");
    std::unordered_set<std::string> seen;
    for (const auto& v : vars_) {
        if (!seen.insert(v.name).second)
            throw std::invalid_argument("ring_signature: duplicate variable '" + v.name + "'");
        if (v.kind == var_kind::momentum || v.kind == var_kind::shift_actor) {
            weyl_ = true;
            if (v.partner < 0 || v.partner >= (int)vars_.size())
                throw std::invalid_argument("ring_signature: bad partner index");
        }
        if (v.block == var_block::base) base_count_++;
    }
}

int ring_signature::index_of(const std::string& name) const {
    for (int i = 0; i < (int)vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return -1;
}

std::vector<int> ring_signature::block_indices(var_block b) const {
    std::vector<int> out;
    for (int i = 0; i < (int)vars_.size(); ++i)
        if (vars_[i].block == b) out.push_back(i);
    return out;
}

bool ring_signature::same_names(const ring_signature& o) const {
    if (vars_.size() != o.vars_.size()) return false;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name != o.vars_[i].name || vars_[i].kind != o.vars_[i].kind) return false;
    return true;
}

ring_ptr ring_signature::polynomial(const std::vector<std::string>& names) {
    std::vector<var> vs;
    for (const auto& n : names) vs.push_back({n, var_kind::commutative, var_block::base, -1});
    return std::make_shared<ring_signature>(std::move(vs));
}

ring_ptr ring_signature::base_ring(const std::vector<std::string>& xs) { return polynomial(xs); }

ring_ptr ring_signature::weyl(const std::vector<std::string>& xs, bool with_s) {
    std::vector<var> vs;
    int n = (int)xs.size();
    for (const auto& x : xs) vs.push_back({x, var_kind::position, var_block::base, -1});
    for (int i = 0; i < n; ++i)
        vs.push_back({momentum_name(xs[i]), var_kind::momentum, var_block::momentum, i});
    if (with_s) vs.push_back({"s", var_kind::commutative, var_block::s, -1});
    return std::make_shared<ring_signature>(std::move(vs));
}

ring_ptr ring_signature::weyl_bm(const std::vector<std::string>& xs) {
    std::vector<var> vs;
    int n = (int)xs.size();
    for (const auto& x : xs) vs.push_back({x, var_kind::position, var_block::base, -1, 0});
    for (int i = 0; i < n; ++i)
        vs.push_back({momentum_name(xs[i]), var_kind::momentum, var_block::momentum, i, 0});
    vs.push_back({"dt", var_kind::shift_var, var_block::dt, -1, +1});
    vs.push_back({"s", var_kind::shift_actor, var_block::s, 2 * n, 0});
    return std::make_shared<ring_signature>(std::move(vs));
}

ring_ptr ring_signature::weyl_ot(const std::vector<std::string>& xs) {
    std::vector<var> vs;
    int n = (int)xs.size();
    for (const auto& x : xs) vs.push_back({x, var_kind::position, var_block::base, -1});
    vs.push_back({"t", var_kind::position, var_block::t, -1});
    for (int i = 0; i < n; ++i)
        vs.push_back({momentum_name(xs[i]), var_kind::momentum, var_block::momentum, i});
    vs.push_back({"dt", var_kind::momentum, var_block::dt, n});
    vs.push_back({"u", var_kind::commutative, var_block::aux, -1});
    vs.push_back({"v", var_kind::commutative, var_block::aux, -1});
    return std::make_shared<ring_signature>(std::move(vs));
}

ring_ptr ring_signature::symbol_ring(const std::vector<std::string>& xs, bool with_s) {
    std::vector<var> vs;
    for (const auto& x : xs) vs.push_back({x, var_kind::commutative, var_block::base, -1});
    for (int i = 0; i < (int)xs.size(); ++i)
        vs.push_back({symbol_name(i), var_kind::commutative, var_block::symbol, -1});
    if (with_s) vs.push_back({"s", var_kind::commutative, var_block::s, -1});
    return std::make_shared<ring_signature>(std::move(vs));
}

ring_ptr ring_signature::rees_ring(const std::vector<std::string>& xs) {
    std::vector<var> vs;
    for (const auto& x : xs) vs.push_back({x, var_kind::commutative, var_block::base, -1});
    for (int i = 0; i < (int)xs.size(); ++i)
        vs.push_back({symbol_name(i), var_kind::commutative, var_block::symbol, -1});
    vs.push_back({"s", var_kind::commutative, var_block::s, -1});
    vs.push_back({"t", var_kind::commutative, var_block::t, -1});
    return std::make_shared<ring_signature>(std::move(vs));
}

ring_ptr ring_signature::with_extra_aux(const ring_ptr& r, const std::string& name) {
    if (r->has(name)) throw std::invalid_argument("with_extra_aux: name clash '" + name + "'");
    std::vector<var> vs = r->vars();
    vs.push_back({name, var_kind::commutative, var_block::aux, -1});
    return std::make_shared<ring_signature>(std::move(vs));
}

int64_t monomial::degree() const {
    int64_t d = 0;
    for (int i = 0; i < n_; ++i) d += e_[i];
    return d;
}

int64_t monomial::degree_over(const std::vector<int>& idx) const {
    int64_t d = 0;
    for (int i : idx) d += e_[i];
    return d;
}

bool monomial::is_one() const {
    for (int i = 0; i < n_; ++i)
        if (e_[i]) return false;
    return true;
}

monomial monomial::operator*(const monomial& o) const {
    monomial r(n_);
    for (int i = 0; i < n_; ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

monomial monomial::operator/(const monomial& o) const {
    monomial r(n_);
    for (int i = 0; i < n_; ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

bool monomial::divides(const monomial& o) const {
    for (int i = 0; i < n_; ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

monomial monomial::lcm(const monomial& o) const {
    monomial r(n_);
    for (int i = 0; i < n_; ++i) r.e_[i] = std::max(e_[i], o.e_[i]);
    return r;
}

monomial monomial::gcd(const monomial& o) const {
    monomial r(n_);
    for (int i = 0; i < n_; ++i) r.e_[i] = std::min(e_[i], o.e_[i]);
    return r;
}

bool monomial::coprime(const monomial& o) const {
    for (int i = 0; i < n_; ++i)
        if (e_[i] && o.e_[i]) return false;
    return true;
}

bool monomial::operator==(const monomial& o) const {
    if (n_ != o.n_) return false;
    for (int i = 0; i < n_; ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

size_t monomial::hash() const {
    size_t h = 1469598103934665603ULL;
    for (int i = 0; i < n_; ++i) {
        h ^= (size_t)(uint32_t)e_[i];
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace freediv
