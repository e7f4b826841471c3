#include "freediv/order.hpp"

#include <algorithm>
#include <stdexcept>

namespace freediv {

int monomial_order::compare(const monomial& a, const monomial& b) const {
    for (const layer& L : layers_) {
        switch (L.kind) {
        case layer_kind::weight: {
            int64_t s = 0;
            for (size_t i = 0; i < L.w.size(); ++i)
                if (L.w[i]) s += L.w[i] * (int64_t)(a[(int)i] - b[(int)i]);
            if (s) return s > 0 ? 1 : -1;
            break;
        }
        case layer_kind::lex: {
            for (int v : L.vars) {
                int32_t d = a[v] - b[v];
                if (d) return d > 0 ? 1 : -1;
            }
            break;
        }
        case layer_kind::revlex: {
            int64_t da = 0, db = 0;
            for (int v : L.vars) { da += a[v]; db += b[v]; }
            if (da != db) return da > db ? 1 : -1;
            for (auto it = L.vars.rbegin(); it != L.vars.rend(); ++it) {
                int32_t d = a[*it] - b[*it];
                if (d) return d > 0 ? -1 : 1; // smaller exponent in the last variable wins
            }
            break;
        }
        }
    }
    return 0;
}

bool monomial_order::is_global(int arity) const {
    // x_i > 1 for all i
    for (int v = 0; v < arity; ++v) {
        monomial m(arity);
        m.set(v, 1);
        monomial one(arity);
        if (compare(m, one) <= 0) return false;
    }
    return true;
}

monomial_order monomial_order::lex(const ring_ptr& r) {
    monomial_order o;
    layer L{layer_kind::lex, {}, {}};
    for (int i = 0; i < r->arity(); ++i) L.vars.push_back(i);
    o.layers_.push_back(std::move(L));
    o.desc_ = "lex";
    return o;
}

monomial_order monomial_order::degrevlex(const ring_ptr& r) {
    monomial_order o;
    layer L{layer_kind::revlex, {}, {}};
    for (int i = 0; i < r->arity(); ++i) L.vars.push_back(i);
    o.layers_.push_back(std::move(L));
    o.desc_ = "degrevlex";
    return o;
}

monomial_order monomial_order::block_drl(const ring_ptr& r,
                                         const std::vector<std::vector<int>>& blocks) {
    monomial_order o;
    std::vector<bool> used(r->arity(), false);
    for (const auto& b : blocks) {
        if (b.empty()) continue;
        layer L{layer_kind::revlex, b, {}};
        for (int v : b) {
            if (v < 0 || v >= r->arity() || used[v])
                throw std::invalid_argument("block_drl: bad or repeated variable index");
            used[v] = true;
        }
        o.layers_.push_back(std::move(L));
    }
    for (int v = 0; v < r->arity(); ++v)
        if (!used[v]) throw std::invalid_argument("block_drl: blocks must cover the signature");
    o.desc_ = "block-degrevlex";
    return o;
}

monomial_order monomial_order::eliminating(const ring_ptr& r, const std::vector<int>& elim) {
    std::vector<bool> in_elim(r->arity(), false);
    for (int v : elim) in_elim[v] = true;
    std::vector<int> rest;
    for (int v = 0; v < r->arity(); ++v)
        if (!in_elim[v]) rest.push_back(v);
    monomial_order o = block_drl(r, {elim, rest});
    o.desc_ = "eliminating";
    return o;
}

monomial_order monomial_order::weighted(const ring_ptr& r, std::vector<int64_t> w,
                                        monomial_order tiebreak) {
    if ((int)w.size() != r->arity())
        throw std::invalid_argument("weighted: weight vector arity mismatch");
    monomial_order o;
    o.layers_.push_back(layer{layer_kind::weight, {}, std::move(w)});
    for (const auto& L : tiebreak.layers_) o.layers_.push_back(L);
    o.desc_ = "weighted+" + tiebreak.desc_;
    return o;
}

} // namespace freediv
