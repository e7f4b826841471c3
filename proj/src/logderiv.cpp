#include "freediv/logderiv.hpp"

#include <algorithm>
#include <numeric>

namespace freediv {

divisor make_divisor(const polynomial& f) {
    if (f.is_zero() || f.is_constant())
        throw std::invalid_argument("divisor: f must be nonconstant");
    divisor d{f.ring(), f, f.ring()->arity()};
    polynomial g = f;
    for (int i = 0; i < d.n; ++i) g = poly_gcd(g, f.derivative(i));
    if (!g.is_constant())
        throw non_reduced_error("divisor: f is not squarefree, repeated factor gcd = " + g.str(),
                                g);
    return d;
}

log_derivation make_log_derivation(const divisor& d, std::vector<polynomial> coef,
                                   polynomial weight) {
    if ((int)coef.size() != d.n)
        throw std::invalid_argument("log_derivation: coefficient count mismatch");
    polynomial lhs = polynomial::zero(d.ring);
    for (int i = 0; i < d.n; ++i) lhs += coef[i] * d.f.derivative(i);
    if (lhs != weight * d.f)
        throw std::logic_error("log_derivation: sum a_i f_xi != weight * f");
    return log_derivation{std::move(coef), std::move(weight)};
}

ideal jacobian_ideal(const divisor& d) {
    std::vector<polynomial> gens{d.f};
    for (int i = 0; i < d.n; ++i) {
        polynomial fi = d.f.derivative(i);
        if (!fi.is_zero()) gens.push_back(fi);
    }
    return ideal(d.ring, std::move(gens));
}

bool weight_is_constant(const log_derivation& del) { return del.weight.is_constant(); }

rational constant_weight(const log_derivation& del) { return del.weight.constant_value(); }

namespace {

// joint primitive form of (coef, weight), sign fixed on the first nonzero entry
log_derivation primitivize(const divisor&, const log_derivation& g) {
    mpz_class den(1), num(0);
    auto visit = [&](const polynomial& p) {
        for (const auto& t : p.terms()) den = lcm(den, t.c.den());
    };
    for (const auto& p : g.coef) visit(p);
    visit(g.weight);
    auto visit2 = [&](const polynomial& p) {
        for (const auto& t : p.terms()) num = gcd(num, mpz_class(t.c.num() * (den / t.c.den())));
    };
    for (const auto& p : g.coef) visit2(p);
    visit2(g.weight);
    if (num == 0) return g;
    rational content(num, den);
    int sign = 0;
    for (const auto& p : g.coef)
        if (!p.is_zero()) { sign = p.lt().c.sign(); break; }
    if (sign == 0 && !g.weight.is_zero()) sign = g.weight.lt().c.sign();
    if (sign < 0) content = -content;
    rational inv = content.inverse();
    log_derivation out;
    for (const auto& p : g.coef) out.coef.push_back(p.scaled(inv));
    out.weight = g.weight.scaled(inv);
    return out;
}

bool derivation_is_zero(const log_derivation& g) {
    for (const auto& p : g.coef)
        if (!p.is_zero()) return false;
    return true;
}

module_vector to_vector(const log_derivation& g) { return module_vector{g.coef}; }

// deterministic candidate ordering: constant zero weight, then constant
// nonzero, then the rest; ties by coefficient size
bool candidate_less(const log_derivation& a, const log_derivation& b) {
    auto cls = [](const log_derivation& g) {
        if (!g.weight.is_zero() && !g.weight.is_constant()) return 2;
        return g.weight.is_zero() ? 0 : 1;
    };
    if (cls(a) != cls(b)) return cls(a) < cls(b);
    int64_t da = 0, db = 0;
    size_t ta = 0, tb = 0;
    for (const auto& p : a.coef) { da = std::max(da, p.total_degree()); ta += p.term_count(); }
    for (const auto& p : b.coef) { db = std::max(db, p.total_degree()); tb += p.term_count(); }
    if (da != db) return da < db;
    if (ta != tb) return ta < tb;
    for (size_t i = 0; i < a.coef.size(); ++i) {
        const std::string sa = a.coef[i].str(), sb = b.coef[i].str();
        if (sa != sb) return sa < sb;
    }
    return false;
}

polynomial det_of(const std::vector<std::vector<polynomial>>& m, const ring_ptr& ring) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    polynomial acc = polynomial::zero(ring);
    // cofactor expansion along the first row; fine for n <= 5
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<polynomial>> sub;
        for (size_t i = 1; i < n; ++i) {
            std::vector<polynomial> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(std::move(row));
        }
        polynomial mi = m[0][j] * det_of(sub, ring);
        if (j % 2) acc -= mi;
        else acc += mi;
    }
    return acc;
}

std::optional<log_basis> certify_subset(const divisor& d, std::vector<log_derivation> subset) {
    std::vector<std::vector<polynomial>> m;
    for (const auto& g : subset) m.push_back(g.coef);
    polynomial det = det_of(m, d.ring);
    if (det.is_zero()) return std::nullopt;
    auto q = det.divided_by(d.f);
    if (!q || !q->is_constant()) return std::nullopt;
    rational c = q->constant_value();
    // order: ascending constant weight first, then the rest
    std::stable_sort(subset.begin(), subset.end(), [](const log_derivation& a,
                                                      const log_derivation& b) {
        bool ca = a.weight.is_constant(), cb = b.weight.is_constant();
        if (ca != cb) return ca;
        if (ca && cb) {
            rational wa = a.weight.constant_value(), wb = b.weight.constant_value();
            if (wa != wb) return wa < wb;
        }
        return false;
    });
    std::vector<std::vector<polynomial>> m2;
    for (const auto& g : subset) m2.push_back(g.coef);
    polynomial det2 = det_of(m2, d.ring);
    rational c2 = det2.divided_by(d.f)->constant_value();
    if (c2.sign() < 0) {
        for (auto& p : subset[0].coef) p = -p;
        subset[0].weight = -subset[0].weight;
        c2 = -c2;
        det2 = -det2;
    }
    return log_basis{std::move(subset), det2, c2};
}

std::optional<log_basis> search_subsets(const divisor& d, std::vector<log_derivation> cands) {
    std::sort(cands.begin(), cands.end(), candidate_less);
    size_t m = cands.size();
    if ((int)m < d.n) return std::nullopt;
    std::vector<int> idx(d.n);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        std::vector<log_derivation> subset;
        for (int i : idx) subset.push_back(cands[i]);
        if (auto b = certify_subset(d, std::move(subset))) return b;
        // next combination
        int i = d.n - 1;
        while (i >= 0 && idx[i] == (int)m - d.n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < d.n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return std::nullopt;
}

// Euler derivation from cofactors of f over (f_x1..f_xn), reduced against the
// weight-zero family and made primitive
std::optional<log_derivation> build_euler(const divisor& d,
                                          const std::vector<log_derivation>& zeros, budget* bud) {
    std::vector<polynomial> partials;
    for (int i = 0; i < d.n; ++i) partials.push_back(d.f.derivative(i));
    monomial_order ord = monomial_order::degrevlex(d.ring);
    gb_with_transform gbt = groebner_basis_transform(partials, ord, algebra::commutative, bud);
    division_result div = divide_full(d.f, gbt.basis, ord, algebra::commutative, bud);
    if (!div.remainder.is_zero()) return std::nullopt;
    std::vector<polynomial> cof(d.n, polynomial::zero(d.ring));
    for (size_t i = 0; i < gbt.basis.size(); ++i)
        for (int j = 0; j < d.n; ++j) cof[j] += div.quotients[i] * gbt.rows[i][j];
    log_derivation e{cof, polynomial::constant(d.ring, rational(1))};
    if (!zeros.empty()) {
        std::vector<module_vector> basis;
        for (const auto& z : zeros) basis.push_back(to_vector(z));
        auto gb = module_groebner(basis, ord, 0, algebra::commutative, bud);
        module_vector nf = module_normal_form(to_vector(e), gb, ord, 0, algebra::commutative, bud);
        // reduction only subtracted weight-zero derivations
        e.coef = nf.comps;
        while ((int)e.coef.size() < d.n) e.coef.push_back(polynomial::zero(d.ring));
    }
    return primitivize(d, e);
}

} // namespace

std::vector<log_derivation> log_derivations(const divisor& d, budget* bud) {
    std::vector<polynomial> tuple{d.f};
    for (int i = 0; i < d.n; ++i) tuple.push_back(d.f.derivative(i));
    monomial_order ord = monomial_order::degrevlex(d.ring);
    syzygy_module syz = syzygies(tuple, ord, algebra::commutative, bud);
    std::vector<log_derivation> out;
    for (const auto& v : syz.gens) {
        std::vector<polynomial> coef(v.comps.begin() + 1, v.comps.end());
        while ((int)coef.size() < d.n) coef.push_back(polynomial::zero(d.ring));
        log_derivation g{std::move(coef), -v.comps[0]};
        if (!derivation_is_zero(g)) out.push_back(primitivize(d, g));
    }
    // prune members generated by the others (as syzygy vectors, weight included)
    auto as_full_vector = [&](const log_derivation& g) {
        std::vector<polynomial> comps{-g.weight};
        for (const auto& p : g.coef) comps.push_back(p);
        return module_vector{comps};
    };
    for (size_t i = 0; i < out.size();) {
        std::vector<module_vector> others;
        for (size_t j = 0; j < out.size(); ++j)
            if (j != i) others.push_back(as_full_vector(out[j]));
        if (!others.empty()) {
            auto gb = module_groebner(others, ord, 0, algebra::commutative, bud);
            if (module_normal_form(as_full_vector(out[i]), gb, ord, 0, algebra::commutative, bud)
                    .is_zero()) {
                out.erase(out.begin() + i);
                continue;
            }
        }
        ++i;
    }
    std::sort(out.begin(), out.end(), candidate_less);
    return out;
}

saito_outcome saito_test(const divisor& d, const std::vector<log_derivation>& gens, budget* bud) {
    // checked reconstruction guards against corrupted inputs
    for (const auto& g : gens) make_log_derivation(d, g.coef, g.weight);

    bool euler = euler_homogeneous_test(d, bud);
    if (euler) {
        std::vector<log_derivation> zeros;
        for (const auto& g : gens)
            if (g.weight.is_zero()) zeros.push_back(g);
        auto e = build_euler(d, zeros, bud);
        if (e) {
            rational we = constant_weight(*e); // weight of the primitive Euler candidate
            if (!we.is_zero()) {
                std::vector<log_derivation> cands;
                for (const auto& g : gens) {
                    polynomial q = g.weight.scaled(we.inverse());
                    log_derivation h;
                    for (int i = 0; i < d.n; ++i) h.coef.push_back(g.coef[i] - q * e->coef[i]);
                    h.weight = polynomial::zero(d.ring);
                    if (!derivation_is_zero(h)) cands.push_back(primitivize(d, h));
                }
                cands.push_back(*e);
                if (auto b = search_subsets(d, cands))
                    return saito_outcome{std::move(b), ""};
            }
        }
    }
    if (auto b = search_subsets(d, gens)) return saito_outcome{std::move(b), ""};
    return saito_outcome{std::nullopt,
                         "no candidate subset has coefficient determinant c*f"};
}

log_basis euler_normalize(const divisor& d, const log_basis& basis) {
    for (const auto& g : basis.delta)
        if (!g.weight.is_constant())
            throw not_applicable_error("euler_normalize: non-constant weight");
    int pivot = -1;
    for (int i = d.n - 1; i >= 0; --i)
        if (!basis.delta[i].weight.is_zero()) { pivot = i; break; }
    if (pivot < 0)
        throw not_applicable_error("euler_normalize: all weights vanish");
    rational wp = constant_weight(basis.delta[pivot]);
    log_derivation En;
    for (const auto& p : basis.delta[pivot].coef) En.coef.push_back(p.scaled(wp.inverse()));
    En.weight = polynomial::constant(d.ring, rational(1));
    std::vector<log_derivation> out;
    for (int i = 0; i < d.n; ++i) {
        if (i == pivot) continue;
        rational wi = constant_weight(basis.delta[i]);
        log_derivation g;
        for (int k = 0; k < d.n; ++k)
            g.coef.push_back(basis.delta[i].coef[k] - En.coef[k].scaled(wi));
        g.weight = polynomial::zero(d.ring);
        out.push_back(make_log_derivation(d, g.coef, g.weight));
    }
    out.push_back(En);
    std::vector<std::vector<polynomial>> m;
    for (const auto& g : out) m.push_back(g.coef);
    polynomial det = det_of(m, d.ring);
    auto q = det.divided_by(d.f);
    if (!q || !q->is_constant() || q->constant_value().is_zero())
        throw std::logic_error("euler_normalize: Saito certificate lost");
    return log_basis{std::move(out), det, q->constant_value()};
}

polynomial derivation_operator(const log_derivation& del, const divisor& d, const ring_ptr& W) {
    polynomial op = polynomial::zero(W);
    for (int i = 0; i < d.n; ++i) {
        std::string dn = ring_signature::momentum_name(d.ring->at(i).name);
        op += del.coef[i].mapped_to(W) * polynomial::variable(W, dn);
    }
    return op;
}

std::vector<polynomial> theta_fs(const divisor& d, const log_basis& basis) {
    ring_ptr W = weyl_s_ring_for(d.ring);
    polynomial s = polynomial::variable(W, "s");
    std::vector<polynomial> out;
    for (const auto& g : basis.delta) {
        polynomial th = derivation_operator(g, d, W) - g.weight.mapped_to(W) * s;
        if (!apply_to_fs(th, d.f).is_zero())
            throw std::logic_error("theta_fs: operator does not annihilate f^s");
        out.push_back(th);
    }
    return out;
}

bool euler_homogeneous_test(const divisor& d, budget* bud) {
    std::vector<polynomial> partials;
    for (int i = 0; i < d.n; ++i) {
        polynomial fi = d.f.derivative(i);
        if (!fi.is_zero()) partials.push_back(fi);
    }
    if (partials.empty()) return false;
    return in_ideal(d.f, ideal(d.ring, partials), bud);
}

log_derivation bracket(const divisor& d, const log_derivation& a, const log_derivation& b) {
    auto apply = [&](const log_derivation& g, const polynomial& p) {
        polynomial acc = polynomial::zero(d.ring);
        for (int i = 0; i < d.n; ++i) acc += g.coef[i] * p.derivative(i);
        return acc;
    };
    std::vector<polynomial> coef;
    for (int k = 0; k < d.n; ++k) coef.push_back(apply(a, b.coef[k]) - apply(b, a.coef[k]));
    polynomial w = apply(a, b.weight) - apply(b, a.weight);
    return make_log_derivation(d, std::move(coef), std::move(w));
}

} // namespace freediv
