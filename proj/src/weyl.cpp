#include "freediv/weyl.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace freediv {

namespace {

mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

} // namespace

std::vector<std::pair<monomial, mpz_class>> weyl_monomial_product(const ring_signature& R,
                                                                  const monomial& a,
                                                                  const monomial& b) {
    std::vector<std::pair<monomial, mpz_class>> terms;
    monomial base(a.arity());
    for (int i = 0; i < a.arity(); ++i) base.set(i, a[i] + b[i]);
    terms.emplace_back(base, mpz_class(1));

    for (int i = 0; i < R.arity(); ++i) {
        const auto& v = R.at(i);
        if (v.kind == var_kind::momentum) {
            // d^p (from a) moving past x^q (from b): d^p x^q = sum_k k! C(p,k) C(q,k) x^{q-k} d^{p-k}
            int p = a[i], q = b[v.partner];
            if (p == 0 || q == 0) continue;
            std::vector<std::pair<monomial, mpz_class>> next;
            int kmax = std::min(p, q);
            for (auto& [m, c] : terms) {
                for (int k = 0; k <= kmax; ++k) {
                    monomial m2 = m;
                    m2.bump(v.partner, -k);
                    m2.bump(i, -k);
                    next.emplace_back(m2, c * factorial(k) * binom(p, k) * binom(q, k));
                }
            }
            terms = std::move(next);
        } else if (v.kind == var_kind::shift_actor) {
            // s^j (from a) past v^k (from b): s^j v^k = v^k (s + shift*k)^j
            int j = a[i], k = b[v.partner];
            if (j == 0 || k == 0) continue;
            std::vector<std::pair<monomial, mpz_class>> next;
            mpz_class mk(R.at(v.partner).shift * (long)k);
            for (auto& [m, c] : terms) {
                for (int l = j; l >= 0; --l) {
                    // coefficient of s^l: C(j,l) * (shift*k)^{j-l}
                    monomial m2 = m;
                    m2.bump(i, -(j - l));
                    mpz_class coef = binom(j, l);
                    mpz_class p(1);
                    for (int e = 0; e < j - l; ++e) p *= mk;
                    next.emplace_back(m2, c * coef * p);
                }
            }
            terms = std::move(next);
        }
    }
    return terms;
}

polynomial weyl_product(const polynomial& a, const polynomial& b) {
    if (!a.ring() || !b.ring() || !a.ring()->same_names(*b.ring()))
        throw std::invalid_argument("weyl_product: signature mismatch");
    const ring_signature& R = *a.ring();
    std::vector<term> out;
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            rational c = ta.c * tb.c;
            for (auto& [m, k] : weyl_monomial_product(R, ta.m, tb.m))
                out.push_back({m, c * rational(k)});
        }
    return polynomial::from_terms(a.ring(), std::move(out));
}

polynomial weyl_bracket(const polynomial& a, const polynomial& b) {
    return weyl_product(a, b) - weyl_product(b, a);
}

polynomial weyl_apply(const polynomial& op, const polynomial& g) {
    const ring_signature& R = *op.ring();
    polynomial acc = polynomial::zero(g.ring());
    for (const auto& t : op.terms()) {
        polynomial cur = g;
        // momenta act as derivations first (normal order: momenta on the right)
        for (int i = 0; i < R.arity(); ++i) {
            if (R.at(i).kind != var_kind::momentum || !t.m[i]) continue;
            const std::string base = R.at(R.at(i).partner).name;
            for (int k = 0; k < t.m[i] && !cur.is_zero(); ++k) cur = cur.derivative(base);
        }
        if (cur.is_zero()) continue;
        // then multiply by the position/commutative part
        monomial pos(g.ring()->arity());
        for (int i = 0; i < R.arity(); ++i) {
            if (!t.m[i]) continue;
            const auto& v = R.at(i);
            if (v.kind == var_kind::momentum) continue;
            int j = g.ring()->index_of(v.name);
            if (j < 0) throw std::invalid_argument("weyl_apply: operator variable '" + v.name +
                                                   "' missing in argument ring");
            pos.bump(j, t.m[i]);
        }
        acc += cur.times_monomial(pos, t.c);
    }
    return acc;
}

int64_t weyl_order(const polynomial& p, filtration f) {
    const ring_signature& R = *p.ring();
    std::vector<int> idx;
    for (int i = 0; i < R.arity(); ++i) {
        if (R.at(i).kind == var_kind::momentum) idx.push_back(i);
        else if (f == filtration::total_order && R.at(i).block == var_block::s) idx.push_back(i);
    }
    return p.degree_over(idx);
}

polynomial symbol(const polynomial& p, filtration f, const ring_ptr& sring) {
    if (p.is_zero()) throw std::invalid_argument("symbol: zero operator");
    const ring_signature& R = *p.ring();
    std::vector<int> idx;
    for (int i = 0; i < R.arity(); ++i) {
        if (R.at(i).kind == var_kind::momentum) idx.push_back(i);
        else if (f == filtration::total_order && R.at(i).block == var_block::s) idx.push_back(i);
    }
    int64_t d = p.degree_over(idx);
    std::vector<term> top;
    for (const auto& t : p.terms())
        if (t.m.degree_over(idx) == d) top.push_back(t);
    polynomial q = polynomial::from_terms(p.ring(), std::move(top));
    // rename momenta to symbol variables
    std::vector<std::pair<std::string, std::string>> renames;
    int k = 0;
    for (int i = 0; i < R.arity(); ++i)
        if (R.at(i).block == var_block::base) {
            std::string dn = ring_signature::momentum_name(R.at(i).name);
            if (R.has(dn)) renames.push_back({dn, ring_signature::symbol_name(k)});
            ++k;
        }
    return q.mapped_to(sring, renames);
}

fs_value apply_to_fs(const polynomial& op, const polynomial& f) {
    const ring_signature& R = *op.ring();
    for (const auto& v : R.vars())
        if (v.kind == var_kind::shift_var || v.block == var_block::t || v.block == var_block::dt)
            throw std::invalid_argument("apply_to_fs: operator must live in D_n[s]");
    // numerator ring Q[x.., s]
    std::vector<std::string> names;
    for (const auto& v : f.ring()->vars()) names.push_back(v.name);
    names.push_back("s");
    ring_ptr xs = ring_signature::polynomial(names);
    int sidx = xs->index_of("s");
    polynomial fx = f.mapped_to(xs);
    std::vector<polynomial> fpart;
    for (size_t i = 0; i + 1 < names.size(); ++i) fpart.push_back(fx.derivative((int)i));
    polynomial spoly = polynomial::variable(xs, "s");

    polynomial num = polynomial::zero(xs);
    int dmax = 0;
    std::vector<std::pair<polynomial, int>> parts;
    for (const auto& t : op.terms()) {
        polynomial N = polynomial::constant(xs, rational(1));
        int dp = 0;
        for (int i = 0; i < R.arity(); ++i) {
            if (R.at(i).kind != var_kind::momentum || !t.m[i]) continue;
            int bi = f.ring()->index_of(R.at(R.at(i).partner).name);
            if (bi < 0) throw std::invalid_argument("apply_to_fs: base variable mismatch");
            for (int k = 0; k < t.m[i]; ++k) {
                polynomial shifted = spoly - polynomial::constant(xs, rational(dp));
                N = N.derivative(bi) * fx + shifted * fpart[bi] * N;
                ++dp;
            }
        }
        // multiply by positions, s-powers and the coefficient
        monomial pos(xs->arity());
        for (int i = 0; i < R.arity(); ++i) {
            if (!t.m[i] || R.at(i).kind == var_kind::momentum) continue;
            const auto& v = R.at(i);
            int j = (v.block == var_block::s) ? sidx : xs->index_of(v.name);
            pos.bump(j, t.m[i]);
        }
        parts.push_back({N.times_monomial(pos, t.c), dp});
        dmax = std::max(dmax, dp);
    }
    for (auto& [N, dp] : parts) num += N * fx.pow(dmax - dp);

    fs_value out{num, dmax};
    while (out.pole_order > 0 && !out.numerator.is_zero()) {
        auto q = out.numerator.divided_by(fx);
        if (!q) break;
        out.numerator = *q;
        out.pole_order--;
    }
    if (out.numerator.is_zero()) out.pole_order = 0;
    return out;
}

// ---- left ideal operations ----

std::vector<polynomial> left_groebner_basis(const std::vector<polynomial>& gens,
                                            const monomial_order& ord, budget* bud) {
    return groebner_basis(gens, ord, algebra::weyl_left, bud);
}

const std::vector<polynomial>& left_basis(const left_ideal& I, const monomial_order& ord,
                                          budget* bud) {
    if (I.cache && order_equal(I.cache->order, ord)) return I.cache->basis;
    auto b = left_groebner_basis(I.gens, ord, bud);
    I.cache = std::make_shared<cached_basis>(cached_basis{ord, std::move(b), algebra::weyl_left});
    return I.cache->basis;
}

polynomial left_normal_form(const polynomial& p, const std::vector<polynomial>& basis,
                            const monomial_order& ord, budget* bud) {
    return normal_form(p, basis, ord, algebra::weyl_left, bud);
}

bool in_left_ideal(const polynomial& p, const left_ideal& I, budget* bud) {
    if (p.is_zero()) return true;
    if (I.gens.empty()) return false;
    monomial_order ord = monomial_order::degrevlex(I.ring);
    const auto& b = left_basis(I, ord, bud);
    return left_normal_form(p, b, ord, bud).is_zero();
}

bool left_ideal_equal(const left_ideal& I, const left_ideal& J, budget* bud) {
    monomial_order ord = monomial_order::degrevlex(I.ring);
    const auto& a = left_basis(I, ord, bud);
    const auto& b = left_basis(J, ord, bud);
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

syzygy_module left_syzygies(const std::vector<polynomial>& gens, budget* bud) {
    if (gens.empty()) return {};
    monomial_order ord = monomial_order::degrevlex(gens[0].ring());
    return syzygies(gens, ord, algebra::weyl_left, bud);
}

left_ideal colon_by_central(const left_ideal& I, const polynomial& c, budget* bud) {
    if (c.is_zero()) throw std::invalid_argument("colon_by_central: zero divisor");
    for (const auto& v : I.ring->vars())
        if (v.kind == var_kind::shift_actor || v.kind == var_kind::shift_var)
            throw std::invalid_argument("colon_by_central: shift pairs not supported here");
    polynomial cm = c.ring()->same_names(*I.ring) ? c : c.mapped_to(I.ring);
    for (const auto& t : cm.terms())
        for (int i = 0; i < I.ring->arity(); ++i)
            if (t.m[i] && I.ring->at(i).kind != var_kind::commutative)
                throw std::invalid_argument("colon_by_central: divisor must be central");
    if (cm.is_constant()) return left_ideal(I.ring, I.gens);

    ring_ptr ext = ring_signature::with_extra_aux(I.ring, "@w");
    int w = ext->index_of("@w");
    monomial wm(ext->arity());
    wm.set(w, 1);
    std::vector<polynomial> gens;
    for (const auto& g : I.gens) gens.push_back(g.mapped_to(ext).times_monomial(wm, rational(1)));
    polynomial ce = cm.mapped_to(ext);
    gens.push_back(ce - ce.times_monomial(wm, rational(1)));
    monomial_order ord = monomial_order::eliminating(ext, {w});
    auto b = left_groebner_basis(gens, ord, bud);
    std::vector<polynomial> out;
    for (const auto& g : b) {
        if (g.involves({w})) continue;
        polynomial h = g.mapped_to(I.ring);
        auto q = h.divided_by(cm.mapped_to(I.ring));
        if (!q) throw std::logic_error("colon_by_central: inexact division");
        if (!q->is_zero()) out.push_back(*q);
    }
    return left_ideal(I.ring, std::move(out));
}

namespace {

ring_ptr pure_s_ring() { return ring_signature::polynomial({"s"}); }

// incremental echelon over Q tracking Q[s] tags; returns the minimal monic
// dependence polynomial once one appears
class minpoly_search {
public:
    explicit minpoly_search(ring_ptr sring) : sring_(std::move(sring)) {}

    // feed NF(s^k * seed); returns the minimal dependence polynomial when found
    std::optional<polynomial> feed(polynomial nf, int k) {
        polynomial tag = polynomial::variable(sring_, "s").pow(k);
        while (!nf.is_zero()) {
            auto it = rows_.find(nf.lt().m);
            if (it == rows_.end()) break;
            rational c = nf.lt().c / it->second.first.lt().c;
            nf -= it->second.first.scaled(c);
            tag -= it->second.second.scaled(c);
        }
        if (nf.is_zero()) {
            rational lc = tag.lt().c;
            return tag.scaled(lc.inverse());
        }
        rows_.emplace(nf.lt().m, std::make_pair(nf, tag));
        return std::nullopt;
    }

private:
    struct mono_less {
        bool operator()(const monomial& a, const monomial& b) const {
            return canonical_compare(a, b) < 0;
        }
    };
    ring_ptr sring_;
    std::map<monomial, std::pair<polynomial, polynomial>, mono_less> rows_;
};

} // namespace

polynomial central_colon_element(const left_ideal& I, const polynomial& p, budget* bud,
                                 int minpoly_cap) {
    monomial_order ord = monomial_order::degrevlex(I.ring);
    const auto& basis = left_basis(I, ord, bud);
    ring_ptr sring = pure_s_ring();
    polynomial sp = polynomial::variable(I.ring, "s");
    minpoly_search search(sring);
    polynomial cur = p;
    for (int k = 0; k <= minpoly_cap; ++k) {
        if (bud) bud->tick();
        polynomial nf = left_normal_form(cur, basis, ord, bud);
        auto b = search.feed(nf, k);
        if (b) return *b;
        cur = weyl_product(sp, cur);
    }
    // fall back to the syzygy route: (I : p) then slice
    std::vector<polynomial> tuple{p};
    for (const auto& g : I.gens) tuple.push_back(g);
    syzygy_module syz = left_syzygies(tuple, bud);
    std::vector<polynomial> colon;
    for (const auto& v : syz.gens)
        if (!v.comps.empty() && !v.comps[0].is_zero()) colon.push_back(v.comps[0]);
    return central_slice(left_ideal(I.ring, std::move(colon)), bud, minpoly_cap);
}

polynomial central_slice(const left_ideal& I, budget* bud, int minpoly_cap) {
    int sidx = I.ring->index_of("s");
    if (sidx < 0) throw std::invalid_argument("central_slice: signature has no s");
    ring_ptr sring = pure_s_ring();
    // fast path: minimal polynomial of s in D[s]/I by linear algebra
    {
        monomial_order ord = monomial_order::degrevlex(I.ring);
        const auto& basis = left_basis(I, ord, bud);
        minpoly_search search(sring);
        polynomial sp = polynomial::variable(I.ring, "s");
        polynomial cur = polynomial::constant(I.ring, rational(1));
        for (int k = 0; k <= minpoly_cap; ++k) {
            if (bud) bud->tick();
            polynomial nf = left_normal_form(cur, basis, ord, bud);
            auto b = search.feed(nf, k);
            if (b) return b->mapped_to(sring);
            cur = weyl_product(sp, cur);
        }
    }
    // complete route: eliminate everything except s
    std::vector<int> elim;
    for (int i = 0; i < I.ring->arity(); ++i)
        if (i != sidx) elim.push_back(i);
    monomial_order ord = monomial_order::eliminating(I.ring, elim);
    const auto& b = left_groebner_basis(I.gens, ord, bud);
    polynomial best = polynomial::zero(sring);
    for (const auto& g : b) {
        if (g.involves(elim)) continue;
        polynomial gs = g.mapped_to(sring);
        if (best.is_zero() || gs.total_degree() < best.total_degree()) best = gs;
    }
    if (best.is_zero()) return best;
    return best.scaled(best.lt().c.inverse());
}

// ---- ann f^s ----

ring_ptr weyl_s_ring_for(const ring_ptr& base) {
    std::vector<std::string> names;
    for (const auto& v : base->vars()) names.push_back(v.name);
    return ring_signature::weyl(names, true);
}

namespace {

std::vector<polynomial> annfs_bm(const polynomial& f, budget* bud, ring_ptr& ds_out) {
    std::vector<std::string> xs;
    for (const auto& v : f.ring()->vars()) xs.push_back(v.name);
    ring_ptr W = ring_signature::weyl_bm(xs);
    polynomial fw = f.mapped_to(W);
    polynomial dt = polynomial::variable(W, "dt");
    polynomial s = polynomial::variable(W, "s");
    // dt acts on O[f^-1, s] f^s by a(s) -> -s a(s-1) f^-1
    std::vector<polynomial> gens{fw * dt + s};
    for (size_t i = 0; i < xs.size(); ++i) {
        polynomial di = polynomial::variable(W, ring_signature::momentum_name(xs[i]));
        polynomial fi = fw.derivative(W->index_of(xs[i]));
        gens.push_back(di + fi * dt);
    }
    int dtidx = W->index_of("dt");
    monomial_order ord = monomial_order::eliminating(W, {dtidx});
    auto basis = left_groebner_basis(gens, ord, bud);
    ds_out = weyl_s_ring_for(f.ring());
    std::vector<polynomial> out;
    for (const auto& g : basis)
        if (!g.involves({dtidx})) out.push_back(g.mapped_to(ds_out));
    return out;
}

std::vector<polynomial> annfs_ot(const polynomial& f, budget* bud, ring_ptr& ds_out) {
    std::vector<std::string> xs;
    for (const auto& v : f.ring()->vars()) xs.push_back(v.name);
    int n = (int)xs.size();
    ring_ptr W = ring_signature::weyl_ot(xs);
    polynomial fw = f.mapped_to(W);
    polynomial t = polynomial::variable(W, "t");
    polynomial dt = polynomial::variable(W, "dt");
    polynomial u = polynomial::variable(W, "u");
    polynomial v = polynomial::variable(W, "v");
    polynomial one = polynomial::constant(W, rational(1));
    std::vector<polynomial> gens{t - u * fw, u * v - one};
    for (int i = 0; i < n; ++i) {
        polynomial di = polynomial::variable(W, ring_signature::momentum_name(xs[i]));
        polynomial fi = fw.derivative(W->index_of(xs[i]));
        gens.push_back(di + weyl_product(u * fi, dt));
    }
    int uidx = W->index_of("u"), vidx = W->index_of("v");
    int tidx = W->index_of("t"), dtidx = W->index_of("dt");
    monomial_order ord = monomial_order::eliminating(W, {uidx, vidx});
    auto basis = left_groebner_basis(gens, ord, bud);

    ds_out = weyl_s_ring_for(f.ring());
    polynomial s = polynomial::variable(ds_out, "s");
    polynomial mone = polynomial::constant(ds_out, rational(-1));
    std::vector<polynomial> out;
    for (const auto& g : basis) {
        if (g.involves({uidx, vidx})) continue;
        // split into V-weight homogeneous components (t: +1, dt: -1)
        std::map<int64_t, std::vector<term>> comps;
        for (const auto& tm : g.terms())
            comps[tm.m[tidx] - tm.m[dtidx]].push_back(tm);
        for (auto& [m, ts] : comps) {
            // strip t^m (m >= 0) or dt^{-m} (m < 0); remaining t/dt exponents match
            int64_t k = m < 0 ? -m : 0;
            polynomial acc = polynomial::zero(ds_out);
            for (const auto& tm : ts) {
                monomial mono(ds_out->arity());
                for (int i = 0; i < W->arity(); ++i) {
                    if (i == tidx || i == dtidx || i == uidx || i == vidx) continue;
                    if (tm.m[i]) mono.bump(ds_out->index_of(W->at(i).name), tm.m[i]);
                }
                int64_t j = tm.m[dtidx] - k; // theta-power after stripping
                // t^j dt^j -> prod_{i=0}^{j-1} (theta - i), theta = -s-1, shifted by -k
                polynomial fac = polynomial::constant(ds_out, rational(1));
                for (int64_t i = 0; i < j; ++i)
                    fac *= (mone * s - polynomial::constant(ds_out, rational((long)(1 + i + k))));
                acc += fac.times_monomial(mono, tm.c);
            }
            if (k > 0) {
                // multiply by prod_{i=0}^{k-1} (theta - i) with theta = -s-1
                polynomial fac = polynomial::constant(ds_out, rational(1));
                for (int64_t i = 0; i < k; ++i)
                    fac *= (mone * s - polynomial::constant(ds_out, rational((long)(1 + i))));
                acc = acc * fac;
            }
            if (!acc.is_zero()) out.push_back(acc);
        }
    }
    return out;
}

} // namespace

left_ideal ann_fs(const polynomial& f, annfs_algorithm algo, budget* bud) {
    if (f.is_zero() || f.is_constant())
        throw std::invalid_argument("ann_fs: f must be nonconstant");
    ring_ptr ds;
    std::vector<polynomial> gens = (algo == annfs_algorithm::briancon_maisonobe)
                                       ? annfs_bm(f, bud, ds)
                                       : annfs_ot(f, bud, ds);
    // canonical reduced basis as the generator set
    monomial_order ord = monomial_order::degrevlex(ds);
    auto basis = left_groebner_basis(gens, ord, bud);
    for (const auto& g : basis)
        if (!apply_to_fs(g, f).is_zero())
            throw std::logic_error("ann_fs: generator fails the f^s action check");
    left_ideal I(ds, basis);
    I.cache = std::make_shared<cached_basis>(cached_basis{ord, basis, algebra::weyl_left});
    return I;
}

} // namespace freediv
