#include "freediv/gb.hpp"
#include "freediv/weyl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace freediv {

bool order_equal(const monomial_order& a, const monomial_order& b) {
    const auto &la = a.layers(), &lb = b.layers();
    if (la.size() != lb.size()) return false;
    for (size_t i = 0; i < la.size(); ++i)
        if (la[i].kind != lb[i].kind || la[i].vars != lb[i].vars || la[i].w != lb[i].w)
            return false;
    return true;
}

bool module_vector::is_zero() const {
    for (const auto& p : comps)
        if (!p.is_zero()) return false;
    return true;
}

namespace {

struct eterm {
    monomial m;
    int32_t comp;
    mpz_class c;
};

struct evec {
    std::vector<eterm> ts; // sorted descending under the module order
    int64_t sugar = 0;
    bool redundant = false;
    std::vector<polynomial> tr; // optional transformation row
};

struct ctx_t {
    const ring_signature& R;
    ring_ptr ring;
    const monomial_order& ord;
    algebra alg;
    int dominant; // components < dominant form the high class
    budget* bud;
    bool track = false;

    void tick() const { if (bud) bud->tick(); }
};

int tcmp(const ctx_t& cx, const eterm& a, const eterm& b) {
    if (cx.dominant > 0) {
        bool ha = a.comp < cx.dominant, hb = b.comp < cx.dominant;
        if (ha != hb) return ha ? 1 : -1;
    }
    int c = cx.ord.compare(a.m, b.m);
    if (c) return c;
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return 0;
}

void sort_merge(const ctx_t& cx, std::vector<eterm>& ts) {
    std::sort(ts.begin(), ts.end(),
              [&](const eterm& x, const eterm& y) { return tcmp(cx, x, y) > 0; });
    size_t w = 0;
    for (size_t i = 0; i < ts.size(); ++i) {
        if (w > 0 && ts[w - 1].comp == ts[i].comp && ts[w - 1].m == ts[i].m) {
            ts[w - 1].c += ts[i].c;
            if (sgn(ts[w - 1].c) == 0) --w;
        } else {
            if (w != i) ts[w] = std::move(ts[i]);
            ++w;
        }
    }
    ts.resize(w);
}

// dst = c * (m o src); sorted
void mono_mul(const ctx_t& cx, const monomial& m, const mpz_class& c,
              const std::vector<eterm>& src, std::vector<eterm>& dst) {
    dst.clear();
    if (cx.alg == algebra::commutative || m.is_one()) {
        dst.reserve(src.size());
        for (const auto& t : src) dst.push_back({m * t.m, t.comp, c * t.c});
        if (cx.alg != algebra::commutative) return; // identity multiplier, already sorted
        return; // monotone, order preserved
    }
    for (const auto& t : src) {
        for (auto& [pm, pc] : weyl_monomial_product(cx.R, m, t.m))
            dst.push_back({pm, t.comp, c * t.c * pc});
    }
    sort_merge(cx, dst);
}

// r := a*r - b*(m o g); assumes the leading terms cancel when intended
void combine(const ctx_t& cx, std::vector<eterm>& r, const mpz_class& a, const mpz_class& b,
             const monomial& m, const std::vector<eterm>& g) {
    std::vector<eterm> mg;
    mono_mul(cx, m, b, g, mg);
    std::vector<eterm> out;
    out.reserve(r.size() + mg.size());
    size_t i = 0, j = 0;
    bool scale = (a != 1);
    while (i < r.size() && j < mg.size()) {
        int c = tcmp(cx, r[i], mg[j]);
        if (c > 0) {
            out.push_back(r[i]);
            if (scale) out.back().c *= a;
            ++i;
        } else if (c < 0) {
            out.push_back(mg[j]);
            out.back().c = -out.back().c;
            ++j;
        } else {
            mpz_class s = (scale ? mpz_class(r[i].c * a) : r[i].c) - mg[j].c;
            if (sgn(s) != 0) out.push_back({r[i].m, r[i].comp, std::move(s)});
            ++i; ++j;
        }
    }
    for (; i < r.size(); ++i) {
        out.push_back(r[i]);
        if (scale) out.back().c *= a;
    }
    for (; j < mg.size(); ++j) {
        out.push_back(mg[j]);
        out.back().c = -out.back().c;
    }
    r = std::move(out);
}

mpz_class content_of(const std::vector<eterm>& ts) {
    mpz_class g(0);
    for (const auto& t : ts) {
        g = gcd(g, t.c);
        if (g == 1) break;
    }
    return g;
}

void make_primitive(evec& v) {
    if (v.ts.empty()) return;
    mpz_class g = content_of(v.ts);
    if (sgn(v.ts[0].c) < 0) g = -g;
    if (g != 1) {
        for (auto& t : v.ts) t.c /= g;
        if (!v.tr.empty()) {
            rational inv = rational(g).inverse();
            for (auto& p : v.tr) p = p.scaled(inv);
        }
    }
}

polynomial left_mono_poly_mul(const ctx_t& cx, const monomial& m, const rational& c,
                              const polynomial& p) {
    if (cx.alg == algebra::commutative) return p.times_monomial(m, c);
    polynomial mp = polynomial::from_terms(cx.ring, {{m, c}});
    return weyl_product(mp, p);
}

int64_t sugar_of(const std::vector<eterm>& ts) {
    int64_t s = 0;
    for (const auto& t : ts) s = std::max(s, t.m.degree());
    return s;
}

// full normal form; returns multiplier M with M*p == (ideal element) + result
struct reduce_result {
    std::vector<eterm> nf;
    mpz_class mult{1};
    int64_t sugar = 0;
    std::vector<polynomial> tr;
};

reduce_result reduce(const ctx_t& cx, evec p, const std::vector<evec>& basis) {
    reduce_result res;
    res.sugar = p.sugar;
    res.tr = std::move(p.tr);
    std::vector<eterm> rest = std::move(p.ts);
    std::vector<std::pair<eterm, mpz_class>> out; // (term, multiplier at emission)
    while (!rest.empty()) {
        cx.tick();
        const eterm& t = rest.front();
        const evec* red = nullptr;
        for (const auto& g : basis) {
            if (g.redundant || g.ts.empty()) continue;
            const eterm& lg = g.ts.front();
            if (lg.comp == t.comp && lg.m.divides(t.m)) { red = &g; break; }
        }
        if (!red) {
            out.emplace_back(t, res.mult);
            rest.erase(rest.begin());
            continue;
        }
        const eterm& lg = red->ts.front();
        monomial q = t.m / lg.m;
        mpz_class a = lg.c, b = t.c;
        mpz_class d = gcd(a, b);
        if (d != 1) { a /= d; b /= d; }
        if (sgn(a) < 0) { a = -a; b = -b; }
        res.sugar = std::max(res.sugar, red->sugar + q.degree());
        if (cx.track) {
            rational ar{a}, br{b};
            for (size_t k = 0; k < res.tr.size(); ++k)
                res.tr[k] = res.tr[k].scaled(ar) - left_mono_poly_mul(cx, q, br, red->tr[k]);
        }
        combine(cx, rest, a, b, q, red->ts);
        if (a != 1) res.mult *= a;
    }
    res.nf.reserve(out.size());
    for (auto& [t, at] : out) {
        mpz_class scale = res.mult / at;
        res.nf.push_back({t.m, t.comp, t.c * scale});
    }
    // out was emitted in decreasing order already
    return res;
}

struct gbpair {
    int i, j;
    monomial lcm;
    int64_t sugar;
};

struct pair_less {
    const ctx_t* cx;
    bool operator()(const gbpair& a, const gbpair& b) const {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = cx->ord.compare(a.lcm, b.lcm);
        if (c) return c < 0;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    }
};

class buchberger_t {
public:
    buchberger_t(const ctx_t& cx, bool allow_product) : cx_(cx), pairs_(pair_less{&cx}),
                                                        allow_product_(allow_product) {}

    std::vector<evec> run(std::vector<evec> inputs) {
        for (auto& v : inputs) {
            sort_merge(cx_, v.ts);
            v.sugar = sugar_of(v.ts);
            make_primitive(v);
            if (!v.ts.empty()) add(std::move(v));
        }
        while (!pairs_.empty()) {
            cx_.tick();
            gbpair p = *pairs_.begin();
            pairs_.erase(pairs_.begin());
            evec s = spair(p);
            reduce_result r = reduce(cx_, std::move(s), g_);
            if (r.nf.empty()) continue;
            evec h;
            h.ts = std::move(r.nf);
            h.sugar = r.sugar;
            h.tr = std::move(r.tr);
            make_primitive(h);
            add(std::move(h));
        }
        autoreduce();
        return std::move(g_);
    }

private:
    const ctx_t& cx_;
    std::vector<evec> g_;
    std::set<gbpair, pair_less> pairs_;
    bool allow_product_;

    bool coprime_lm(const evec& a, const evec& b) const {
        return allow_product_ && a.ts.front().m.coprime(b.ts.front().m);
    }

    evec spair(const gbpair& p) {
        const evec &f = g_[p.i], &g = g_[p.j];
        const eterm &lf = f.ts.front(), &lg = g.ts.front();
        monomial mf = p.lcm / lf.m, mg = p.lcm / lg.m;
        mpz_class a = lg.c, b = lf.c;
        mpz_class d = gcd(a, b);
        if (d != 1) { a /= d; b /= d; }
        evec s;
        mono_mul(cx_, mf, a, f.ts, s.ts);
        combine(cx_, s.ts, mpz_class(1), b, mg, g.ts);
        s.sugar = std::max(f.sugar + mf.degree(), g.sugar + mg.degree());
        if (cx_.track) {
            rational ar{a}, br{b};
            s.tr.resize(f.tr.size(), polynomial::zero(cx_.ring));
            for (size_t k = 0; k < f.tr.size(); ++k)
                s.tr[k] = left_mono_poly_mul(cx_, mf, ar, f.tr[k]) -
                          left_mono_poly_mul(cx_, mg, br, g.tr[k]);
        }
        return s;
    }

    void add(evec h) {
        int t = (int)g_.size();
        const eterm& lh = h.ts.front();

        // candidate new pairs, Gebauer-Moeller pruned
        struct cand { int i; monomial lcm; bool coprime; bool keep; };
        std::vector<cand> cs;
        for (int i = 0; i < t; ++i) {
            if (g_[i].ts.empty()) continue;
            const eterm& li = g_[i].ts.front();
            if (li.comp != lh.comp) continue;
            cs.push_back({i, li.m.lcm(lh.m), coprime_lm(g_[i], h), true});
        }
        for (auto& a : cs) {
            for (const auto& b : cs) {
                if (&a == &b || !b.keep || !a.keep) continue;
                if (b.lcm.divides(a.lcm) && !(b.lcm == a.lcm)) { a.keep = false; break; }
            }
        }
        // among equal lcms keep the first
        for (size_t i = 0; i < cs.size(); ++i) {
            if (!cs[i].keep) continue;
            for (size_t j = i + 1; j < cs.size(); ++j)
                if (cs[j].keep && cs[j].lcm == cs[i].lcm) cs[j].keep = false;
        }
        // chain-prune old pairs through lh
        for (auto it = pairs_.begin(); it != pairs_.end();) {
            const gbpair& p = *it;
            const monomial &mi = g_[p.i].ts.front().m, &mj = g_[p.j].ts.front().m;
            if (g_[p.i].ts.front().comp == lh.comp && lh.m.divides(p.lcm) &&
                !(mi.lcm(lh.m) == p.lcm) && !(mj.lcm(lh.m) == p.lcm))
                it = pairs_.erase(it);
            else
                ++it;
        }
        for (const auto& c : cs) {
            if (!c.keep || c.coprime) continue;
            int64_t sug = std::max(g_[c.i].sugar + (c.lcm / g_[c.i].ts.front().m).degree(),
                                   h.sugar + (c.lcm / lh.m).degree());
            pairs_.insert({c.i, t, c.lcm, sug});
        }
        for (auto& g : g_) {
            if (g.redundant || g.ts.empty()) continue;
            const eterm& lg = g.ts.front();
            if (lg.comp == lh.comp && lh.m.divides(lg.m)) g.redundant = true;
        }
        g_.push_back(std::move(h));
    }

    void autoreduce() {
        std::vector<evec> kept;
        for (auto& g : g_)
            if (!g.redundant && !g.ts.empty()) kept.push_back(std::move(g));
        // drop duplicates of leading terms (keep earliest)
        for (size_t i = 0; i < kept.size(); ++i)
            for (size_t j = 0; j < kept.size(); ++j) {
                if (i == j || kept[j].redundant || kept[i].redundant) continue;
                if (kept[j].ts.front().comp == kept[i].ts.front().comp &&
                    kept[j].ts.front().m.divides(kept[i].ts.front().m))
                    kept[i].redundant = true;
            }
        std::vector<evec> live;
        for (auto& g : kept)
            if (!g.redundant) live.push_back(std::move(g));
        // tail-reduce to the unique reduced basis
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < live.size(); ++i) {
                std::vector<evec> others;
                for (size_t j = 0; j < live.size(); ++j)
                    if (j != i) others.push_back(live[j]);
                reduce_result r = reduce(cx_, live[i], others);
                evec v;
                v.ts = std::move(r.nf);
                v.sugar = r.sugar;
                v.tr = std::move(r.tr);
                make_primitive(v);
                if (!(v.ts.size() == live[i].ts.size()) ||
                    !std::equal(v.ts.begin(), v.ts.end(), live[i].ts.begin(),
                                [](const eterm& a, const eterm& b) {
                                    return a.m == b.m && a.comp == b.comp && a.c == b.c;
                                })) {
                    live[i] = std::move(v);
                    changed = true;
                }
            }
        }
        std::sort(live.begin(), live.end(), [&](const evec& a, const evec& b) {
            return tcmp(cx_, a.ts.front(), b.ts.front()) < 0;
        });
        g_ = std::move(live);
    }
};

// ---- conversions ----

struct prepared {
    std::vector<evec> vecs;
    std::vector<rational> scales; // input i was multiplied by scales[i]
};

evec to_evec(const module_vector& v, int rank, const ring_ptr&, rational* scale) {
    // clear denominators across all components
    mpz_class den(1);
    for (const auto& p : v.comps)
        for (const auto& t : p.terms()) den = lcm(den, t.c.den());
    evec e;
    for (int c = 0; c < rank; ++c) {
        if (c >= (int)v.comps.size()) break;
        for (const auto& t : v.comps[c].terms())
            e.ts.push_back({t.m, c, mpz_class(t.c.num() * (den / t.c.den()))});
    }
    if (scale) *scale = rational(den);
    return e;
}

evec to_evec(const polynomial& p, rational* scale) {
    module_vector v{{p}};
    return to_evec(v, 1, p.ring(), scale);
}

polynomial comp_to_poly(const std::vector<eterm>& ts, int comp, const ring_ptr& ring,
                        const rational& scale) {
    std::vector<term> out;
    for (const auto& t : ts)
        if (t.comp == comp) out.push_back({t.m, rational(t.c) * scale});
    return polynomial::from_terms(ring, std::move(out));
}

module_vector to_module_vector(const evec& v, int rank, const ring_ptr& ring,
                               const rational& scale) {
    module_vector mv;
    for (int c = 0; c < rank; ++c) mv.comps.push_back(comp_to_poly(v.ts, c, ring, scale));
    return mv;
}

void validate_order(const ctx_t& cx) {
    if (!cx.ord.is_global(cx.R.arity()))
        throw std::invalid_argument("groebner: order must be a well-order (global)");
}

std::vector<evec> run_engine(const ctx_t& cx, std::vector<evec> inputs, bool allow_product) {
    validate_order(cx);
    buchberger_t b(cx, allow_product);
    return b.run(std::move(inputs));
}

} // namespace

// ---- public entry points ----

std::vector<polynomial> groebner_basis(const std::vector<polynomial>& gens,
                                       const monomial_order& ord, algebra alg, budget* bud) {
    if (gens.empty()) return {};
    ring_ptr ring = gens[0].ring();
    ctx_t cx{*ring, ring, ord, alg, 0, bud};
    std::vector<evec> in;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (!g.ring()->same_names(*ring))
            throw std::invalid_argument("groebner: signature mismatch");
        in.push_back(to_evec(g, nullptr));
    }
    auto out = run_engine(cx, std::move(in), alg == algebra::commutative);
    std::vector<polynomial> basis;
    for (const auto& v : out) {
        rational lc{v.ts.front().c};
        basis.push_back(comp_to_poly(v.ts, 0, ring, lc.inverse()));
    }
    return basis;
}

const std::vector<polynomial>& ideal_basis(const ideal& I, const monomial_order& ord, algebra alg,
                                           budget* bud) {
    if (I.cache && order_equal(I.cache->order, ord) && I.cache->alg == alg)
        return I.cache->basis;
    auto b = groebner_basis(I.gens, ord, alg, bud);
    I.cache = std::make_shared<cached_basis>(cached_basis{ord, std::move(b), alg});
    return I.cache->basis;
}

polynomial normal_form(const polynomial& p, const std::vector<polynomial>& basis,
                       const monomial_order& ord, algebra alg, budget* bud) {
    ring_ptr ring = p.ring();
    ctx_t cx{*ring, ring, ord, alg, 0, bud};
    validate_order(cx);
    rational scale;
    evec e = to_evec(p, &scale);
    sort_merge(cx, e.ts);
    std::vector<evec> b;
    for (const auto& g : basis) {
        if (g.is_zero()) continue;
        evec eg = to_evec(g, nullptr);
        sort_merge(cx, eg.ts);
        make_primitive(eg);
        b.push_back(std::move(eg));
    }
    reduce_result r = reduce(cx, std::move(e), b);
    rational adj = rational(1) / (scale * rational(r.mult));
    return comp_to_poly(r.nf, 0, ring, adj);
}

division_result divide_full(const polynomial& p, const std::vector<polynomial>& basis,
                            const monomial_order& ord, algebra alg, budget* bud) {
    ring_ptr ring = p.ring();
    ctx_t cx{*ring, ring, ord, alg, 0, bud};
    validate_order(cx);
    division_result res;
    res.quotients.assign(basis.size(), polynomial::zero(ring));
    polynomial r = p;
    polynomial nf = polynomial::zero(ring);
    // rational-arithmetic division, collecting quotients
    while (!r.is_zero()) {
        if (bud) bud->tick();
        // leading term under ord
        size_t best = 0;
        for (size_t i = 1; i < r.terms().size(); ++i)
            if (ord.compare(r.terms()[i].m, r.terms()[best].m) > 0) best = i;
        term t = r.terms()[best];
        int gi = -1;
        for (size_t i = 0; i < basis.size(); ++i) {
            if (basis[i].is_zero()) continue;
            // leading monomial of basis[i] under ord
            size_t bl = 0;
            for (size_t k = 1; k < basis[i].terms().size(); ++k)
                if (ord.compare(basis[i].terms()[k].m, basis[i].terms()[bl].m) > 0) bl = k;
            if (basis[i].terms()[bl].m.divides(t.m)) { gi = (int)i; break; }
        }
        if (gi < 0) {
            nf += polynomial::from_terms(ring, {{t.m, t.c}});
            r -= polynomial::from_terms(ring, {{t.m, t.c}});
            continue;
        }
        size_t bl = 0;
        for (size_t k = 1; k < basis[gi].terms().size(); ++k)
            if (ord.compare(basis[gi].terms()[k].m, basis[gi].terms()[bl].m) > 0) bl = k;
        const term& lg = basis[gi].terms()[bl];
        monomial q = t.m / lg.m;
        rational c = t.c / lg.c;
        polynomial qp = polynomial::from_terms(ring, {{q, c}});
        res.quotients[gi] += qp;
        if (alg == algebra::commutative)
            r -= basis[gi].times_monomial(q, c);
        else
            r -= weyl_product(qp, basis[gi]);
    }
    res.remainder = nf;
    return res;
}

gb_with_transform groebner_basis_transform(const std::vector<polynomial>& gens,
                                           const monomial_order& ord, algebra alg, budget* bud) {
    gb_with_transform out;
    if (gens.empty()) return out;
    ring_ptr ring = gens[0].ring();
    ctx_t cx{*ring, ring, ord, alg, 0, bud, true};
    std::vector<evec> in;
    std::vector<rational> scales;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].is_zero()) continue;
        rational sc;
        evec e = to_evec(gens[i], &sc);
        e.tr.assign(gens.size(), polynomial::zero(ring));
        e.tr[i] = polynomial::constant(ring, sc);
        in.push_back(std::move(e));
    }
    auto res = run_engine(cx, std::move(in), alg == algebra::commutative);
    for (const auto& v : res) {
        rational lcinv = rational(v.ts.front().c).inverse();
        out.basis.push_back(comp_to_poly(v.ts, 0, ring, lcinv));
        std::vector<polynomial> row;
        for (const auto& p : v.tr) row.push_back(p.scaled(lcinv));
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::vector<module_vector> module_groebner(const std::vector<module_vector>& gens,
                                           const monomial_order& ord, int dominant_comps,
                                           algebra alg, budget* bud) {
    if (gens.empty()) return {};
    ring_ptr ring;
    int rank = 0;
    for (const auto& v : gens) {
        rank = std::max(rank, (int)v.comps.size());
        for (const auto& p : v.comps)
            if (p.ring()) ring = p.ring();
    }
    ctx_t cx{*ring, ring, ord, alg, dominant_comps, bud};
    std::vector<evec> in;
    for (const auto& v : gens) {
        if (v.is_zero()) continue;
        evec e = to_evec(v, rank, ring, nullptr);
        sort_merge(cx, e.ts);
        in.push_back(std::move(e));
    }
    auto res = run_engine(cx, std::move(in), false);
    std::vector<module_vector> out;
    for (const auto& v : res) {
        rational lcinv = rational(v.ts.front().c).inverse();
        out.push_back(to_module_vector(v, rank, ring, lcinv));
    }
    return out;
}

module_vector module_normal_form(const module_vector& v, const std::vector<module_vector>& basis,
                                 const monomial_order& ord, int dominant_comps, algebra alg,
                                 budget* bud) {
    ring_ptr ring;
    int rank = (int)v.comps.size();
    for (const auto& b : basis) rank = std::max(rank, (int)b.comps.size());
    for (const auto& p : v.comps)
        if (p.ring()) ring = p.ring();
    if (!ring)
        for (const auto& b : basis)
            for (const auto& p : b.comps)
                if (p.ring()) ring = p.ring();
    ctx_t cx{*ring, ring, ord, alg, dominant_comps, bud};
    validate_order(cx);
    rational scale;
    evec e = to_evec(v, rank, ring, &scale);
    sort_merge(cx, e.ts);
    std::vector<evec> b;
    for (const auto& g : basis) {
        if (g.is_zero()) continue;
        evec eg = to_evec(g, rank, ring, nullptr);
        sort_merge(cx, eg.ts);
        make_primitive(eg);
        b.push_back(std::move(eg));
    }
    reduce_result r = reduce(cx, std::move(e), b);
    rational adj = rational(1) / (scale * rational(r.mult));
    evec res;
    res.ts = std::move(r.nf);
    return to_module_vector(res, rank, ring, adj);
}

syzygy_module vector_syzygies(const std::vector<module_vector>& g, const monomial_order& ord,
                              algebra alg, budget* bud) {
    syzygy_module out;
    out.rank = (int)g.size();
    if (g.empty()) return out;
    int r0 = 0;
    ring_ptr ring;
    for (const auto& v : g) {
        r0 = std::max(r0, (int)v.comps.size());
        for (const auto& p : v.comps)
            if (p.ring()) ring = p.ring();
    }
    ctx_t cx{*ring, ring, ord, alg, r0, bud};
    std::vector<evec> in;
    std::vector<rational> scales(g.size(), rational(1));
    for (size_t i = 0; i < g.size(); ++i) {
        rational sc;
        evec e = to_evec(g[i], r0, ring, &sc);
        scales[i] = sc;
        monomial one(ring->arity());
        e.ts.push_back({one, r0 + (int)i, mpz_class(1)});
        sort_merge(cx, e.ts);
        in.push_back(std::move(e));
    }
    auto res = run_engine(cx, std::move(in), false);
    for (const auto& v : res) {
        bool pure = true;
        for (const auto& t : v.ts)
            if (t.comp < r0) { pure = false; break; }
        if (!pure) continue;
        module_vector mv;
        for (size_t i = 0; i < g.size(); ++i) {
            // syzygy of the scaled inputs: multiply component i back by scales[i]
            mv.comps.push_back(comp_to_poly(v.ts, r0 + (int)i, ring, scales[i]));
        }
        out.gens.push_back(std::move(mv));
    }
    return out;
}

syzygy_module syzygies(const std::vector<polynomial>& g, const monomial_order& ord, algebra alg,
                       budget* bud) {
    std::vector<module_vector> vs;
    for (const auto& p : g) vs.push_back(module_vector{{p}});
    return vector_syzygies(vs, ord, alg, bud);
}

// ---- derived commutative operations ----

bool in_ideal(const polynomial& p, const ideal& I, budget* bud) {
    if (p.is_zero()) return true;
    if (I.gens.empty()) return false;
    monomial_order ord = monomial_order::degrevlex(I.ring);
    const auto& b = ideal_basis(I, ord, algebra::commutative, bud);
    return normal_form(p, b, ord, algebra::commutative, bud).is_zero();
}

bool ideal_equal(const ideal& I, const ideal& J, budget* bud) {
    monomial_order ord = monomial_order::degrevlex(I.ring);
    const auto& a = ideal_basis(I, ord, algebra::commutative, bud);
    const auto& b = ideal_basis(J, ord, algebra::commutative, bud);
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

ideal eliminate(const ideal& I, const std::vector<int>& block_vars, budget* bud) {
    monomial_order ord = monomial_order::eliminating(I.ring, block_vars);
    auto b = groebner_basis(I.gens, ord, algebra::commutative, bud);
    std::vector<polynomial> keep;
    for (const auto& g : b)
        if (!g.involves(block_vars)) keep.push_back(g);
    return ideal(I.ring, std::move(keep));
}

ideal intersect(const ideal& I, const ideal& J, budget* bud) {
    ring_ptr ext = ring_signature::with_extra_aux(I.ring, "@w");
    int w = ext->index_of("@w");
    polynomial wp = polynomial::variable(ext, "@w");
    polynomial one = polynomial::constant(ext, rational(1));
    std::vector<polynomial> gens;
    for (const auto& g : I.gens) gens.push_back(wp * g.mapped_to(ext));
    for (const auto& g : J.gens) gens.push_back((one - wp) * g.mapped_to(ext));
    ideal K(ext, std::move(gens));
    ideal E = eliminate(K, {w}, bud);
    std::vector<polynomial> out;
    for (const auto& g : E.gens) out.push_back(g.mapped_to(I.ring));
    return ideal(I.ring, std::move(out));
}

ideal ideal_quotient(const ideal& I, const polynomial& g, budget* bud) {
    if (g.is_zero()) throw std::invalid_argument("ideal_quotient: zero divisor polynomial");
    if (g.is_constant()) return ideal(I.ring, I.gens);
    ideal gi(I.ring, {g});
    ideal K = intersect(I, gi, bud);
    std::vector<polynomial> out;
    for (const auto& h : K.gens) {
        auto q = h.divided_by(g);
        if (!q) throw std::logic_error("ideal_quotient: inexact division");
        if (!q->is_zero()) out.push_back(*q);
    }
    return ideal(I.ring, std::move(out));
}

ideal quotient_by_ideal(const ideal& I, const ideal& J, budget* bud) {
    bool first = true;
    ideal acc;
    for (const auto& g : J.gens) {
        if (g.is_zero()) continue;
        ideal q = ideal_quotient(I, g, bud);
        if (first) { acc = std::move(q); first = false; }
        else acc = intersect(acc, q, bud);
    }
    if (first) {
        // J = (0): I : 0 = (1)
        return ideal(I.ring, {polynomial::constant(I.ring, rational(1))});
    }
    return acc;
}

std::pair<ideal, int> saturation(const ideal& I, const polynomial& g, budget* bud) {
    ideal cur(I.ring, I.gens);
    int n = 0;
    for (;;) {
        ideal next = ideal_quotient(cur, g, bud);
        if (ideal_equal(cur, next, bud)) return {cur, n};
        cur = std::move(next);
        ++n;
    }
}

int dimension_of_supports(const std::vector<uint32_t>& supports, int nvars) {
    for (uint32_t s : supports)
        if (s == 0) return -1; // unit ideal
    // drop supersets
    std::vector<uint32_t> ss;
    for (uint32_t s : supports) {
        bool dominated = false;
        for (uint32_t t : supports)
            if (t != s && (t & s) == t) { dominated = true; break; }
        if (!dominated && std::find(ss.begin(), ss.end(), s) == ss.end()) ss.push_back(s);
    }
    // minimum hitting set, branch and bound
    int best = nvars + 1;
    auto rec = [&](auto&& self, std::vector<uint32_t> rem, int used) -> void {
        if (used >= best) return;
        if (rem.empty()) { best = used; return; }
        uint32_t pick = rem[0];
        for (uint32_t s : rem)
            if (__builtin_popcount(s) < __builtin_popcount(pick)) pick = s;
        for (int v = 0; v < nvars; ++v) {
            if (!(pick >> v & 1)) continue;
            std::vector<uint32_t> nxt;
            for (uint32_t s : rem)
                if (!(s >> v & 1)) nxt.push_back(s);
            self(self, std::move(nxt), used + 1);
        }
    };
    rec(rec, ss, 0);
    return nvars - best;
}

int dimension(const ideal& I, budget* bud) {
    int nvars = I.ring->arity();
    bool allzero = true;
    for (const auto& g : I.gens)
        if (!g.is_zero()) allzero = false;
    if (I.gens.empty() || allzero) return nvars;
    monomial_order ord = monomial_order::degrevlex(I.ring);
    const auto& b = ideal_basis(I, ord, algebra::commutative, bud);
    std::vector<uint32_t> supports;
    for (const auto& g : b) {
        const monomial& m = g.lt().m; // degrevlex is the canonical storage order
        uint32_t s = 0;
        for (int v = 0; v < nvars; ++v)
            if (m[v]) s |= 1u << v;
        supports.push_back(s);
    }
    return dimension_of_supports(supports, nvars);
}

regseq_result regular_sequence_failure_locus(const std::vector<polynomial>& seq, budget* bud) {
    if (seq.empty()) throw std::invalid_argument("regular_sequence: empty sequence");
    ring_ptr ring = seq[0].ring();
    std::vector<int> graded;
    for (int v : ring->block_indices(var_block::symbol)) graded.push_back(v);
    for (int v : ring->block_indices(var_block::s)) graded.push_back(v);
    for (const auto& p : seq) {
        if (p.is_zero() || !p.homogeneous_over(graded))
            throw std::invalid_argument(
                "regular_sequence: elements must be nonzero and homogeneous in the symbol block");
    }
    regseq_result out;
    ideal prev(ring, {});
    std::vector<polynomial> locus_gens;
    bool any_strict = false;
    for (const auto& p : seq) {
        ideal quot = ideal_quotient(prev, p, bud);
        bool strict = !ideal_equal(quot, prev, bud);
        if (strict) {
            any_strict = true;
            ideal ann = quotient_by_ideal(prev, quot, bud);
            for (const auto& g : ann.gens) locus_gens.push_back(g);
        }
        auto gens = prev.gens;
        gens.push_back(p);
        prev = ideal(ring, std::move(gens));
    }
    int ht = ring->arity() - dimension(prev, bud);
    out.regular = (ht == (int)seq.size());
    if (!any_strict) {
        out.locus = ideal(ring, {polynomial::constant(ring, rational(1))});
        return out;
    }
    ideal locus(ring, std::move(locus_gens));
    out.locus = eliminate(locus, graded, bud);
    if (out.locus.gens.empty())
        out.locus = ideal(ring, {});
    return out;
}

} // namespace freediv
