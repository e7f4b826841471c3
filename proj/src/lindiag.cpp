#include "freediv/lindiag.hpp"
#include "freediv/parse.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace freediv {

namespace {

std::vector<std::string> base_names(const divisor& d) {
    std::vector<std::string> xs;
    for (const auto& v : d.ring->vars()) xs.push_back(v.name);
    return xs;
}

// F_T-adapted order: weight 1 on momenta and s, degrevlex tiebreak
monomial_order order_ft(const ring_ptr& W) {
    std::vector<int64_t> w(W->arity(), 0);
    for (int i = 0; i < W->arity(); ++i)
        if (W->at(i).kind == var_kind::momentum || W->at(i).block == var_block::s) w[i] = 1;
    return monomial_order::weighted(W, std::move(w), monomial_order::degrevlex(W));
}

// F-adapted order: weight 1 on momenta only
monomial_order order_f(const ring_ptr& W) {
    std::vector<int64_t> w(W->arity(), 0);
    for (int i = 0; i < W->arity(); ++i)
        if (W->at(i).kind == var_kind::momentum) w[i] = 1;
    return monomial_order::weighted(W, std::move(w), monomial_order::degrevlex(W));
}

std::vector<polynomial> delta_forms(const divisor& d, const log_basis& basis,
                                    const ring_ptr& sring) {
    polynomial s = polynomial::variable(sring, "s");
    std::vector<polynomial> out;
    for (const auto& g : basis.delta) {
        polynomial delta = -g.weight.mapped_to(sring) * s;
        for (int j = 0; j < d.n; ++j)
            delta += g.coef[j].mapped_to(sring) *
                     polynomial::variable(sring, ring_signature::symbol_name(j));
        out.push_back(delta);
    }
    return out;
}


polynomial lcm_in_s(const polynomial& a, const polynomial& b) {
    if (a.is_zero() || b.is_zero()) return polynomial::zero(a.ring());
    polynomial g = poly_gcd(a, b);
    polynomial l = *(a * b).divided_by(g);
    return l.scaled(l.lt().c.inverse());
}

} // namespace

rees_kernel_t rees_kernel(const divisor& d, const log_basis& basis, budget* bud) {
    std::vector<std::string> xs = base_names(d);
    ring_ptr rr = ring_signature::rees_ring(xs);
    ring_ptr sring = ring_signature::symbol_ring(xs, true);
    polynomial t = polynomial::variable(rr, "t");
    polynomial fr = d.f.mapped_to(rr);
    std::vector<polynomial> gens{polynomial::variable(rr, "s") - fr * t};
    for (int i = 0; i < d.n; ++i)
        gens.push_back(polynomial::variable(rr, ring_signature::symbol_name(i)) -
                       d.f.derivative(i).mapped_to(rr) * t);
    ideal I(rr, gens);
    ideal E = eliminate(I, {rr->index_of("t")}, bud);

    rees_kernel_t out;
    out.sring = sring;
    std::vector<int> graded;
    for (int v : sring->block_indices(var_block::symbol)) graded.push_back(v);
    for (int v : sring->block_indices(var_block::s)) graded.push_back(v);
    std::vector<polynomial> full;
    for (const auto& g : E.gens) {
        polynomial h = g.mapped_to(sring);
        // split into (xi, s)-homogeneous components; each lies in the kernel
        std::map<int64_t, std::vector<term>> comp;
        for (const auto& tm : h.terms()) comp[tm.m.degree_over(graded)].push_back(tm);
        for (auto& [deg, ts] : comp)
            full.push_back(polynomial::from_terms(sring, ts).primitive_part().second);
    }
    out.full = ideal(sring, full);
    out.degree_one = delta_forms(d, basis, sring);

    // check phi(g) = 0 by substitution s -> f t, xi_i -> f_{x_i} t
    {
        auto subst = [&](const polynomial& g) {
            polynomial h = g.mapped_to(rr);
            h = h.substituted(rr->index_of("s"), fr * t);
            for (int i = 0; i < d.n; ++i)
                h = h.substituted(rr->index_of(ring_signature::symbol_name(i)),
                                  d.f.derivative(i).mapped_to(rr) * t);
            return h;
        };
        for (const auto& g : out.full.gens)
            if (!subst(g).is_zero()) throw std::logic_error("rees_kernel: phi(generator) != 0");
        for (const auto& g : out.degree_one)
            if (!subst(g).is_zero()) throw std::logic_error("rees_kernel: phi(Delta) != 0");
    }

    // extra generators: reduce against the degree-one ideal, keep survivors
    monomial_order ord = monomial_order::degrevlex(sring);
    ideal deg1(sring, out.degree_one);
    const auto& deg1_basis = ideal_basis(deg1, ord, algebra::commutative, bud);
    std::vector<polynomial> candidates;
    for (const auto& g : out.full.gens) {
        polynomial nf = normal_form(g, deg1_basis, ord, algebra::commutative, bud);
        if (!nf.is_zero()) candidates.push_back(nf.primitive_part().second);
    }
    std::sort(candidates.begin(), candidates.end(), [&](const polynomial& a, const polynomial& b) {
        auto da = a.degree_over(graded), db = b.degree_over(graded);
        if (da != db) return da < db;
        return a.str() < b.str();
    });
    for (const auto& c : candidates) {
        std::vector<polynomial> span = out.degree_one;
        for (const auto& e : out.extras) span.push_back(e);
        auto b2 = groebner_basis(span, ord, algebra::commutative, bud);
        polynomial nf = normal_form(c, b2, ord, algebra::commutative, bud);
        if (!nf.is_zero()) {
            polynomial e = nf.primitive_part().second;
            out.extras.push_back(e);
            std::vector<int> xi_only = sring->block_indices(var_block::symbol);
            out.extra_degrees.push_back(e.degree_over(xi_only));
        }
    }
    return out;
}

bool clt_test(const rees_kernel_t& k, budget* bud) {
    monomial_order ord = monomial_order::degrevlex(k.sring);
    ideal deg1(k.sring, k.degree_one);
    const auto& b = ideal_basis(deg1, ord, algebra::commutative, bud);
    for (const auto& g : k.full.gens)
        if (!normal_form(g, b, ord, algebra::commutative, bud).is_zero()) return false;
    return true;
}

std::optional<int> gcl_exponent(const rees_kernel_t& k, budget* bud) {
    monomial_order ord = monomial_order::degrevlex(k.sring);
    ideal deg1(k.sring, k.degree_one);
    polynomial s = polynomial::variable(k.sring, "s");
    auto [sat, nmax] = saturation(deg1, s, bud);
    const auto& sat_basis = ideal_basis(sat, ord, algebra::commutative, bud);
    for (const auto& g : k.full.gens)
        if (!normal_form(g, sat_basis, ord, algebra::commutative, bud).is_zero())
            return std::nullopt;
    for (int n = 0; n <= nmax; ++n) {
        polynomial sn = s.pow(n);
        bool all = true;
        const auto& b = ideal_basis(deg1, ord, algebra::commutative, bud);
        for (const auto& g : k.full.gens)
            if (!normal_form(sn * g, b, ord, algebra::commutative, bud).is_zero()) {
                all = false;
                break;
            }
        if (all) return n;
    }
    return nmax; // saturation exponent bounds the answer
}

flag_locus gk_test(const divisor& d, const log_basis& basis, budget* bud) {
    ring_ptr sring = ring_signature::symbol_ring(base_names(d), true);
    regseq_result r = regular_sequence_failure_locus(delta_forms(d, basis, sring), bud);
    return flag_locus{r.regular, r.locus};
}

flag_locus koszul_test(const divisor& d, const log_basis& basis, budget* bud) {
    ring_ptr sring = ring_signature::symbol_ring(base_names(d), false);
    std::vector<polynomial> syms;
    for (const auto& g : basis.delta) {
        polynomial sym = polynomial::zero(sring);
        for (int j = 0; j < d.n; ++j)
            sym += g.coef[j].mapped_to(sring) *
                   polynomial::variable(sring, ring_signature::symbol_name(j));
        syms.push_back(sym);
    }
    regseq_result r = regular_sequence_failure_locus(syms, bud);
    return flag_locus{r.regular, r.locus};
}

polynomial bernstein(const divisor& d, const left_ideal& ann, budget* bud) {
    std::vector<polynomial> gens = ann.gens;
    gens.push_back(d.f.mapped_to(ann.ring));
    return central_slice(left_ideal(ann.ring, gens), bud);
}

ann_tower_t ann_tower(const divisor& d, const std::vector<polynomial>& theta,
                      const left_ideal& ann, budget* bud) {
    (void)d;
    ann_tower_t out;
    out.ann1 = left_ideal(ann.ring, theta);
    monomial_order ft = order_ft(ann.ring);
    auto G = left_groebner_basis(ann.gens, ft, bud);

    // sanity: the order <= 1 part of the basis spans ann^(1)
    monomial_order drl = monomial_order::degrevlex(ann.ring);
    const auto& ann1_basis = left_basis(out.ann1, drl, bud);
    for (const auto& g : G)
        if (weyl_order(g, filtration::total_order) <= 1 &&
            !left_normal_form(g, ann1_basis, drl, bud).is_zero()) {
            out.abort_reason = "order-one part of ann exceeds the Theta span";
            return out;
        }

    std::map<int64_t, std::vector<polynomial>> by_order;
    for (const auto& g : G) {
        int64_t k = weyl_order(g, filtration::total_order);
        if (k >= 2) by_order[k].push_back(g);
    }
    left_ideal cur = out.ann1;
    out.terminal = 1;
    for (auto& [k, gens_k] : by_order) {
        std::vector<polynomial> fresh;
        for (const auto& g : gens_k)
            if (!in_left_ideal(g, cur, bud)) fresh.push_back(g);
        if (fresh.empty()) continue;
        polynomial bk = polynomial::constant(ring_signature::polynomial({"s"}), rational(1));
        for (const auto& g : fresh) {
            polynomial bg = central_colon_element(cur, g, bud);
            if (bg.is_zero()) {
                out.abort_reason = "no central connecting polynomial at level " +
                                   std::to_string(k);
                return out;
            }
            bk = lcm_in_s(bk, bg);
        }
        if (bk.total_degree() != 1) {
            out.abort_reason = "NonPrincipalStep: connecting ideal at level " + std::to_string(k) +
                               " is (" + bk.str() + ")";
            return out;
        }
        cur = colon_by_central(cur, bk.mapped_to(ann.ring), bud);
        out.levels.push_back({(int)k, bk, fresh});
        out.terminal = (int)k;
    }
    out.complete = left_ideal_equal(cur, ann, bud);
    if (!out.complete && out.abort_reason.empty())
        out.abort_reason = "tower did not reach ann f^s";
    return out;
}

polynomial gdl_witness(const divisor& d, const ann_tower_t& tower, const left_ideal& ann,
                       budget* bud) {
    (void)d;
    ring_ptr sring = ring_signature::polynomial({"s"});
    polynomial beta = polynomial::constant(sring, rational(1));
    if (tower.complete) {
        for (const auto& lv : tower.levels) beta *= lv.factor;
    } else {
        for (const auto& g : ann.gens) {
            polynomial bg = central_colon_element(tower.ann1, g, bud);
            if (bg.is_zero()) throw timeout_error("gdl_witness: no central multiplier found");
            beta = lcm_in_s(beta, bg);
        }
    }
    // direct verification: beta * G in ann^(1) for every generator
    monomial_order drl = monomial_order::degrevlex(ann.ring);
    const auto& b1 = left_basis(tower.ann1, drl, bud);
    polynomial beta_w = beta.mapped_to(ann.ring);
    for (const auto& g : ann.gens)
        if (!left_normal_form(weyl_product(beta_w, g), b1, drl, bud).is_zero())
            throw std::logic_error("gdl_witness: beta * ann not inside ann^(1)");
    return beta;
}

bool dlt_test(const left_ideal& ann, const std::vector<polynomial>& theta, budget* bud) {
    left_ideal ann1(ann.ring, theta);
    monomial_order drl = monomial_order::degrevlex(ann.ring);
    const auto& b1 = left_basis(ann1, drl, bud);
    for (const auto& g : ann.gens)
        if (!left_normal_form(g, b1, drl, bud).is_zero()) return false;
    return true;
}

bool gr_ann_check(const divisor& d, const left_ideal& ann, const rees_kernel_t& k, budget* bud) {
    (void)d;
    monomial_order ft = order_ft(ann.ring);
    auto G = left_groebner_basis(ann.gens, ft, bud);
    std::vector<polynomial> syms;
    for (const auto& g : G) syms.push_back(symbol(g, filtration::total_order, k.sring));
    monomial_order ord = monomial_order::degrevlex(k.sring);
    ideal A(k.sring, syms);
    const auto& ab = ideal_basis(A, ord, algebra::commutative, bud);
    const auto& kb = ideal_basis(k.full, ord, algebra::commutative, bud);
    for (const auto& g : syms)
        if (!normal_form(g, kb, ord, algebra::commutative, bud).is_zero()) return false;
    for (const auto& g : k.full.gens)
        if (!normal_form(g, ab, ord, algebra::commutative, bud).is_zero()) return false;
    return true;
}

pre_spencer_result pre_spencer_test(const divisor& d, const std::vector<polynomial>& theta,
                                    bool gk, const log_basis& basis, budget* bud) {
    if (gk) {
        left_ideal ann1(theta.empty() ? weyl_s_ring_for(d.ring) : theta[0].ring(), theta);
        polynomial s = polynomial::variable(ann1.ring, "s");
        left_ideal colon = colon_by_central(ann1, s, bud);
        return {left_ideal_equal(colon, ann1, bud), "s-torsion criterion"};
    }
    return {spencer_syzygy_test(d, basis, d.n, bud), "direct syzygy"};
}

bool spencer_syzygy_test(const divisor& d, const log_basis& basis, int use_first, budget* bud) {
    int m = use_first;
    if (m < 1 || m > d.n) throw std::invalid_argument("spencer_syzygy_test: bad subset size");
    ring_ptr W = ring_signature::weyl(base_names(d), false);
    std::vector<polynomial> ops;
    for (int i = 0; i < m; ++i) ops.push_back(derivation_operator(basis.delta[i], d, W));

    // coefficient matrix of the full basis, for Cramer solving
    polynomial cf = basis.det; // det = c * f
    auto solve_in_basis = [&](const log_derivation& target) {
        // a with sum_k a_k delta_k = target, via Cramer over the full basis
        std::vector<polynomial> a;
        for (int k = 0; k < d.n; ++k) {
            std::vector<std::vector<polynomial>> mat;
            for (int i = 0; i < d.n; ++i) {
                std::vector<polynomial> row;
                for (int j = 0; j < d.n; ++j)
                    row.push_back(i == k ? target.coef[j] : basis.delta[i].coef[j]);
                mat.push_back(std::move(row));
            }
            // determinant of mat with row k replaced
            polynomial det = polynomial::zero(d.ring);
            {
                // reuse cofactor expansion through a tiny local lambda
                std::function<polynomial(std::vector<std::vector<polynomial>>&)> ddet =
                    [&](std::vector<std::vector<polynomial>>& mm) -> polynomial {
                    size_t n = mm.size();
                    if (n == 1) return mm[0][0];
                    polynomial acc = polynomial::zero(d.ring);
                    for (size_t j = 0; j < n; ++j) {
                        if (mm[0][j].is_zero()) continue;
                        std::vector<std::vector<polynomial>> sub;
                        for (size_t i = 1; i < n; ++i) {
                            std::vector<polynomial> row;
                            for (size_t kk = 0; kk < n; ++kk)
                                if (kk != j) row.push_back(mm[i][kk]);
                            sub.push_back(std::move(row));
                        }
                        polynomial mi = mm[0][j] * ddet(sub);
                        if (j % 2) acc -= mi;
                        else acc += mi;
                    }
                    return acc;
                };
                det = ddet(mat);
            }
            auto q = det.divided_by(cf);
            if (!q) throw std::logic_error("spencer_syzygy_test: bracket not in the basis span");
            a.push_back(*q);
        }
        return a;
    };

    std::vector<module_vector> rels;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            log_derivation br = bracket(d, basis.delta[i], basis.delta[j]);
            std::vector<polynomial> a = solve_in_basis(br);
            bool inside = true;
            for (int k = m; k < d.n; ++k)
                if (!a[k].is_zero()) inside = false;
            if (!inside) continue; // no Spencer relation for this pair in the subset
            module_vector R;
            for (int k = 0; k < m; ++k) {
                polynomial comp = a[k].mapped_to(W);
                if (k == i) comp += ops[j];
                if (k == j) comp -= ops[i];
                R.comps.push_back(comp);
            }
            // confirm it is a syzygy of the operators
            polynomial chk = polynomial::zero(W);
            for (int k = 0; k < m; ++k) chk += weyl_product(R.comps[k], ops[k]);
            if (!chk.is_zero())
                throw std::logic_error("spencer_syzygy_test: Spencer relation is not a syzygy");
            rels.push_back(std::move(R));
        }

    syzygy_module syz = left_syzygies(ops, bud);
    if (syz.gens.empty()) return true;
    if (rels.empty()) return false;
    monomial_order ord = monomial_order::degrevlex(W);
    auto relgb = module_groebner(rels, ord, 0, algebra::weyl_left, bud);
    for (const auto& v : syz.gens)
        if (!module_normal_form(v, relgb, ord, 0, algebra::weyl_left, bud).is_zero())
            return false;
    return true;
}

bool holonomicity_test(const std::vector<polynomial>& gens, const divisor& d, budget* bud) {
    if (gens.empty()) throw std::invalid_argument("holonomicity_test: no generators");
    ring_ptr W = gens[0].ring();
    monomial_order f_ord = order_f(W);
    auto G = left_groebner_basis(gens, f_ord, bud);
    ring_ptr sring = ring_signature::symbol_ring(base_names(d), false);
    std::vector<polynomial> syms;
    for (const auto& g : G) syms.push_back(symbol(g, filtration::order, sring));
    return dimension(ideal(sring, syms), bud) == d.n;
}

bool spencer_test(const divisor& d, const pre_spencer_result& ps, const log_basis& basis,
                  budget* bud) {
    if (!ps.flag) return false;
    ring_ptr W = ring_signature::weyl(base_names(d), false);
    std::vector<polynomial> ops;
    for (const auto& g : basis.delta) ops.push_back(derivation_operator(g, d, W));
    return holonomicity_test(ops, d, bud);
}

std::vector<std::pair<rational, int>> rational_roots(const polynomial& b) {
    std::vector<std::pair<rational, int>> roots;
    if (b.is_zero() || b.ring()->arity() != 1) return roots;
    polynomial cur = b;
    auto divisors_of = [](const mpz_class& n0) {
        std::vector<mpz_class> out;
        mpz_class n = abs(n0);
        if (n == 0) return out;
        for (mpz_class i = 1; i * i <= n && i < 2000000; ++i) {
            if (n % i == 0) {
                out.push_back(i);
                if (i * i != n) out.push_back(n / i);
            }
        }
        return out;
    };
    bool progress = true;
    while (progress && cur.total_degree() >= 1) {
        progress = false;
        polynomial prim = cur.primitive_part().second;
        rational a0(0), an(0);
        for (const auto& t : prim.terms()) {
            if (t.m.is_one()) a0 = t.c;
            if (t.m.degree() == prim.total_degree()) an = t.c;
        }
        if (a0.is_zero()) {
            // root 0
            int mult = 0;
            polynomial svar = polynomial::variable(b.ring(), b.ring()->at(0).name);
            while (true) {
                auto q = cur.divided_by(svar);
                if (!q) break;
                cur = *q;
                ++mult;
            }
            if (mult) {
                roots.push_back({rational(0), mult});
                progress = true;
                continue;
            }
        }
        for (const auto& p : divisors_of(a0.num()))
            for (const auto& q : divisors_of(an.num())) {
                for (int sgn2 = 0; sgn2 < 2; ++sgn2) {
                    rational r = sgn2 ? rational(p, q) : -rational(p, q);
                    if (cur.evaluate({r}).is_zero()) {
                        polynomial fac =
                            polynomial::variable(b.ring(), b.ring()->at(0).name) -
                            polynomial::constant(b.ring(), r);
                        int mult = 0;
                        while (true) {
                            auto qq = cur.divided_by(fac);
                            if (!qq) break;
                            cur = *qq;
                            ++mult;
                        }
                        roots.push_back({r, mult});
                        progress = true;
                        goto next_round;
                    }
                }
            }
    next_round:;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool has_integer_root_below(const polynomial& b, long bound) {
    for (const auto& [r, mult] : rational_roots(b))
        if (r.is_integer() && r < rational(bound)) return true;
    return false;
}

check_status ann_f_inverse_check(const divisor& d, const polynomial& b, const log_basis& basis,
                                 const left_ideal& ann, budget* bud) {
    if (has_integer_root_below(b, -1)) return check_status::inconclusive;
    ring_ptr W0 = ring_signature::weyl(base_names(d), false);
    int sidx = ann.ring->index_of("s");
    std::vector<polynomial> j1;
    for (const auto& g : ann.gens) {
        polynomial h =
            g.substituted(sidx, polynomial::constant(ann.ring, rational(-1))).mapped_to(W0);
        if (!h.is_zero()) j1.push_back(h);
    }
    std::vector<polynomial> j2;
    for (const auto& g : basis.delta)
        j2.push_back(derivation_operator(g, d, W0) + g.weight.mapped_to(W0));
    left_ideal I1(W0, j1), I2(W0, j2);
    monomial_order drl = monomial_order::degrevlex(W0);
    const auto& b1 = left_basis(I1, drl, bud);
    const auto& b2 = left_basis(I2, drl, bud);
    for (const auto& g : j1)
        if (!left_normal_form(g, b2, drl, bud).is_zero()) return check_status::disproved;
    for (const auto& g : j2)
        if (!left_normal_form(g, b1, drl, bud).is_zero()) return check_status::disproved;
    return check_status::proved;
}

check_status lct_test(const pre_spencer_result& ps, check_status ann_f_inverse) {
    if (ann_f_inverse == check_status::inconclusive) return check_status::inconclusive;
    bool v = ps.flag && ann_f_inverse == check_status::proved;
    return v ? check_status::proved : check_status::disproved;
}

namespace {

// lift a (xi, s)-polynomial back to the Weyl side, xi_k -> d_k
polynomial lift_symbol(const divisor& d, const polynomial& c, const ring_ptr& W) {
    std::vector<std::pair<std::string, std::string>> renames;
    for (int i = 0; i < d.n; ++i)
        renames.push_back({ring_signature::symbol_name(i),
                           ring_signature::momentum_name(d.ring->at(i).name)});
    return c.mapped_to(W, renames);
}

} // namespace

funceq_result functional_equation(const divisor& d, const polynomial& b,
                                  const std::vector<polynomial>& theta, const left_ideal& ann,
                                  const rees_kernel_t* kernel, budget* bud,
                                  int process_round_cap) {
    funceq_result out;
    ring_ptr W = ann.ring;
    ring_ptr sring = ring_signature::symbol_ring(base_names(d), true);
    polynomial bw = b.mapped_to(W);
    int64_t degb = b.total_degree();

    if (kernel) {
        std::vector<polynomial> kg = kernel->full.gens;
        kg.push_back(d.f.mapped_to(kernel->sring));
        ideal K(kernel->sring, kg);
        monomial_order ord = monomial_order::degrevlex(kernel->sring);
        const auto& kb = ideal_basis(K, ord, algebra::commutative, bud);
        polynomial spow = polynomial::variable(kernel->sring, "s").pow((int)degb);
        out.regular_candidate = normal_form(spow, kb, ord, algebra::commutative, bud).is_zero();
    }

    // generator set Q with transform rows to (f, theta_1..theta_n)
    std::vector<polynomial> Q{d.f.mapped_to(W)};
    for (const auto& th : theta) Q.push_back(th);
    std::vector<std::vector<polynomial>> T;
    for (size_t i = 0; i < Q.size(); ++i) {
        std::vector<polynomial> row(Q.size(), polynomial::zero(W));
        row[i] = polynomial::constant(W, rational(1));
        T.push_back(row);
    }
    monomial_order sord = monomial_order::degrevlex(sring);

    auto symbols_of = [&](const std::vector<polynomial>& qs) {
        std::vector<polynomial> syms;
        for (const auto& q : qs) syms.push_back(symbol(q, filtration::total_order, sring));
        return syms;
    };

    int rounds = 0;
    try {
        for (;;) {
            std::vector<polynomial> syms = symbols_of(Q);
            gb_with_transform sgb = groebner_basis_transform(syms, sord, algebra::commutative, bud);
            // descend b through the total-symbol filtration
            polynomial r = bw;
            std::vector<polynomial> A(Q.size(), polynomial::zero(W));
            bool stuck = false;
            while (!r.is_zero()) {
                if (bud) bud->tick();
                polynomial sr = symbol(r, filtration::total_order, sring);
                division_result div = divide_full(sr, sgb.basis, sord, algebra::commutative, bud);
                if (!div.remainder.is_zero()) { stuck = true; break; }
                polynomial r2 = r;
                for (size_t i = 0; i < Q.size(); ++i) {
                    polynomial ci = polynomial::zero(sring);
                    for (size_t j = 0; j < sgb.basis.size(); ++j)
                        if (!div.quotients[j].is_zero())
                            ci += div.quotients[j] * sgb.rows[j][i];
                    if (ci.is_zero()) continue;
                    polynomial lift = lift_symbol(d, ci, W);
                    A[i] += lift;
                    r2 -= weyl_product(lift, Q[i]);
                }
                if (weyl_order(r2, filtration::total_order) >=
                        weyl_order(r, filtration::total_order) &&
                    !r2.is_zero())
                    throw std::logic_error("functional_equation: descent failed to drop order");
                r = r2;
            }
            if (!stuck) {
                polynomial P = polynomial::zero(W);
                for (size_t i = 0; i < Q.size(); ++i)
                    if (!A[i].is_zero()) P += weyl_product(A[i], T[i][0]);
                // residual check: b - P f in ann^(1)
                left_ideal ann1(W, theta);
                monomial_order drl = monomial_order::degrevlex(W);
                const auto& b1 = left_basis(ann1, drl, bud);
                polynomial resid = bw - weyl_product(P, d.f.mapped_to(W));
                if (!left_normal_form(resid, b1, drl, bud).is_zero())
                    throw std::logic_error("functional_equation: residual escaped ann^(1)");
                out.found = true;
                out.order_p = weyl_order(P, filtration::total_order);
                out.in_ann1 = true;
                out.process_rounds = rounds;
                return out;
            }
            if (rounds >= process_round_cap) break;
            // process round: lift symbol-level syzygies, keep lifts whose
            // symbols escape the current symbol ideal
            syzygy_module syz = syzygies(syms, sord, algebra::commutative, bud);
            bool added = false;
            for (const auto& v : syz.gens) {
                polynomial qn = polynomial::zero(W);
                std::vector<polynomial> rown(Q.size(), polynomial::zero(W));
                for (size_t i = 0; i < Q.size(); ++i) {
                    if (v.comps[i].is_zero()) continue;
                    polynomial lift = lift_symbol(d, v.comps[i], W);
                    qn += weyl_product(lift, Q[i]);
                    for (size_t j = 0; j < T[i].size(); ++j)
                        rown[j] += weyl_product(lift, T[i][j]);
                }
                if (qn.is_zero()) continue;
                polynomial sq = symbol(qn, filtration::total_order, sring);
                division_result dv = divide_full(sq, sgb.basis, sord, algebra::commutative, bud);
                if (dv.remainder.is_zero()) continue;
                Q.push_back(qn);
                T.push_back(rown);
                added = true;
            }
            ++rounds;
            if (!added) break;
        }
    } catch (const timeout_error&) {
        out.note = "symbol descent timed out; falling back to direct division";
    }

    // fallback: direct division against ann + D[s] f
    std::vector<polynomial> gens{d.f.mapped_to(W)};
    for (const auto& g : ann.gens) gens.push_back(g);
    gb_with_transform gbt = groebner_basis_transform(gens, monomial_order::degrevlex(W),
                                                     algebra::weyl_left, bud);
    division_result div =
        divide_full(bw, gbt.basis, monomial_order::degrevlex(W), algebra::weyl_left, bud);
    if (!div.remainder.is_zero())
        throw std::logic_error("functional_equation: b not in ann + D[s] f");
    polynomial P = polynomial::zero(W);
    for (size_t j = 0; j < gbt.basis.size(); ++j)
        if (!div.quotients[j].is_zero()) P += weyl_product(div.quotients[j], gbt.rows[j][0]);
    left_ideal ann1(W, theta);
    monomial_order drl = monomial_order::degrevlex(W);
    const auto& b1 = left_basis(ann1, drl, bud);
    polynomial resid = bw - weyl_product(P, d.f.mapped_to(W));
    out.found = true;
    out.order_p = weyl_order(P, filtration::total_order);
    out.in_ann1 = left_normal_form(resid, b1, drl, bud).is_zero();
    out.process_rounds = rounds;
    if (out.note.empty()) out.note = "direct division fallback";
    return out;
}

bool ann_f_generated_by(const divisor& d, const left_ideal& ann, const log_basis& basis,
                        budget* bud) {
    // work with the s-free annihilator ann_D f^s = ann_{D[s]} f^s cap D
    ring_ptr W0 = ring_signature::weyl(base_names(d), false);
    int sidx = ann.ring->index_of("s");
    monomial_order elim_s = monomial_order::eliminating(ann.ring, {sidx});
    auto G = left_groebner_basis(ann.gens, elim_s, bud);
    std::vector<polynomial> higher;
    for (const auto& g : G) {
        if (g.involves({sidx})) continue;
        polynomial h = g.mapped_to(W0);
        if (weyl_order(h, filtration::order) >= 2) higher.push_back(h);
    }
    if (higher.empty()) return true;
    std::vector<polynomial> zeros;
    for (const auto& g : basis.delta)
        if (g.weight.is_zero()) zeros.push_back(derivation_operator(g, d, W0));
    if (zeros.empty()) return false;
    left_ideal Z(W0, zeros);
    monomial_order drl = monomial_order::degrevlex(W0);
    const auto& zb = left_basis(Z, drl, bud);
    polynomial fw = d.f.mapped_to(W0);
    for (const auto& g : higher)
        if (!left_normal_form(weyl_product(g, fw), zb, drl, bud).is_zero()) return false;
    return true;
}

} // namespace freediv
