#include "freediv/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace freediv {

int canonical_compare(const monomial& a, const monomial& b) {
    int64_t da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    for (int i = a.arity() - 1; i >= 0; --i) {
        int32_t d = a[i] - b[i];
        if (d) return d > 0 ? -1 : 1;
    }
    return 0;
}

static void check_same_ring(const polynomial& a, const polynomial& b) {
    if (!a.ring() || !b.ring() || !a.ring()->same_names(*b.ring()))
        throw std::invalid_argument("polynomial: signature mismatch");
}

polynomial polynomial::constant(ring_ptr r, const rational& c) {
    polynomial p(std::move(r));
    if (!c.is_zero()) p.terms_.push_back({monomial(p.ring_->arity()), c});
    return p;
}

polynomial polynomial::variable(const ring_ptr& r, const std::string& name) {
    int i = r->index_of(name);
    if (i < 0) throw std::invalid_argument("polynomial: unknown variable '" + name + "'");
    polynomial p(r);
    monomial m(r->arity());
    m.set(i, 1);
    p.terms_.push_back({m, rational(1)});
    return p;
}

polynomial polynomial::from_terms(ring_ptr r, std::vector<term> ts) {
    polynomial p(std::move(r));
    for (auto& t : ts)
        if (t.m.arity() != p.ring_->arity())
            throw std::invalid_argument("polynomial: monomial arity mismatch");
    p.terms_ = std::move(ts);
    p.normalize();
    return p;
}

void polynomial::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const term& a, const term& b) { return canonical_compare(a.m, b.m) > 0; });
    std::vector<term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().m == t.m)
            out.back().c += t.c;
        else
            out.push_back(std::move(t));
        if (!out.empty() && out.back().c.is_zero()) out.pop_back();
    }
    terms_ = std::move(out);
}

bool polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
}

rational polynomial::constant_value() const {
    if (terms_.empty()) return rational(0);
    if (!is_constant()) throw std::logic_error("polynomial: not a constant");
    return terms_[0].c;
}

const term& polynomial::lt() const {
    if (terms_.empty()) throw std::logic_error("polynomial: leading term of zero");
    return terms_[0];
}

int64_t polynomial::total_degree() const {
    int64_t d = -1;
    for (const auto& t : terms_) d = std::max(d, t.m.degree());
    return d;
}

int64_t polynomial::degree_in(int var) const {
    int64_t d = -1;
    for (const auto& t : terms_) d = std::max<int64_t>(d, t.m[var]);
    return terms_.empty() ? -1 : d;
}

int64_t polynomial::degree_over(const std::vector<int>& vars) const {
    int64_t d = -1;
    for (const auto& t : terms_) d = std::max(d, t.m.degree_over(vars));
    return d;
}

bool polynomial::homogeneous_over(const std::vector<int>& vars) const {
    if (terms_.empty()) return true;
    int64_t d = terms_[0].m.degree_over(vars);
    for (const auto& t : terms_)
        if (t.m.degree_over(vars) != d) return false;
    return true;
}

bool polynomial::involves(const std::vector<int>& vars) const {
    for (const auto& t : terms_)
        for (int v : vars)
            if (t.m[v]) return true;
    return false;
}

polynomial polynomial::operator-() const {
    polynomial r(*this);
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

polynomial& polynomial::operator+=(const polynomial& o) {
    if (terms_.empty()) { check_same_ring(*this, o); terms_ = o.terms_; return *this; }
    if (o.terms_.empty()) return *this;
    check_same_ring(*this, o);
    std::vector<term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = canonical_compare(terms_[i].m, o.terms_[j].m);
        if (c > 0) out.push_back(terms_[i++]);
        else if (c < 0) out.push_back(o.terms_[j++]);
        else {
            rational s = terms_[i].c + o.terms_[j].c;
            if (!s.is_zero()) out.push_back({terms_[i].m, s});
            ++i; ++j;
        }
    }
    while (i < terms_.size()) out.push_back(terms_[i++]);
    while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
    terms_ = std::move(out);
    return *this;
}

polynomial& polynomial::operator-=(const polynomial& o) { return *this += -o; }

polynomial operator*(const polynomial& a, const polynomial& b) {
    check_same_ring(a, b);
    polynomial r(a.ring_);
    if (a.is_zero() || b.is_zero()) return r;
    std::unordered_map<monomial, rational, monomial_hasher> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) acc[ta.m * tb.m] += ta.c * tb.c;
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) r.terms_.push_back({m, c});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const term& x, const term& y) { return canonical_compare(x.m, y.m) > 0; });
    return r;
}

polynomial polynomial::scaled(const rational& c) const {
    polynomial r(ring_);
    if (c.is_zero()) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.c *= c;
    return r;
}

polynomial polynomial::times_monomial(const monomial& m, const rational& c) const {
    polynomial r(ring_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
    return r; // order preserved: multiplication by a fixed monomial is monotone
}

polynomial polynomial::pow(int k) const {
    if (k < 0) throw std::invalid_argument("polynomial: negative power");
    polynomial r = constant(ring_, rational(1));
    polynomial b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

bool operator==(const polynomial& a, const polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.ring_ && b.ring_ && !a.ring_->same_names(*b.ring_)) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
}

polynomial polynomial::derivative(const std::string& var) const {
    int i = ring_->index_of(var);
    if (i < 0) throw std::invalid_argument("derivative: unknown variable '" + var + "'");
    return derivative(i);
}

polynomial polynomial::derivative(int var) const {
    polynomial r(ring_);
    for (const auto& t : terms_) {
        int32_t e = t.m[var];
        if (!e) continue;
        monomial m = t.m;
        m.set(var, e - 1);
        r.terms_.push_back({m, t.c * rational(e)});
    }
    r.normalize();
    return r;
}

std::optional<polynomial> polynomial::divided_by(const polynomial& d) const {
    check_same_ring(*this, d);
    if (d.is_zero()) throw std::domain_error("polynomial: division by zero");
    polynomial r = *this;
    std::vector<term> q;
    const term& dl = d.lt();
    while (!r.is_zero()) {
        const term& rl = r.lt();
        if (!dl.m.divides(rl.m)) return std::nullopt;
        term qt{rl.m / dl.m, rl.c / dl.c};
        q.push_back(qt);
        r -= d.times_monomial(qt.m, qt.c);
    }
    return from_terms(ring_, std::move(q));
}

polynomial polynomial::mapped_to(const ring_ptr& target) const { return mapped_to(target, {}); }

polynomial polynomial::mapped_to(
    const ring_ptr& target, const std::vector<std::pair<std::string, std::string>>& renames) const {
    std::vector<int> img(ring_->arity());
    for (int i = 0; i < ring_->arity(); ++i) {
        std::string name = ring_->at(i).name;
        for (const auto& [from, to] : renames)
            if (name == from) name = to;
        img[i] = target->index_of(name);
    }
    polynomial r(target);
    for (const auto& t : terms_) {
        monomial m(target->arity());
        for (int i = 0; i < ring_->arity(); ++i) {
            if (!t.m[i]) continue;
            if (img[i] < 0)
                throw std::invalid_argument("mapped_to: variable '" + ring_->at(i).name +
                                            "' missing in target signature");
            m.bump(img[i], t.m[i]);
        }
        r.terms_.push_back({m, t.c});
    }
    r.normalize();
    return r;
}

polynomial polynomial::substituted(int var, const polynomial& value) const {
    polynomial r = zero(ring_);
    // group by exponent of var, use Horner on the grouped pieces
    int64_t dmax = degree_in(var);
    if (dmax <= 0 && !involves({var})) return *this;
    std::vector<polynomial> coef((size_t)dmax + 1, zero(ring_));
    for (const auto& t : terms_) {
        monomial m = t.m;
        int32_t e = m[var];
        m.set(var, 0);
        coef[e] += from_terms(ring_, {{m, t.c}});
    }
    for (int64_t e = dmax; e >= 0; --e) r = r * value + coef[e];
    return r;
}

rational polynomial::evaluate(const std::vector<rational>& point) const {
    if ((int)point.size() != ring_->arity())
        throw std::invalid_argument("evaluate: point arity mismatch");
    rational acc(0);
    for (const auto& t : terms_) {
        rational v = t.c;
        for (int i = 0; i < ring_->arity(); ++i)
            for (int32_t k = 0; k < t.m[i]; ++k) v *= point[i];
        acc += v;
    }
    return acc;
}

std::pair<rational, polynomial> polynomial::primitive_part() const {
    if (is_zero()) return {rational(1), *this};
    mpz_class den(1), num(0);
    for (const auto& t : terms_) den = lcm(den, t.c.den());
    for (const auto& t : terms_) num = gcd(num, mpz_class(t.c.num() * (den / t.c.den())));
    rational content(num, den);
    if (terms_[0].c.sign() < 0) content = -content;
    return {content, scaled(content.inverse())};
}

std::string polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        rational c = t.c;
        if (first) {
            if (c.sign() < 0) { os << "-"; c = -c; }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        bool unit = c.is_one() && !t.m.is_one();
        if (!unit) os << c.str();
        bool any = !unit;
        for (int i = 0; i < ring_->arity(); ++i) {
            if (!t.m[i]) continue;
            if (any) os << "*";
            os << ring_->at(i).name;
            if (t.m[i] > 1) os << "^" << t.m[i];
            any = true;
        }
        first = false;
    }
    return os.str();
}

// ---- gcd via primitive PRS ----

namespace {

int pick_main_var(const polynomial& a, const polynomial& b) {
    for (int i = 0; i < a.ring()->arity(); ++i)
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) return i;
    return -1;
}

// coefficients of p as univariate in var (index by degree), in the same ring
std::vector<polynomial> coeffs_in(const polynomial& p, int var) {
    int64_t d = std::max<int64_t>(p.degree_in(var), 0);
    std::vector<polynomial> out((size_t)d + 1, polynomial::zero(p.ring()));
    for (const auto& t : p.terms()) {
        monomial m = t.m;
        int32_t e = m[var];
        m.set(var, 0);
        out[e] += polynomial::from_terms(p.ring(), {{m, t.c}});
    }
    return out;
}

polynomial content_in(const polynomial& p, int var) {
    polynomial g = polynomial::zero(p.ring());
    for (auto& c : coeffs_in(p, var)) g = poly_gcd(g, c);
    return g;
}

// pseudo-remainder of a by b w.r.t. var (deg_var a >= deg_var b >= 0)
polynomial prem(polynomial a, const polynomial& b, int var, const ring_ptr& ring) {
    int64_t db = b.degree_in(var);
    auto bc = coeffs_in(b, var);
    polynomial lb = bc[db];
    while (!a.is_zero() && a.degree_in(var) >= db) {
        int64_t da = a.degree_in(var);
        auto ac = coeffs_in(a, var);
        polynomial la = ac[da];
        monomial shift(ring->arity());
        shift.set(var, (int32_t)(da - db));
        a = a * lb - b.times_monomial(shift, rational(1)) * la;
    }
    return a;
}

} // namespace

polynomial poly_gcd(const polynomial& a, const polynomial& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.primitive_part().second;
    if (b.is_zero()) return a.primitive_part().second;
    int v = pick_main_var(a, b);
    if (v < 0) return polynomial::constant(a.ring(), rational(1));
    polynomial ca = content_in(a, v), cb = content_in(b, v);
    polynomial pa = *a.divided_by(ca), pb = *b.divided_by(cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        polynomial r = prem(pa, pb, v, a.ring());
        pa = std::move(pb);
        if (r.is_zero()) { pb = r; break; }
        pb = *r.divided_by(content_in(r, v)); // primitive part w.r.t. the main variable
        pb = pb.primitive_part().second;
    }
    polynomial inner = pa.primitive_part().second;
    // content gcd lives in fewer variables
    polynomial cg = poly_gcd(ca, cb);
    return (cg * inner).primitive_part().second;
}

} // namespace freediv
