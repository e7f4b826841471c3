#include "freediv/parse.hpp"

#include <cctype>

namespace freediv {

namespace {

struct parser {
    const std::string& s;
    const ring_ptr& ring;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }

    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }

    mpz_class integer() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i == start) throw parse_error("expected integer", i);
        return mpz_class(s.substr(start, i - start));
    }

    polynomial number() {
        mpz_class num = integer();
        if (eat('/')) {
            mpz_class den = integer();
            if (sgn(den) == 0) throw parse_error("zero denominator", i);
            return polynomial::constant(ring, rational(num, den));
        }
        return polynomial::constant(ring, rational(num));
    }

    polynomial ident() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isalpha((unsigned char)s[i])) ++i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        std::string name = s.substr(start, i - start);
        if (ring->index_of(name) < 0)
            throw parse_error("unknown variable '" + name + "'", start);
        return polynomial::variable(ring, name);
    }

    polynomial atom() {
        char c = peek();
        if (c == '(') {
            eat('(');
            polynomial p = expr();
            if (!eat(')')) throw parse_error("expected ')'", i);
            return p;
        }
        if (std::isdigit((unsigned char)c)) return number();
        if (std::isalpha((unsigned char)c)) return ident();
        throw parse_error("expected number, variable or '('", i);
    }

    polynomial power() {
        polynomial base = atom();
        if (eat('^')) {
            skip_ws();
            if (i < s.size() && s[i] == '-') throw parse_error("exponent must be nonnegative", i);
            mpz_class e = integer();
            if (e > 64) throw parse_error("exponent too large", i);
            return base.pow((int)e.get_si());
        }
        return base;
    }

    polynomial product() {
        polynomial p = power();
        while (eat('*')) p = p * power();
        return p;
    }

    polynomial signed_product() {
        if (eat('-')) return -product();
        eat('+');
        return product();
    }

    polynomial expr() {
        polynomial p = signed_product();
        for (;;) {
            char c = peek();
            if (c == '+') { eat('+'); p += product(); }
            else if (c == '-') { eat('-'); p -= product(); }
            else break;
        }
        return p;
    }
};

} // namespace

polynomial parse_polynomial(const std::string& text, const ring_ptr& ring) {
    parser p{text, ring};
    polynomial r = p.expr();
    p.skip_ws();
    if (p.i != text.size()) throw parse_error("trailing input", p.i);
    return r;
}

} // namespace freediv
