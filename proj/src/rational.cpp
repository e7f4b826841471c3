#include "freediv/rational.hpp"

namespace freediv {

rational::rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (sgn(den) == 0) throw std::domain_error("rational: zero denominator");
    v_.canonicalize();
}

rational& rational::operator/=(const rational& o) {
    if (o.is_zero()) throw std::domain_error("rational: division by zero");
    v_ /= o.v_;
    return *this;
}

rational rational::inverse() const {
    if (is_zero()) throw std::domain_error("rational: inverse of zero");
    return rational(mpq_class(1) / v_);
}

rational rational::from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("rational: bad literal '" + s + "'");
    q.canonicalize();
    return rational(q);
}

std::string rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

size_t rational::hash() const {
    // fold the limbs of num and den through FNV-1a
    auto fold = [](size_t h, const mpz_class& z) {
        size_t g = z.get_si();
        h ^= g + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    };
    size_t h = 1469598103934665603ULL;
    h = fold(h, v_.get_num());
    h = fold(h, v_.get_den());
    return h;
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace freediv
