#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace freediv {

// Arbitrary-precision rational, always canonical: gcd(|num|,den)=1, den>0,
// zero stored as 0/1. Backed by GMP.
class rational {
public:
    rational() : v_(0) {}
    rational(long n) : v_(n) {}
    rational(const mpz_class& n) : v_(n) {}
    rational(const mpz_class& num, const mpz_class& den);
    explicit rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static rational from_string(const std::string& s);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    rational operator-() const { return rational(mpq_class(-v_)); }
    rational& operator+=(const rational& o) { v_ += o.v_; return *this; }
    rational& operator-=(const rational& o) { v_ -= o.v_; return *this; }
    rational& operator*=(const rational& o) { v_ *= o.v_; return *this; }
    rational& operator/=(const rational& o);

    friend rational operator+(rational a, const rational& b) { return a += b; }
    friend rational operator-(rational a, const rational& b) { return a -= b; }
    friend rational operator*(rational a, const rational& b) { return a *= b; }
    friend rational operator/(rational a, const rational& b) { return a /= b; }
    friend bool operator==(const rational& a, const rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const rational& a, const rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const rational& a, const rational& b) { return a.v_ < b.v_; }

    rational inverse() const;

    // "3", "-2/5"
    std::string str() const;

    size_t hash() const;

private:
    mpq_class v_;
};

mpz_class gcd(const mpz_class& a, const mpz_class& b);
mpz_class lcm(const mpz_class& a, const mpz_class& b);

} // namespace freediv
