#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hslie {

/// Exact rational scalar. Always in lowest terms with positive denominator;
/// serialized as "p/q" (or "p" when q = 1).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose, scalars read naturally
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    static Rational parse(const std::string& text) {
        if (text.empty()) throw std::invalid_argument("Rational: empty string");
        mpq_class q;
        if (q.set_str(text, 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        if (q.get_den() == 0)
            throw std::invalid_argument("Rational: zero denominator in '" + text + "'");
        q.canonicalize();
        return Rational(std::move(q));
    }

    std::string str() const {
        return v_.get_den() == 1 ? v_.get_num().get_str() : v_.get_str();
    }

    double to_double() const { return v_.get_d(); }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

inline Rational pow_int(Rational base, long e) {
    if (e < 0) return Rational(1) / pow_int(std::move(base), -e);
    Rational r(1);
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

/// Exact cube root, when the argument is a perfect rational cube.
inline std::optional<Rational> exact_cube_root(const Rational& a) {
    mpz_class n = a.num(), d = a.den();
    mpz_class rn, rd;
    bool neg = sgn(n) < 0;
    mpz_class an = neg ? mpz_class(-n) : n;
    if (mpz_root(rn.get_mpz_t(), an.get_mpz_t(), 3) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), d.get_mpz_t(), 3) == 0) return std::nullopt;
    if (neg) rn = -rn;
    return Rational(mpq_class(rn, rd));
}

}  // namespace hslie
