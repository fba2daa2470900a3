#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace germlab {

using Int128 = __int128;

inline Int128 checked_add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("rational: 128-bit add overflow");
    return r;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("rational: 128-bit mul overflow");
    return r;
}

inline Int128 int128_gcd(Int128 a, Int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::string int128_to_string(Int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // -2^127 cannot be negated; it never appears as a reduced coefficient here.
    if (neg) v = -v;
    char buf[48];
    int i = 48;
    while (v > 0) {
        buf[--i] = static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    }
    if (neg) buf[--i] = '-';
    return std::string(buf + i, buf + 48);
}

/// Exact rational number on checked 128-bit integers.
///
/// Always stored reduced with positive denominator. Every arithmetic path
/// reduces eagerly; an overflow throws rather than wrapping, so equality of
/// two Rationals is always a true statement about the represented numbers.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(Int128 n, Int128 d) : num_(n), den_(d) { normalize(); }

    static Rational int_pow(long long base, int exp) {
        // base^exp with exp possibly negative
        Rational r(1);
        Rational b = exp >= 0 ? Rational(base) : Rational(1, base);
        int e = exp >= 0 ? exp : -exp;
        for (int i = 0; i < e; ++i) r = r * b;
        return r;
    }

    Int128 num() const { return num_; }
    Int128 den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_); }

    Rational operator+(const Rational& o) const {
        Int128 g = int128_gcd(den_, o.den_);
        Int128 dl = den_ / g;
        Int128 dr = o.den_ / g;
        Int128 n = checked_add(checked_mul(num_, dr), checked_mul(o.num_, dl));
        Int128 d = checked_mul(den_, dr);
        return Rational(n, d);
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }

    Rational operator*(const Rational& o) const {
        // cross-reduce before multiplying to keep magnitudes down
        Int128 g1 = int128_gcd(num_ < 0 ? -num_ : num_, o.den_);
        Int128 g2 = int128_gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
        Int128 n = checked_mul(g1 ? num_ / g1 : num_, g2 ? o.num_ / g2 : o.num_);
        Int128 d = checked_mul(g2 ? den_ / g2 : den_, g1 ? o.den_ / g1 : o.den_);
        return Rational(n, d);
    }

    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational: division by zero");
        return *this * Rational(o.den_, o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    /// "num/den", or just "num" when the value is an integer.
    std::string to_string() const {
        if (den_ == 1) return int128_to_string(num_);
        return int128_to_string(num_) + "/" + int128_to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        Int128 g = int128_gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    Int128 num_;
    Int128 den_;
};

} // namespace germlab
