#pragma once

#include <string>
#include <vector>

#include "germlab/errors.hpp"
#include "germlab/rational.hpp"
#include "germlab/residue.hpp"

namespace germlab {

/// Element of the cyclotomic field Q(zeta_{4p}) in canonical reduced
/// coordinates over the power basis zeta^0, ..., zeta^{2(p-1)-1}, where
/// zeta is the primitive 4p-th root of unity with the fixed embedding
/// zeta = e^{2*pi*i/(4p)}.
///
/// Every character value, Gauss sum, Weil constant and orbital integral in
/// this project lives here; equality is coefficient-wise equality of the
/// reduced form, so identity checks are exact.
class ExactValue {
public:
    explicit ExactValue(int p); // zero
    static ExactValue zero(int p) { return ExactValue(p); }
    static ExactValue one(int p) { return from_rational(p, Rational(1)); }
    static ExactValue from_rational(int p, const Rational& r);
    /// zeta^e for any integer exponent (reduced mod 4p, then canonically).
    static ExactValue zeta_power(int p, long long e);

    int prime() const { return p_; }
    int dim() const { return static_cast<int>(c_.size()); }
    const Rational& coeff(int k) const { return c_[static_cast<size_t>(k)]; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const; // requires is_rational()

    ExactValue operator+(const ExactValue& o) const;
    ExactValue operator-(const ExactValue& o) const;
    ExactValue operator-() const;
    ExactValue operator*(const ExactValue& o) const;
    ExactValue operator*(const Rational& r) const;
    ExactValue& operator+=(const ExactValue& o);

    bool operator==(const ExactValue& o) const;
    bool operator!=(const ExactValue& o) const { return !(*this == o); }

    /// Galois map zeta -> zeta^j, gcd(j, 4p) = 1.
    ExactValue galois(int j) const;
    /// Complex conjugation zeta -> zeta^{-1}.
    ExactValue conj() const { return galois(4 * p_ - 1); }

    /// Multiplicative inverse. Cheap when x * conj(x) is rational (all the
    /// Gauss-type values here); falls back to exact linear algebra.
    ExactValue inverse() const;
    ExactValue operator/(const ExactValue& o) const { return *this * o.inverse(); }

    ExactValue pow(int e) const;

    /// Numeric embedding under zeta = e^{2*pi*i/(4p)}; for test-side sign
    /// pinning only, never used in any exact computation.
    void embed(long double& re, long double& im) const;

    /// Canonical JSON: {"p":7,"basis":"zeta_28_power","coeffs":["1/7","0",...]}
    std::string to_json() const;
    /// Human form: sum of c_k*zeta^k terms.
    std::string to_pretty() const;

private:
    int p_;
    std::vector<Rational> c_;
};

/// psi(c) = zeta_p^c with zeta_p = zeta^4, the fixed nontrivial additive
/// character of F_p.
ExactValue psi_char(ResidueElem c);

/// Quadratic Gauss sum g = sum over c in F_p* of legendre(c) * psi(c).
/// Satisfies g^2 = legendre(-1) * p exactly.
ExactValue gauss_sum(int p);

/// The element of Q(zeta_{4p}) equal to +sqrt(p) under the fixed embedding:
/// g when p = 1 mod 4, -i*g when p = 3 mod 4 (i = zeta^p).
ExactValue sqrt_q(int p);

/// q^{k/2} for integer k (possibly negative), assembled from sqrt_q.
ExactValue q_half_power(int p, int k);

} // namespace germlab
