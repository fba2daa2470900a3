#pragma once

#include <vector>

#include "germlab/errors.hpp"

namespace germlab {

inline bool is_odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

inline void require_odd_prime(int p) {
    if (!is_odd_prime(p)) throw PreconditionError("p must be an odd prime");
}

/// Element of the residue field F_p, p an odd prime. Value kept in [0, p).
struct ResidueElem {
    int value = 0;
    int p = 0;

    ResidueElem() = default;
    ResidueElem(long long v, int prime) : p(prime) {
        require_odd_prime(prime);
        long long m = v % prime;
        if (m < 0) m += prime;
        value = static_cast<int>(m);
    }

    bool is_zero() const { return value == 0; }

    ResidueElem operator+(ResidueElem o) const { check(o); return ResidueElem(value + o.value, p); }
    ResidueElem operator-(ResidueElem o) const { check(o); return ResidueElem(value - o.value, p); }
    ResidueElem operator*(ResidueElem o) const {
        check(o);
        return ResidueElem(static_cast<long long>(value) * o.value, p);
    }
    ResidueElem operator-() const { return ResidueElem(-value, p); }

    ResidueElem inverse() const {
        if (value == 0) throw PreconditionError("residue: inverse of zero");
        return pow(p - 2);
    }
    ResidueElem operator/(ResidueElem o) const { return *this * o.inverse(); }

    ResidueElem pow(long long e) const {
        ResidueElem r(1, p), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool operator==(ResidueElem o) const { return p == o.p && value == o.value; }
    bool operator!=(ResidueElem o) const { return !(*this == o); }

private:
    void check(ResidueElem o) const {
        if (p != o.p) throw PreconditionError("residue: mixed moduli");
    }
};

/// Legendre symbol: +1 for a nonzero square mod p, -1 for a non-square, 0 for 0.
inline int legendre(ResidueElem c) {
    if (c.value == 0) return 0;
    ResidueElem e = c.pow((c.p - 1) / 2);
    return e.value == 1 ? 1 : -1;
}

inline int legendre(long long v, int p) { return legendre(ResidueElem(v, p)); }

/// Some square root of c mod p, or throws if c is a non-residue.
inline ResidueElem sqrt_mod(ResidueElem c) {
    if (c.value == 0) return c;
    for (int x = 1; x < c.p; ++x)
        if (static_cast<long long>(x) * x % c.p == c.value) return ResidueElem(x, c.p);
    throw PreconditionError("residue: not a quadratic residue");
}

/// Smallest quadratic non-residue mod p.
inline ResidueElem first_nonresidue(int p) {
    for (int x = 2; x < p; ++x) {
        ResidueElem e(x, p);
        if (legendre(e) == -1) return e;
    }
    throw PreconditionError("residue: no non-residue found (p not prime?)");
}

} // namespace germlab
