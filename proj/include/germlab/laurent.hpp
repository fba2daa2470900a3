#pragma once

#include <string>
#include <vector>

#include "germlab/errors.hpp"
#include "germlab/residue.hpp"

namespace germlab {

/// Element of F_p((t)) known modulo t^precision (absolute precision).
///
/// Invariants: if not the distinguished zero, the coefficient at index
/// `valuation` is nonzero, valuation < precision, and exactly
/// (precision - valuation) coefficients are stored. The distinguished zero
/// means "0 mod t^precision"; an exactly-constructed zero carries a very
/// large precision.
class LaurentSeries {
public:
    static constexpr int kExactPrecision = 1 << 20;
    static constexpr int kDefaultPrecision = 48;
    /// Window used when an exactly-known element must be materialized over a
    /// finite range (power series inversion of a non-monomial).
    static constexpr int kDefaultWork = 80;

    /// The distinguished zero, known mod t^prec.
    static LaurentSeries zero(int p, int prec = kExactPrecision);

    /// Constant series from an integer, exact up to t^prec.
    static LaurentSeries from_int(int p, long long value, int prec = kDefaultPrecision);

    /// c * t^k.
    static LaurentSeries monomial(int p, long long c, int k, int prec = kDefaultPrecision);

    /// Series with given valuation and coefficient list (c[0] at t^valuation).
    static LaurentSeries from_coeffs(int p, int valuation, const std::vector<int>& coeffs,
                                     int prec);

    int prime() const { return p_; }
    bool is_zero() const { return zero_; }
    int precision() const { return prec_; }

    /// Valuation; only defined for nonzero elements.
    int valuation() const;

    /// Coefficient at t^i. Requires i < precision.
    ResidueElem coeff(int i) const;

    /// Residue of the unit part, i.e. the leading coefficient.
    ResidueElem leading() const;

    /// t^{-valuation} * this: the unit part.
    LaurentSeries unit_part() const;

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator/(const LaurentSeries& o) const;
    LaurentSeries operator-() const;

    LaurentSeries inverse() const;

    /// Multiply by t^k (exact shift).
    LaurentSeries shift(int k) const;

    /// Truncate to a (smaller) absolute precision.
    LaurentSeries truncate(int prec) const;

    LaurentSeries pow(int e) const;

    /// Agreement modulo t^min(precision, o.precision).
    bool congruent(const LaurentSeries& o) const;

    /// True when v(x) >= s (to the available precision; throws if undecidable).
    bool divisible_by(int s) const;

    /// Structural equality: same zero flag, valuation, coefficients, precision.
    bool operator==(const LaurentSeries& o) const;
    bool operator!=(const LaurentSeries& o) const { return !(*this == o); }

    /// CLI text form: `v=<int>;c=<c0,c1,...>;N=<int>`, or `0` for zero.
    std::string encode() const;
    static LaurentSeries decode(int p, const std::string& text);

    std::string to_string() const;

private:
    LaurentSeries(int p, bool zero, int val, std::vector<int> coeffs, int prec);
    void normalize();

    int p_ = 0;
    bool zero_ = true;
    int val_ = 0;
    std::vector<int> c_; // c_[i] = coefficient at t^(val_ + i), values in [0, p)
    int prec_ = 0;
};

enum class LfOp { add, sub, mul, div };

/// Four-function arithmetic dispatcher (the CLI-facing entry point).
LaurentSeries lf_arith(const LaurentSeries& x, const LaurentSeries& y, LfOp op);

/// Square root by Hensel lifting. Requires even valuation and a quadratic
/// residue leading coefficient; the branch is fixed so the leading
/// coefficient lifts into [1, p/2].
LaurentSeries lf_sqrt(const LaurentSeries& x);

/// All z in F with z^r = 1: the constant lifts of the d-th roots of unity
/// in F_p*, d = gcd(r, p-1).
std::vector<LaurentSeries> roots_of_unity(int p, int r, int prec = LaurentSeries::kDefaultPrecision);

/// Composition (r_1,...,r_m) of r: the type of a standard Levi subgroup.
struct Composition {
    std::vector<int> parts;

    explicit Composition(std::vector<int> pts) : parts(std::move(pts)) {
        if (parts.empty()) throw PreconditionError("composition: empty");
        for (int x : parts)
            if (x < 1) throw PreconditionError("composition: parts must be >= 1");
    }

    int rank() const {
        int s = 0;
        for (int x : parts) s += x;
        return s;
    }
    size_t size() const { return parts.size(); }

    bool operator==(const Composition& o) const { return parts == o.parts; }
};

/// All 2^(r-1) compositions of r, in lexicographic order.
std::vector<Composition> all_compositions(int r);

} // namespace germlab
