#include "germlab/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace germlab {

// Storage: coefficients from val_ up to the last nonzero one; everything
// between there and prec_ is implicitly zero. Exactly-known elements carry
// prec_ = kExactPrecision, so zero tails are never materialized.

LaurentSeries::LaurentSeries(int p, bool zero, int val, std::vector<int> coeffs, int prec)
    : p_(p), zero_(zero), val_(val), c_(std::move(coeffs)), prec_(prec) {
    normalize();
}

void LaurentSeries::normalize() {
    require_odd_prime(p_);
    if (zero_) {
        val_ = 0;
        c_.clear();
        return;
    }
    for (int& x : c_) {
        x %= p_;
        if (x < 0) x += p_;
    }
    // drop anything at or beyond the precision horizon
    if (val_ + static_cast<long long>(c_.size()) > prec_)
        c_.resize(static_cast<size_t>(std::max(0, prec_ - val_)));
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
        zero_ = true;
        val_ = 0;
        c_.clear();
        return;
    }
    val_ += static_cast<int>(lead);
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

LaurentSeries LaurentSeries::zero(int p, int prec) {
    return LaurentSeries(p, true, 0, {}, prec);
}

LaurentSeries LaurentSeries::from_int(int p, long long value, int prec) {
    long long m = value % p;
    if (m < 0) m += p;
    if (m == 0) return zero(p, kExactPrecision);
    return LaurentSeries(p, false, 0, {static_cast<int>(m)}, prec);
}

LaurentSeries LaurentSeries::monomial(int p, long long c, int k, int prec) {
    long long m = c % p;
    if (m < 0) m += p;
    if (m == 0) return zero(p, kExactPrecision);
    return LaurentSeries(p, false, k, {static_cast<int>(m)}, prec);
}

LaurentSeries LaurentSeries::from_coeffs(int p, int valuation, const std::vector<int>& coeffs,
                                         int prec) {
    return LaurentSeries(p, false, valuation, coeffs, prec);
}

int LaurentSeries::valuation() const {
    if (zero_) throw PreconditionError("laurent: valuation of zero");
    return val_;
}

ResidueElem LaurentSeries::coeff(int i) const {
    if (i >= prec_) throw PrecisionError("laurent: coefficient beyond precision");
    if (zero_ || i < val_ || i >= val_ + static_cast<int>(c_.size())) return ResidueElem(0, p_);
    return ResidueElem(c_[static_cast<size_t>(i - val_)], p_);
}

ResidueElem LaurentSeries::leading() const {
    if (zero_) throw PreconditionError("laurent: leading coefficient of zero");
    return ResidueElem(c_[0], p_);
}

LaurentSeries LaurentSeries::unit_part() const {
    if (zero_) throw PreconditionError("laurent: unit part of zero");
    return shift(-val_);
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    if (p_ != o.p_) throw PreconditionError("laurent: mixed primes");
    int prec = std::min(prec_, o.prec_);
    if (zero_ && o.zero_) return zero(p_, prec);
    if (zero_) return o.truncate(std::min(prec, o.prec_));
    if (o.zero_) return truncate(std::min(prec, prec_));
    int lo = std::min(val_, o.val_);
    int hi = std::max(val_ + static_cast<int>(c_.size()), o.val_ + static_cast<int>(o.c_.size()));
    hi = std::min(hi, prec);
    if (hi <= lo) return zero(p_, prec);
    std::vector<int> out(static_cast<size_t>(hi - lo), 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        int k = val_ + static_cast<int>(i);
        if (k < hi) out[static_cast<size_t>(k - lo)] += c_[i];
    }
    for (size_t i = 0; i < o.c_.size(); ++i) {
        int k = o.val_ + static_cast<int>(i);
        if (k < hi) out[static_cast<size_t>(k - lo)] += o.c_[i];
    }
    return LaurentSeries(p_, false, lo, std::move(out), prec);
}

LaurentSeries LaurentSeries::operator-() const {
    if (zero_) return *this;
    std::vector<int> out(c_);
    for (int& x : out) x = -x;
    return LaurentSeries(p_, false, val_, std::move(out), prec_);
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    if (p_ != o.p_) throw PreconditionError("laurent: mixed primes");
    long long vx = zero_ ? prec_ : val_;
    long long vy = o.zero_ ? o.prec_ : o.val_;
    long long prec = std::min<long long>(static_cast<long long>(prec_) + vy,
                                         static_cast<long long>(o.prec_) + vx);
    prec = std::min<long long>(prec, kExactPrecision);
    if (zero_ || o.zero_) return zero(p_, static_cast<int>(prec));
    int lo = val_ + o.val_;
    long long len = std::min<long long>(static_cast<long long>(c_.size()) + o.c_.size() - 1,
                                        prec - lo);
    if (len <= 0) return zero(p_, static_cast<int>(prec));
    std::vector<long long> acc(static_cast<size_t>(len), 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0 || static_cast<long long>(i) >= len) continue;
        size_t jmax = std::min(o.c_.size(), static_cast<size_t>(len - static_cast<long long>(i)));
        for (size_t j = 0; j < jmax; ++j)
            acc[i + j] += static_cast<long long>(c_[i]) * o.c_[j];
    }
    std::vector<int> out(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<int>(acc[i] % p_);
    return LaurentSeries(p_, false, lo, std::move(out), static_cast<int>(prec));
}

LaurentSeries LaurentSeries::inverse() const {
    if (zero_) throw PreconditionError("laurent: division by zero");
    if (c_.size() == 1) {
        // monomial: exact inverse, precision preserved in the exact case
        int inv = ResidueElem(c_[0], p_).inverse().value;
        long long prec = std::min<long long>(static_cast<long long>(prec_) - 2LL * val_,
                                             kExactPrecision);
        return LaurentSeries(p_, false, -val_, {inv}, static_cast<int>(prec));
    }
    // unit-part power series inversion; an exactly-known element is
    // materialized over a generous finite window first
    int n = prec_ >= kExactPrecision ? kDefaultPrecision + std::abs(val_)
                                     : prec_ - val_;
    std::vector<int> u(static_cast<size_t>(n), 0);
    for (size_t i = 0; i < c_.size() && i < u.size(); ++i) u[i] = c_[i];
    std::vector<int> inv(static_cast<size_t>(n), 0);
    ResidueElem lead_inv = ResidueElem(u[0], p_).inverse();
    inv[0] = lead_inv.value;
    for (int k = 1; k < n; ++k) {
        long long s = 0;
        for (int j = 1; j <= k; ++j)
            s += static_cast<long long>(u[static_cast<size_t>(j)]) * inv[static_cast<size_t>(k - j)];
        s %= p_;
        inv[static_cast<size_t>(k)] =
            static_cast<int>((static_cast<long long>(lead_inv.value) * ((p_ - s) % p_)) % p_);
    }
    return LaurentSeries(p_, false, -val_, std::move(inv), n - val_);
}

LaurentSeries LaurentSeries::operator/(const LaurentSeries& o) const {
    return *this * o.inverse();
}

LaurentSeries LaurentSeries::shift(int k) const {
    if (zero_) return zero(p_, std::min(prec_ + k, static_cast<int>(kExactPrecision)));
    return LaurentSeries(p_, false, val_ + k, c_,
                         static_cast<int>(std::min<long long>(static_cast<long long>(prec_) + k,
                                                              kExactPrecision)));
}

LaurentSeries LaurentSeries::truncate(int prec) const {
    if (prec > prec_) throw PrecisionError("laurent: cannot raise precision");
    if (zero_) return zero(p_, prec);
    if (val_ >= prec) return zero(p_, prec);
    std::vector<int> out(c_.begin(),
                         c_.begin() + std::min<long>(static_cast<long>(c_.size()),
                                                     static_cast<long>(prec - val_)));
    return LaurentSeries(p_, false, val_, std::move(out), prec);
}

LaurentSeries LaurentSeries::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    LaurentSeries r = from_int(p_, 1, kExactPrecision);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

bool LaurentSeries::congruent(const LaurentSeries& o) const {
    if (p_ != o.p_) throw PreconditionError("laurent: mixed primes");
    return (*this - o).is_zero();
}

bool LaurentSeries::divisible_by(int s) const {
    if (zero_) {
        if (prec_ >= s) return true;
        throw PrecisionError("laurent: congruence unreadable at available precision");
    }
    return val_ >= s;
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
    return p_ == o.p_ && zero_ == o.zero_ && val_ == o.val_ && prec_ == o.prec_ && c_ == o.c_;
}

std::string LaurentSeries::encode() const {
    if (zero_) return "0";
    std::ostringstream os;
    os << "v=" << val_ << ";c=";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << ";N=" << prec_;
    return os.str();
}

LaurentSeries LaurentSeries::decode(int p, const std::string& text) {
    if (text == "0") return zero(p);
    int val = 0, prec = 0;
    std::vector<int> coeffs;
    std::istringstream is(text);
    std::string field;
    bool have_v = false, have_c = false, have_n = false;
    while (std::getline(is, field, ';')) {
        if (field.rfind("v=", 0) == 0) {
            val = std::stoi(field.substr(2));
            have_v = true;
        } else if (field.rfind("c=", 0) == 0) {
            std::istringstream cs(field.substr(2));
            std::string tok;
            while (std::getline(cs, tok, ',')) coeffs.push_back(std::stoi(tok));
            have_c = true;
        } else if (field.rfind("N=", 0) == 0) {
            prec = std::stoi(field.substr(2));
            have_n = true;
        } else {
            throw PreconditionError("laurent: bad field in encoding: " + field);
        }
    }
    if (!have_v || !have_c || !have_n)
        throw PreconditionError("laurent: encoding needs v=, c= and N= fields");
    for (int c : coeffs)
        if (c < 0 || c >= p) throw PreconditionError("laurent: coefficient out of [0,p)");
    return from_coeffs(p, val, coeffs, prec);
}

std::string LaurentSeries::to_string() const {
    if (zero_) return "0 (mod t^" + std::to_string(prec_) + ")";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        int e = val_ + static_cast<int>(i);
        os << c_[i];
        if (e != 0) os << "*t^" << e;
        first = false;
    }
    if (prec_ < kExactPrecision) os << " + O(t^" << prec_ << ")";
    return os.str();
}

LaurentSeries lf_arith(const LaurentSeries& x, const LaurentSeries& y, LfOp op) {
    switch (op) {
        case LfOp::add: return x + y;
        case LfOp::sub: return x - y;
        case LfOp::mul: return x * y;
        case LfOp::div: return x / y;
    }
    throw PreconditionError("laurent: unknown op");
}

LaurentSeries lf_sqrt(const LaurentSeries& x) {
    if (x.is_zero()) throw PreconditionError("sqrt: zero input");
    int p = x.prime();
    int v = x.valuation();
    if (v % 2 != 0) throw PreconditionError("sqrt: odd valuation");
    LaurentSeries u = x.unit_part();
    if (u.precision() > LaurentSeries::kDefaultWork) u = u.truncate(LaurentSeries::kDefaultWork);
    ResidueElem lead = u.leading();
    if (legendre(lead) != 1) throw PreconditionError("sqrt: leading coefficient is a non-residue");
    ResidueElem c0 = sqrt_mod(lead);
    if (c0.value > (p - 1) / 2) c0 = -c0; // deterministic branch: lift in [1, p/2]

    // Hensel: y_{k+1} = (y_k + u/y_k) / 2, doubling correct digits each step
    int n = u.precision();
    LaurentSeries y = LaurentSeries::from_int(p, c0.value, n);
    LaurentSeries half = LaurentSeries::from_int(p, (p + 1) / 2, LaurentSeries::kExactPrecision);
    int correct = 1;
    while (correct < n) {
        y = ((y + u / y) * half).truncate(n);
        correct *= 2;
    }
    return y.truncate(n).shift(v / 2);
}

std::vector<LaurentSeries> roots_of_unity(int p, int r, int prec) {
    if (r < 1) throw PreconditionError("roots_of_unity: r must be >= 1");
    std::vector<LaurentSeries> out;
    for (int c = 1; c < p; ++c)
        if (ResidueElem(c, p).pow(r).value == 1)
            out.push_back(LaurentSeries::from_int(p, c, prec));
    return out;
}

std::vector<Composition> all_compositions(int r) {
    std::vector<Composition> out;
    std::vector<int> cur;
    // compositions correspond to subsets of the r-1 gaps
    for (int mask = 0; mask < (1 << (r - 1)); ++mask) {
        cur.clear();
        int run = 1;
        for (int i = 0; i < r - 1; ++i) {
            if (mask & (1 << i)) {
                cur.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        cur.push_back(run);
        out.emplace_back(cur);
    }
    return out;
}

} // namespace germlab
