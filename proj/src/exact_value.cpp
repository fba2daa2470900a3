#include "germlab/exact_value.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace germlab {

namespace {

// Reduction table for one prime: row e (0 <= e < 4p) holds the coordinates
// of zeta^e over the power basis, all entries in {-1, 0, +1}.
struct CycloTables {
    int p;
    int dim;                              // 2(p-1)
    std::vector<std::vector<int>> zpow;   // 4p rows of length dim
};

// zeta^{2f} with 0 <= f < p reduces via zeta^{2(p-1)} = sum (-1)^{k+1} zeta^{2k},
// k = 0..p-2 (from Phi_{4p}(x) = Phi_p(-x^2)); zeta^{2p} = -1 folds larger
// exponents. Odd exponents are the same pattern shifted by one slot.
const CycloTables& tables_for(int p) {
    static std::map<int, CycloTables> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    require_odd_prime(p);
    CycloTables t;
    t.p = p;
    t.dim = 2 * (p - 1);
    t.zpow.assign(static_cast<size_t>(4 * p), std::vector<int>(static_cast<size_t>(t.dim), 0));
    for (int e = 0; e < 4 * p; ++e) {
        int f = e / 2;
        int odd = e % 2;
        int sign = 1;
        if (f >= p) {
            f -= p;
            sign = -1;
        }
        auto& row = t.zpow[static_cast<size_t>(e)];
        if (f == p - 1) {
            // zeta^{2(p-1)} = sum_{k=0}^{p-2} (-1)^{k+1} zeta^{2k}
            for (int k = 0; k <= p - 2; ++k)
                row[static_cast<size_t>(2 * k + odd)] = ((k % 2 == 0) ? -1 : 1) * sign;
        } else {
            row[static_cast<size_t>(2 * f + odd)] = sign;
        }
    }
    return cache.emplace(p, std::move(t)).first->second;
}

} // namespace

ExactValue::ExactValue(int p) : p_(p) {
    c_.assign(static_cast<size_t>(tables_for(p).dim), Rational(0));
}

ExactValue ExactValue::from_rational(int p, const Rational& r) {
    ExactValue v(p);
    v.c_[0] = r;
    return v;
}

ExactValue ExactValue::zeta_power(int p, long long e) {
    const auto& t = tables_for(p);
    long long m = e % (4 * p);
    if (m < 0) m += 4 * p;
    ExactValue v(p);
    const auto& row = t.zpow[static_cast<size_t>(m)];
    for (int k = 0; k < t.dim; ++k)
        if (row[static_cast<size_t>(k)] != 0) v.c_[static_cast<size_t>(k)] = Rational(row[static_cast<size_t>(k)]);
    return v;
}

bool ExactValue::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool ExactValue::is_rational() const {
    for (size_t k = 1; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return false;
    return true;
}

Rational ExactValue::rational_value() const {
    if (!is_rational()) throw PreconditionError("exact value is not rational");
    return c_[0];
}

ExactValue ExactValue::operator+(const ExactValue& o) const {
    if (p_ != o.p_) throw PreconditionError("exact value: mixed primes");
    ExactValue r(p_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
}

ExactValue& ExactValue::operator+=(const ExactValue& o) { return *this = *this + o; }

ExactValue ExactValue::operator-() const {
    ExactValue r(p_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = -c_[k];
    return r;
}

ExactValue ExactValue::operator-(const ExactValue& o) const { return *this + (-o); }

ExactValue ExactValue::operator*(const Rational& s) const {
    ExactValue r(p_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] * s;
    return r;
}

ExactValue ExactValue::operator*(const ExactValue& o) const {
    if (p_ != o.p_) throw PreconditionError("exact value: mixed primes");
    const auto& t = tables_for(p_);
    ExactValue r(p_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            Rational prod = c_[i] * o.c_[j];
            size_t e = i + j;
            if (e < c_.size()) {
                r.c_[e] += prod;
            } else {
                const auto& row = t.zpow[e];
                for (size_t k = 0; k < c_.size(); ++k) {
                    int w = row[k];
                    if (w == 1)
                        r.c_[k] += prod;
                    else if (w == -1)
                        r.c_[k] -= prod;
                }
            }
        }
    }
    return r;
}

bool ExactValue::operator==(const ExactValue& o) const {
    return p_ == o.p_ && c_ == o.c_;
}

ExactValue ExactValue::galois(int j) const {
    int n = 4 * p_;
    int jm = ((j % n) + n) % n;
    if (std::gcd(jm, n) != 1) throw PreconditionError("galois: exponent not coprime to 4p");
    ExactValue r(p_);
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        long long e = static_cast<long long>(jm) * static_cast<long long>(k);
        r += zeta_power(p_, e) * c_[k];
    }
    return r;
}

ExactValue ExactValue::inverse() const {
    if (is_zero()) throw PreconditionError("exact value: inverse of zero");
    ExactValue cj = conj();
    ExactValue norm2 = *this * cj;
    if (norm2.is_rational() && !norm2.rational_value().is_zero())
        return cj * (Rational(1) / norm2.rational_value());

    // general route: full Galois norm N(x) in Q, inverse = (prod of other
    // conjugates) / N(x)
    ExactValue prod = ExactValue::one(p_);
    for (int j = 2; j < 4 * p_; ++j) {
        if (std::gcd(j, 4 * p_) != 1) continue;
        prod = prod * galois(j);
    }
    ExactValue norm = *this * prod;
    if (!norm.is_rational() || norm.rational_value().is_zero())
        throw PreconditionError("exact value: inverse failed (zero norm)");
    return prod * (Rational(1) / norm.rational_value());
}

ExactValue ExactValue::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    ExactValue r = ExactValue::one(p_);
    ExactValue b = *this;
    int k = e;
    while (k > 0) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

void ExactValue::embed(long double& re, long double& im) const {
    re = 0;
    im = 0;
    const long double theta = 2.0L * 3.14159265358979323846264338327950288L / (4.0L * p_);
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        long double v = static_cast<long double>(c_[k].num()) / static_cast<long double>(c_[k].den());
        re += v * std::cos(theta * static_cast<long double>(k));
        im += v * std::sin(theta * static_cast<long double>(k));
    }
}

std::string ExactValue::to_json() const {
    std::ostringstream os;
    os << "{\"p\":" << p_ << ",\"basis\":\"zeta_" << 4 * p_ << "_power\",\"coeffs\":[";
    for (size_t k = 0; k < c_.size(); ++k) {
        if (k) os << ",";
        os << "\"" << c_[k].to_string() << "\"";
    }
    os << "]}";
    return os.str();
}

std::string ExactValue::to_pretty() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        os << c_[k].to_string();
        if (k > 0) os << "*zeta^" << k;
        first = false;
    }
    return os.str();
}

ExactValue psi_char(ResidueElem c) {
    return ExactValue::zeta_power(c.p, 4LL * c.value);
}

ExactValue gauss_sum(int p) {
    ExactValue g(p);
    for (int c = 1; c < p; ++c) {
        ExactValue term = psi_char(ResidueElem(c, p));
        g += legendre(c, p) == 1 ? term : -term;
    }
    return g;
}

ExactValue sqrt_q(int p) {
    ExactValue g = gauss_sum(p);
    if (p % 4 == 1) return g;
    // -i * g with i = zeta^p; that is zeta^{3p} * g
    return ExactValue::zeta_power(p, 3LL * p) * g;
}

ExactValue q_half_power(int p, int k) {
    // q^{k/2} = sqrt_q^k; for even k this is the plain rational power
    if (k % 2 == 0) return ExactValue::from_rational(p, Rational::int_pow(p, k / 2));
    ExactValue r = ExactValue::from_rational(p, Rational::int_pow(p, (k - (k > 0 ? 1 : -1)) / 2));
    ExactValue s = sqrt_q(p);
    if (k > 0) return r * s;
    // sqrt_q^{-1} = sqrt_q / p
    return r * s * Rational(1, p);
}

} // namespace germlab
