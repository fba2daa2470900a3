#include "germlab/symbols.hpp"

#include <cstdlib>

#include "germlab/characters.hpp"
#include "germlab/integrate.hpp"

namespace germlab {

int hilbert(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.is_zero() || b.is_zero()) throw PreconditionError("hilbert: zero argument");
    int p = a.prime();
    int va = a.valuation(), vb = b.valuation();
    int s = 1;
    if ((va & 1) && (vb & 1)) s *= legendre(-1, p);
    if (vb & 1) s *= legendre(a.leading());
    if (va & 1) s *= legendre(b.leading());
    return s;
}

namespace {

// int_O Psi(c x^2 / 2) dx as an exact finite sum; the integrand is constant
// on x mod t^max(0, -v(c)).
ExactValue quadratic_integral(const LaurentSeries& c) {
    int p = c.prime();
    LaurentSeries half = LaurentSeries::from_int(p, (p + 1) / 2, LaurentSeries::kExactPrecision);
    int M = c.is_zero() ? 0 : std::max(0, -c.valuation());
    DomainSpec d;
    d.reduction_modulus = M;
    d.vars.push_back({LaurentSeries::zero(p, LaurentSeries::kExactPrecision), 0});
    LaurentSeries hc = half * c;
    return integrate(p, d, [&](const std::vector<LaurentSeries>& x) {
        return Psi_char(hc * x[0] * x[0]);
    });
}

} // namespace

ExactValue weil_gamma(const LaurentSeries& a) {
    if (a.is_zero()) throw PreconditionError("weil_gamma: zero argument");
    int p = a.prime();
    ExactValue num = quadratic_integral(a);
    ExactValue den = quadratic_integral(-(a.inverse()));
    if (den.is_zero())
        throw PreconditionError("weil_gamma: degenerate test function (denominator integral 0)");
    return q_half_power(p, -a.valuation()) * num * den.inverse();
}

ExactValue weil_gamma_power(const LaurentSeries& a, int k) {
    ExactValue g = weil_gamma(a);
    if (k >= 0) return g.pow(k);
    return g.conj().pow(-k);
}

bool gamma_law_check(const LaurentSeries& a, const LaurentSeries& b) {
    int p = a.prime();
    ExactValue lhs = weil_gamma(a) * weil_gamma(b);
    ExactValue rhs = weil_gamma(a * b) * weil_gamma(LaurentSeries::from_int(p, 1));
    Rational sym(hilbert(a, b));
    return lhs == rhs * sym;
}

} // namespace germlab
