#include "germlab/integrate.hpp"

#include <cstdlib>
#include <string>

namespace germlab {

LaurentSeries MultiPoly::eval(const std::vector<LaurentSeries>& vars) const {
    if (terms.empty()) throw PreconditionError("multipoly: no terms");
    int p = terms[0].coeff.prime();
    LaurentSeries acc = LaurentSeries::zero(p);
    for (const auto& t : terms) {
        LaurentSeries m = t.coeff;
        for (size_t i = 0; i < t.exps.size(); ++i)
            for (int e = 0; e < t.exps[i]; ++e) m = m * vars[i];
        acc = acc + m;
    }
    return acc;
}

MultiPoly MultiPoly::monomial_minus_one(int p, const std::vector<int>& exps) {
    MultiPoly poly;
    poly.terms.push_back({LaurentSeries::from_int(p, 1, LaurentSeries::kExactPrecision), exps});
    poly.terms.push_back(
        {LaurentSeries::from_int(p, -1, LaurentSeries::kExactPrecision),
         std::vector<int>(exps.size(), 0)});
    return poly;
}

long long enumeration_budget() {
    if (const char* env = std::getenv("GERMLAB_BUDGET")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return kDefaultBudget;
}

long long DomainSpec::tuple_count(int p) const {
    long long total = 1;
    for (const auto& v : vars) {
        int free_digits = reduction_modulus - v.modulus_exp;
        if (free_digits < 0)
            throw PreconditionError("integrate: variable modulus exceeds reduction modulus");
        for (int i = 0; i < free_digits; ++i) {
            if (total > (1LL << 62) / p) throw BudgetError("integrate: tuple count overflow");
            total *= p;
        }
    }
    return total;
}

ExactValue integrate(int p, const DomainSpec& d, const Integrand& f, long long budget) {
    if (d.reduction_modulus >= LaurentSeries::kExactPrecision)
        throw PreconditionError("integrate: reduction modulus must be finite");
    if (budget < 0) budget = enumeration_budget();
    long long tuples = d.tuple_count(p);
    if (tuples > budget)
        throw BudgetError("integrate: " + std::to_string(tuples) + " tuples exceed budget " +
                          std::to_string(budget));

    const int M = d.reduction_modulus;
    const size_t n = d.vars.size();

    // digit odometer: per variable, M - e free coefficients at t^e .. t^{M-1}
    std::vector<std::vector<int>> digits(n);
    std::vector<LaurentSeries> tuple;
    tuple.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        digits[i].assign(static_cast<size_t>(M - d.vars[i].modulus_exp), 0);
        if (d.vars[i].center.precision() < M)
            throw PrecisionError("integrate: variable center not known mod t^M");
        tuple.push_back(d.vars[i].center.truncate(M));
    }

    auto rebuild = [&](size_t i) {
        const auto& v = d.vars[i];
        LaurentSeries x = v.center.truncate(M);
        if (!digits[i].empty())
            x = x + LaurentSeries::from_coeffs(p, v.modulus_exp, digits[i], M);
        tuple[i] = x;
    };

    ExactValue sum(p);
    long long visited = 0;
    while (true) {
        ++visited;
        bool ok = true;
        for (const auto& c : d.constraints) {
            LaurentSeries val = c.poly.eval(tuple);
            if (!val.divisible_by(c.modulus_exp)) {
                ok = false;
                break;
            }
        }
        if (ok) sum += f(tuple);

        // advance odometer
        size_t i = 0;
        for (; i < n; ++i) {
            bool carried = true;
            for (size_t k = 0; k < digits[i].size(); ++k) {
                if (++digits[i][k] < p) {
                    carried = false;
                    break;
                }
                digits[i][k] = 0;
            }
            rebuild(i);
            if (!carried) break;
        }
        if (i == n) break;
    }
    (void)visited;

    Rational vol = Rational::int_pow(p, -M * static_cast<int>(n));
    return sum * vol;
}

} // namespace germlab
