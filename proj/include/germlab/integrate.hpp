#pragma once

#include <functional>
#include <vector>

#include "germlab/exact_value.hpp"
#include "germlab/laurent.hpp"

namespace germlab {

/// Polynomial in several variables with LaurentSeries coefficients.
/// Small by construction (the constraint polynomials of the integrals here
/// have a handful of terms).
struct MultiPoly {
    struct Term {
        LaurentSeries coeff;
        std::vector<int> exps; // one exponent per variable
    };
    std::vector<Term> terms;

    LaurentSeries eval(const std::vector<LaurentSeries>& vars) const;

    /// prod of all variables minus 1 (with per-variable exponents).
    static MultiPoly monomial_minus_one(int p, const std::vector<int>& exps);
};

/// Congruence constraint: poly(x) = 0 mod t^modulus_exp.
struct Constraint {
    MultiPoly poly;
    int modulus_exp;
};

/// One integration variable: ranges over center + t^modulus_exp * O.
struct VariableSpec {
    LaurentSeries center;
    int modulus_exp;
};

/// Integration domain: per-variable congruence classes, global polynomial
/// constraints, and the reduction modulus M such that the integrand and all
/// constraints only depend on the variables mod t^M.
struct DomainSpec {
    std::vector<VariableSpec> vars;
    std::vector<Constraint> constraints;
    int reduction_modulus;

    /// Number of representative tuples that integrate() would visit.
    long long tuple_count(int p) const;
};

using Integrand = std::function<ExactValue(const std::vector<LaurentSeries>&)>;

inline constexpr long long kDefaultBudget = 10'000'000;

/// Enumeration budget; GERMLAB_BUDGET in the environment overrides the default.
long long enumeration_budget();

/// Exact Haar integral as a finite sum, normalized by vol(O) = 1:
/// sum over representative tuples mod t^M satisfying all constraints of
/// f(tuple) * q^{-M * (number of variables)}.
ExactValue integrate(int p, const DomainSpec& d, const Integrand& f,
                     long long budget = -1);

} // namespace germlab
