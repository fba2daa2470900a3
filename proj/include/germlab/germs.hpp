#pragma once

#include <utility>
#include <vector>

#include "germlab/exact_value.hpp"
#include "germlab/laurent.hpp"
#include "germlab/residue.hpp"

namespace germlab {

/// Parameter bundle for the germ sums: prime p, rank r, congruence level m,
/// and the scaling element a with v(a) >= 1.
struct GermParams {
    int p;
    int r;
    int m;
    LaurentSeries a;

    GermParams(int p_, int r_, int m_, LaurentSeries a_);

    int va() const { return a.valuation(); }
    /// Reduction modulus of the J/I sums: everything depends on the
    /// variables mod t^(m + v(a)).
    int reduction_modulus() const { return m + va(); }
};

/// "|a| sufficiently small", made concrete: the closed forms are asserted
/// for v(a) >= 2m + 1. The boundary mapping test scans below this.
constexpr int germ_regime_threshold(int m) { return 2 * m + 1; }

enum class EvalMode { naive, dp };

/// J(a,r) = vol(t^m O)^{-1} * int Psi((x_1+...+x_r)/(2a)) over
/// x_i = 1 mod t^m O with prod x_i = 1 mod a t^m O.
/// naive enumerates q^{r v(a)} tuples (budget-guarded); dp evaluates the
/// same sum through the group (1 + t^m O)/(1 + t^{m+v(a)} O) in
/// log coordinates. The two must agree exactly.
ExactValue eval_J(const GermParams& gp, EvalMode mode, long long budget = -1);

/// I(a,r) for r = 2l: vol^{-1} int Psi((x_1+...+x_l)/a), x_i = 1 mod t^m,
/// prod x_i^2 = 1 mod a t^m O; for r = 2l+1 the extra variable x_{l+1}
/// enters the character with weight 1/(2a) and the constraint linearly.
ExactValue eval_I(const GermParams& gp, EvalMode mode, long long budget = -1);

/// Closed form J(a,r) = |a|^{(r+1)/2} Psi(r/2a) (r/2^{r-1}, a^{-1})
/// gamma(a^{-1},Psi)^{r-1}. Requires p odd and p not dividing r; equality
/// with eval_J holds in the germ regime.
ExactValue closed_J(const GermParams& gp);

/// Closed form I(a,r) = |a|^{floor((r-1)/2)/2 + 1} Psi(r/2a) (r, a^{-1})
/// (1/2, a^{-1})^{r-1} gamma(a^{-1},Psi)^{floor((r-1)/2)}. Requires p > 2r+1.
ExactValue closed_I(const GermParams& gp);

/// Right-hand side of the germ-ratio identity,
///   I(a,r) = |a|^{-floor(r/2)/2} gamma(a^{-1},Psi)^{-floor(r/2)} J(a,r),
/// so that callers compare the result against eval_I. Requires p > 2r+1.
ExactValue ratio_prop(const GermParams& gp);

/// J-side germ K along the (r-1,1) stratum: |a|^{-1 - r(r-1)/2} J(a,r).
ExactValue germ_K(const GermParams& gp);

/// I-side germ L along the (r-1,1) stratum, in its displayed form
/// |a|^{r - 2 - floor((r^2+2r-3)/4) + floor(r/2)/2} gamma(a^{-1},Psi)^{-floor(r/2)} J(a,r).
ExactValue germ_L(const GermParams& gp);

/// The same L through K: |a|^{floor(r^2/4) + floor(r/2)/2}
/// gamma(a^{-1},Psi)^{-floor(r/2)} K. Must agree with germ_L exactly.
ExactValue germ_L_via_K(const GermParams& gp);

/// floor(r^2/4): the variable count of the small-orbit integral.
long long count_c1_exponent(int r);
/// floor((r^2+2r-3)/4): the variable count of the (r-1,1)-orbit integral.
long long count_c2(int r);
/// Direct cardinality of {(i,j): i+j >= r+1, i<j} union {(i,i): 2i >= r+1}
/// minus one dependent entry.
long long count_c2_direct(int r);
/// Both floor-bracket identities used to simplify the germ exponents.
bool bracket_identities(int r);

using ResidueMatrix = std::vector<std::vector<ResidueElem>>;

/// The matrix of 3*sum X_i^2 + 4*sum_{i<j} X_i X_j over F_p.
ResidueMatrix quadratic_form_matrix(int ell, int p);

/// Unipotent T and diagonal D with T^t A T = D, D_ii = (2i+1)/(2i-1),
/// for A the matrix above. Requires p > 2*ell + 1.
std::pair<ResidueMatrix, std::vector<ResidueElem>> diagonalize_quadratic(int ell, int p);

/// Exact degree-2 Taylor coefficients of
/// delta(u) = 2l + sum 2u_i + prod (1 + 2u_i + u_i^2)^{-1}
/// at the origin, recovered from truncated univariate expansions along the
/// lines u = s e_i and u = s (e_i + e_j). Requires p > 2*ell + 1.
ResidueMatrix delta_quadratic_part(int ell, int p);

/// Constant term of the same expansion (equals r = 2*ell + 1).
ResidueElem delta_constant_term(int ell, int p);

} // namespace germlab
