#pragma once

#include <vector>

#include "germlab/exact_value.hpp"
#include "germlab/laurent.hpp"
#include "germlab/matrix.hpp"

namespace germlab {

/// A relevant orbit: composition (r_1,...,r_m) of r plus one nonzero torus
/// value per part. Encodes the element w_M * t with w_M = blockdiag of
/// antidiagonal longest Weyl elements and t = blockdiag(a_i * Id).
struct OrbitLabel {
    Composition comp;
    std::vector<LaurentSeries> torus;

    OrbitLabel(Composition c, std::vector<LaurentSeries> t);
    int rank() const { return comp.rank(); }
};

/// scale * characteristic function of base * K_m, with K_m = Id + t^m gl_r(O),
/// optionally intersected with the symmetric matrices.
struct CongruenceFunction {
    MatrixLF base;
    int level;
    ExactValue scale;
    bool symmetric_only;

    CongruenceFunction(MatrixLF b, int lvl, ExactValue s, bool sym);

    /// Pointwise evaluation (congruences read to the available precision).
    ExactValue evaluate(const MatrixLF& x) const;
};

/// The matrix w_M * t of the label.
MatrixLF relevant_representative(const OrbitLabel& o);

/// w_{G_r} * u1^t * (w_M t) * v * u2 with u_i in N_w and v in V_w;
/// membership is checked and violations throw.
MatrixLF orbit_point(const OrbitLabel& o, const MatrixLF& u1, const MatrixLF& v,
                     const MatrixLF& u2);

/// I(w t, phi) = int phi(n^t (w t) n) theta^2(n) dn for ranks 2 and 3.
/// Free unipotent coordinates range over t^{-radius}O; the value is computed
/// at radius and radius+1 and must agree (StabilizationError otherwise).
ExactValue orbital_I(const OrbitLabel& o, const CongruenceFunction& phi, int radius,
                     long long budget = -1);

/// J(w t, f) = int f(w_{G_r} u1^t (w t) v u2) theta(u1 u2 v) du1 dv du2,
/// same rank/stabilization contract as orbital_I.
ExactValue orbital_J(const OrbitLabel& o, const CongruenceFunction& f, int radius,
                     long long budget = -1);

/// I(w_{G_r} z, c_1(r) char(w_{G_r} K_m cap S_r)) for z^r = 1.
/// Equals 1 for z = 1 and 0 otherwise.
ExactValue unit_sym_test(int r, const LaurentSeries& z, int m);

/// Rank-2 intermediate integral on the J side:
/// int f(w_{G_2} [[1,0],[x,1]] diag(g1,g2) [[1,y],[0,1]]) Psi((x+y)/2) dx dy.
ExactValue intermediate_J(const LaurentSeries& g1, const LaurentSeries& g2,
                          const CongruenceFunction& f, int radius, long long budget = -1);

/// Rank-2 intermediate integral on the I side:
/// int phi([[g1, g1 x],[x g1, x^2 g1 + g2]]) Psi(x) dx.
ExactValue intermediate_I(const LaurentSeries& g1, const LaurentSeries& g2,
                          const CongruenceFunction& phi, int radius, long long budget = -1);

/// Smallest radius <= max_radius whose doubled evaluation stabilizes, fed to
/// the callable; rethrows the last StabilizationError if none does.
int stabilized_radius_J(const OrbitLabel& o, const CongruenceFunction& f, int max_radius,
                        long long budget = -1);

struct DecompositionReport {
    ExactValue lhs;
    ExactValue rhs;
    bool equal;
};

/// J(diag(t1,t2), f) against the iterated intermediate integral; at rank
/// (1,1) the rank-1 orbital integrals are point evaluations, so the right
/// side is intermediate_J itself at (t1, t2). Radii are searched until the
/// doubling check passes on both sides.
DecompositionReport check_decomposition_J(const LaurentSeries& t1, const LaurentSeries& t2,
                                          const CongruenceFunction& f);

/// I-side analogue of check_decomposition_J.
DecompositionReport check_decomposition_I(const LaurentSeries& t1, const LaurentSeries& t2,
                                          const CongruenceFunction& phi);

struct ExpansionReport {
    ExactValue lhs;
    ExactValue rhs;
    bool equal;
};

/// Rank-2 germ expansion: J(w_M alpha beta, f) against
/// sum over z^2 = 1 of K(z alpha) J(w_{G_2} z^{-1} beta, f), with
/// alpha = diag(a, -a^{-1}), a = t^va, w_M = Id. Both sides exact and
/// independently computed; below the germ regime they may differ (the
/// omitted smooth term is visible there), which is reported, not thrown.
ExpansionReport germ_expansion_check(const LaurentSeries& beta_unit,
                                     const CongruenceFunction& f, int m, int va);

} // namespace germlab
