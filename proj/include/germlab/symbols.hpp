#pragma once

#include "germlab/exact_value.hpp"
#include "germlab/laurent.hpp"

namespace germlab {

/// Tame Hilbert symbol (a, b) in {-1, +1} for p odd:
///   (a,b) = legendre(-1)^{v(a)v(b)} * legendre(u_a)^{v(b)} * legendre(u_b)^{v(a)}
/// with u_x the residue of the unit part of x. Bilinear, symmetric, trivial
/// on squares, and (x, -x) = 1.
int hilbert(const LaurentSeries& a, const LaurentSeries& b);

/// Weil constant gamma(a, Psi), computed from its defining Fourier identity
/// with the self-dual test function Phi = char(O):
///   gamma(a,Psi) = |a|^{1/2} * [int_O Psi(a x^2 / 2) dx] / [int_O Psi(-a^{-1} x^2 / 2) dx].
/// Depends only on the square class of a; gamma * conj(gamma) = 1.
ExactValue weil_gamma(const LaurentSeries& a);

/// gamma(a)^k for k possibly negative, using conj for the inverse
/// (gamma^{-1} = conj(gamma) since gamma * conj(gamma) = 1).
ExactValue weil_gamma_power(const LaurentSeries& a, int k);

/// Whether gamma(a)gamma(b) = gamma(ab)gamma(1)(a,b) holds exactly.
bool gamma_law_check(const LaurentSeries& a, const LaurentSeries& b);

} // namespace germlab
