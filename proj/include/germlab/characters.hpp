#pragma once

#include "germlab/exact_value.hpp"
#include "germlab/laurent.hpp"
#include "germlab/matrix.hpp"

namespace germlab {

/// Additive character of F of conductor 0: Psi(x) = psi(coefficient of t^{-1}).
/// Trivial on O, nontrivial on t^{-1}O. Requires x known mod t^0 at least.
ExactValue Psi_char(const LaurentSeries& x);

/// theta(n) = Psi(1/2 * sum of the superdiagonal) for upper-unitriangular n.
ExactValue theta_char(const MatrixLF& n);

} // namespace germlab
