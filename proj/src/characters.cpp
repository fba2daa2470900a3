#include "germlab/characters.hpp"

namespace germlab {

ExactValue Psi_char(const LaurentSeries& x) {
    if (x.precision() < 0)
        throw PrecisionError("Psi: input not known mod t^0, coefficient at -1 unreadable");
    return psi_char(x.coeff(-1));
}

ExactValue theta_char(const MatrixLF& n) {
    if (!n.is_upper_unitriangular())
        throw PreconditionError("theta: input is not upper unitriangular");
    int p = n.prime();
    LaurentSeries s = LaurentSeries::zero(p);
    for (int i = 0; i + 1 < n.size(); ++i) s = s + n.at(i, i + 1);
    LaurentSeries half = LaurentSeries::from_int(p, (p + 1) / 2, LaurentSeries::kExactPrecision);
    return Psi_char(half * s);
}

} // namespace germlab
