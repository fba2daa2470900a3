#include "germlab/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace germlab {

MatrixLF::MatrixLF(int p, int size)
    : p_(p), n_(size), e_(static_cast<size_t>(size * size), LaurentSeries::zero(p)) {
    if (size < 1) throw PreconditionError("matrix: size must be >= 1");
}

MatrixLF MatrixLF::identity(int p, int size) {
    MatrixLF m(p, size);
    for (int i = 0; i < size; ++i) m.set(i, i, LaurentSeries::from_int(p, 1, LaurentSeries::kExactPrecision));
    return m;
}

MatrixLF MatrixLF::antidiag_ones(int p, int size) {
    MatrixLF m(p, size);
    for (int i = 0; i < size; ++i)
        m.set(i, size - 1 - i, LaurentSeries::from_int(p, 1, LaurentSeries::kExactPrecision));
    return m;
}

MatrixLF MatrixLF::diagonal(const std::vector<LaurentSeries>& d) {
    if (d.empty()) throw PreconditionError("matrix: empty diagonal");
    MatrixLF m(d[0].prime(), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.set(static_cast<int>(i), static_cast<int>(i), d[i]);
    return m;
}

MatrixLF MatrixLF::scalar(int size, const LaurentSeries& c) {
    return diagonal(std::vector<LaurentSeries>(static_cast<size_t>(size), c));
}

int MatrixLF::min_precision() const {
    int m = LaurentSeries::kExactPrecision;
    for (const auto& x : e_) m = std::min(m, x.precision());
    return m;
}

MatrixLF MatrixLF::operator*(const MatrixLF& o) const {
    if (n_ != o.n_ || p_ != o.p_) throw PreconditionError("matrix: shape/prime mismatch");
    MatrixLF r(p_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            LaurentSeries s = LaurentSeries::zero(p_);
            for (int k = 0; k < n_; ++k) s = s + at(i, k) * o.at(k, j);
            r.set(i, j, s);
        }
    return r;
}

MatrixLF MatrixLF::operator+(const MatrixLF& o) const {
    if (n_ != o.n_ || p_ != o.p_) throw PreconditionError("matrix: shape/prime mismatch");
    MatrixLF r(p_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.set(i, j, at(i, j) + o.at(i, j));
    return r;
}

MatrixLF MatrixLF::transpose() const {
    MatrixLF r(p_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.set(i, j, at(j, i));
    return r;
}

LaurentSeries MatrixLF::det() const {
    if (n_ == 1) return at(0, 0);
    if (n_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    if (n_ == 3) {
        LaurentSeries s = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1));
        s = s - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0));
        s = s + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
        return s;
    }
    throw PreconditionError("matrix: det only implemented for sizes <= 3");
}

MatrixLF MatrixLF::inverse() const {
    LaurentSeries d = det();
    if (d.is_zero()) throw PreconditionError("matrix: singular (to available precision)");
    MatrixLF adj(p_, n_);
    if (n_ == 1) {
        adj.set(0, 0, LaurentSeries::from_int(p_, 1, LaurentSeries::kExactPrecision));
    } else if (n_ == 2) {
        adj.set(0, 0, at(1, 1));
        adj.set(0, 1, -at(0, 1));
        adj.set(1, 0, -at(1, 0));
        adj.set(1, 1, at(0, 0));
    } else if (n_ == 3) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
                int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
                // adjugate: cofactor of (j, i)
                adj.set(j, i, at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0));
            }
        // the cyclic index trick above already encodes the sign pattern
    } else {
        throw PreconditionError("matrix: inverse only implemented for sizes <= 3");
    }
    MatrixLF r(p_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.set(i, j, adj.at(i, j) / d);
    return r;
}

bool MatrixLF::is_upper_unitriangular() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const LaurentSeries& x = at(i, j);
            if (i == j) {
                if (x.is_zero() || !(x - LaurentSeries::from_int(p_, 1, x.precision())).is_zero())
                    return false;
            } else if (i > j) {
                if (!x.is_zero()) return false;
            }
        }
    return true;
}

bool MatrixLF::congruent(const MatrixLF& o) const {
    if (n_ != o.n_ || p_ != o.p_) return false;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (!at(i, j).congruent(o.at(i, j))) return false;
    return true;
}

std::string MatrixLF::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < n_; ++i) {
        os << "[ ";
        for (int j = 0; j < n_; ++j) os << at(i, j).to_string() << (j + 1 < n_ ? " , " : " ");
        os << "]\n";
    }
    return os.str();
}

} // namespace germlab
