#pragma once

#include <vector>

#include "germlab/laurent.hpp"

namespace germlab {

/// Square matrix over F_p((t)). Entries carry their own precision; the
/// matrix-level precision is the minimum over entries.
class MatrixLF {
public:
    MatrixLF(int p, int size); // zero matrix
    static MatrixLF identity(int p, int size);
    /// antidiag(1, ..., 1): the longest Weyl element w_{G_r}.
    static MatrixLF antidiag_ones(int p, int size);
    static MatrixLF diagonal(const std::vector<LaurentSeries>& d);
    static MatrixLF scalar(int size, const LaurentSeries& c);

    int prime() const { return p_; }
    int size() const { return n_; }

    const LaurentSeries& at(int i, int j) const { return e_[idx(i, j)]; }
    void set(int i, int j, const LaurentSeries& v) { e_[idx(i, j)] = v; }

    int min_precision() const;

    MatrixLF operator*(const MatrixLF& o) const;
    MatrixLF operator+(const MatrixLF& o) const;
    MatrixLF transpose() const;
    LaurentSeries det() const; // sizes up to 3
    MatrixLF inverse() const;  // adjugate route, sizes up to 3

    bool is_upper_unitriangular() const;
    /// Entry-wise congruence modulo the shared precision.
    bool congruent(const MatrixLF& o) const;

    std::string to_string() const;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i * n_ + j); }

    int p_;
    int n_;
    std::vector<LaurentSeries> e_;
};

} // namespace germlab
