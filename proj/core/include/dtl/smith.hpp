#pragma once

// Smith normal form over Z and ranks over Z, Q and F_p.

#include <optional>
#include <vector>

#include "dtl/coeff_ring.hpp"
#include "dtl/sparse_matrix.hpp"

namespace dtl {

/// Dense integer matrix, row major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_sparse(const SparseMatrix& m);  // m over Z

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    bool is_zero() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

struct SmithTransforms {
    IntMatrix U, U_inverse, V, V_inverse;
};

struct SmithResult {
    /// Nonzero diagonal entries d_1 | d_2 | ..., all positive.
    std::vector<Integer> invariant_factors;
    IntMatrix diagonal;
    std::optional<SmithTransforms> transforms;  // U m V = diagonal

    std::size_t rank() const { return invariant_factors.size(); }
};

/// Dense Smith form by smallest-pivot reduction with gcd row and column
/// steps. With transforms the identities U m V = D, U U^-1 = 1 and
/// V V^-1 = 1 are checked before returning.
SmithResult smith_dense(IntMatrix m, bool with_transforms = false);

/// Invariant factors of a sparse integer matrix: unit pivots are
/// eliminated sparsely and the remaining block goes through smith_dense.
/// Throws RingMismatch for a matrix over any other ring.
std::vector<Integer> smith_normal_form(const SparseMatrix& m);

/// Rank by fraction-free (Bareiss) elimination.
std::size_t rank_fraction_free(IntMatrix m);

/// Rank over the matrix ring: Smith form over Z, fraction-free elimination
/// after clearing denominators over Q, plain elimination over F_p.
std::size_t matrix_rank(const SparseMatrix& m);

}  // namespace dtl
