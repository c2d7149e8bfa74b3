#pragma once

// Sparse matrices with entries in a coefficient ring.

#include <cstdint>
#include <vector>

#include "dtl/coeff_ring.hpp"

namespace dtl {

class SparseMatrix {
public:
    struct Entry {
        std::uint32_t row;
        std::uint32_t col;
        Scalar value;
    };

    SparseMatrix(Ring ring, std::size_t rows, std::size_t cols) : ring_(std::move(ring)), rows_(rows), cols_(cols) {}

    /// Duplicates are summed and zeros dropped. Indices are range checked.
    static SparseMatrix from_entries(Ring ring, std::size_t rows, std::size_t cols, std::vector<Entry> entries);

    const Ring& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    /// Sorted by (row, col); no zeros.
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }
    Scalar at(std::size_t row, std::size_t col) const;

    SparseMatrix transpose() const;
    /// Maps every entry through specialize(); this must be over Z[delta].
    SparseMatrix specialize_to(const Ring& target) const;

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    Ring ring_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Entry> entries_;
};

}  // namespace dtl
