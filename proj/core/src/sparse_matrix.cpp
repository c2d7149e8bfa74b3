#include "dtl/sparse_matrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace dtl {

SparseMatrix SparseMatrix::from_entries(Ring ring, std::size_t rows, std::size_t cols, std::vector<Entry> entries) {
    for (const auto& e : entries) {
        if (e.row >= rows || e.col >= cols)
            throw std::out_of_range("matrix entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                                    ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
        if (!ring.contains(e.value)) throw RingMismatch("matrix entry outside the matrix ring");
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
    SparseMatrix m(std::move(ring), rows, cols);
    for (auto& e : entries) {
        if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
            m.entries_.back().value = m.ring_.add(m.entries_.back().value, e.value);
            if (m.ring_.is_zero(m.entries_.back().value)) m.entries_.pop_back();
        } else if (!m.ring_.is_zero(e.value)) {
            m.entries_.push_back(std::move(e));
        }
    }
    return m;
}

Scalar SparseMatrix::at(std::size_t row, std::size_t col) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col}, [](const Entry& e, const auto& key) {
        return std::pair<std::size_t, std::size_t>{e.row, e.col} < key;
    });
    if (it != entries_.end() && it->row == row && it->col == col) return it->value;
    return ring_.zero();
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<Entry> flipped;
    flipped.reserve(entries_.size());
    for (const auto& e : entries_) flipped.push_back({e.col, e.row, e.value});
    return from_entries(ring_, cols_, rows_, std::move(flipped));
}

SparseMatrix SparseMatrix::specialize_to(const Ring& target) const {
    if (ring_.kind() != RingKind::IntegerPolynomial) throw RingMismatch("specialize_to needs a matrix over Z[delta]");
    std::vector<Entry> mapped;
    mapped.reserve(entries_.size());
    for (const auto& e : entries_) mapped.push_back({e.row, e.col, specialize(std::get<Polynomial>(e.value), target)});
    return from_entries(target, rows_, cols_, std::move(mapped));
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (!(a.ring_ == b.ring_)) throw RingMismatch("matrix product over different rings");
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix shapes " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " and " +
                                    std::to_string(b.rows_) + "x" + std::to_string(b.cols_) + " do not compose");
    // Row starts of b for direct access.
    std::vector<std::size_t> start(b.rows_ + 1, 0);
    for (const auto& e : b.entries_) ++start[e.row + 1];
    for (std::size_t r = 0; r < b.rows_; ++r) start[r + 1] += start[r];

    std::vector<SparseMatrix::Entry> out;
    std::size_t i = 0;
    while (i < a.entries_.size()) {
        std::uint32_t row = a.entries_[i].row;
        std::map<std::uint32_t, Scalar> acc;
        for (; i < a.entries_.size() && a.entries_[i].row == row; ++i) {
            const auto& ea = a.entries_[i];
            for (std::size_t k = start[ea.col]; k < start[ea.col + 1]; ++k) {
                const auto& eb = b.entries_[k];
                Scalar term = a.ring_.multiply(ea.value, eb.value);
                auto [it, fresh] = acc.emplace(eb.col, term);
                if (!fresh) it->second = a.ring_.add(it->second, term);
            }
        }
        for (auto& [col, value] : acc) out.push_back({row, col, std::move(value)});
    }
    return SparseMatrix::from_entries(a.ring_, a.rows_, b.cols_, std::move(out));
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (!(a.ring_ == b.ring_) || a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size())
        return false;
    for (std::size_t k = 0; k < a.entries_.size(); ++k) {
        const auto& x = a.entries_[k];
        const auto& y = b.entries_[k];
        if (x.row != y.row || x.col != y.col || !a.ring_.equal(x.value, y.value)) return false;
    }
    return true;
}

}  // namespace dtl
