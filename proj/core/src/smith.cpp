#include "dtl/smith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dtl/elimination.hpp"

namespace dtl {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_sparse(const SparseMatrix& s) {
    if (s.ring().kind() != RingKind::Integers) throw RingMismatch("IntMatrix needs an integer matrix");
    IntMatrix m(s.rows(), s.cols());
    for (const auto& e : s.entries()) m(e.row, e.col) = std::get<Integer>(e.value);
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix shapes do not compose");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (b(k, j) != 0) c(i, j) += x * b(k, j);
        }
    return c;
}

namespace {

// The working matrix with optional transform bookkeeping. Row operations
// update U on the left and U^-1 on the right, column operations update V on
// the right and V^-1 on the left.
class SmithState {
public:
    SmithState(IntMatrix m, bool track) : a(std::move(m)), track_(track) {
        if (track_) {
            u = ui = IntMatrix::identity(a.rows());
            v = vi = IntMatrix::identity(a.cols());
        }
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
        if (!track_) return;
        for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
        for (std::size_t r = 0; r < ui.rows(); ++r) std::swap(ui(r, i), ui(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
        if (!track_) return;
        for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
        for (std::size_t c = 0; c < vi.cols(); ++c) std::swap(vi(i, c), vi(j, c));
    }
    // row_i -= q * row_t
    void row_axpy(std::size_t i, std::size_t t, const Integer& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a(t, c) != 0) a(i, c) -= q * a(t, c);
        if (!track_) return;
        for (std::size_t c = 0; c < u.cols(); ++c)
            if (u(t, c) != 0) u(i, c) -= q * u(t, c);
        for (std::size_t r = 0; r < ui.rows(); ++r)
            if (ui(r, i) != 0) ui(r, t) += q * ui(r, i);
    }
    // col_j -= q * col_t
    void col_axpy(std::size_t j, std::size_t t, const Integer& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (a(r, t) != 0) a(r, j) -= q * a(r, t);
        if (!track_) return;
        for (std::size_t r = 0; r < v.rows(); ++r)
            if (v(r, t) != 0) v(r, j) -= q * v(r, t);
        for (std::size_t c = 0; c < vi.cols(); ++c)
            if (vi(j, c) != 0) vi(t, c) += q * vi(j, c);
    }
    void negate_row(std::size_t t) {
        for (std::size_t c = 0; c < a.cols(); ++c) a(t, c) = -a(t, c);
        if (!track_) return;
        for (std::size_t c = 0; c < u.cols(); ++c) u(t, c) = -u(t, c);
        for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, t) = -ui(r, t);
    }

    IntMatrix a, u, ui, v, vi;

private:
    bool track_;
};

}  // namespace

SmithResult smith_dense(IntMatrix m, bool with_transforms) {
    const IntMatrix original = with_transforms ? m : IntMatrix();
    SmithState s(std::move(m), with_transforms);
    auto& a = s.a;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        // Smallest nonzero entry of the remaining block.
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a(i, j) != 0 && (!best || abs(a(i, j)) < abs(a(best->first, best->second)))) best = {i, j};
        if (!best) break;
        s.swap_rows(t, best->first);
        s.swap_cols(t, best->second);
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                s.row_axpy(i, t, q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                s.col_axpy(j, t, q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot appeared; move it in.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) bi = i, bj = t;
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) bi = t, bj = j;
                s.swap_rows(t, bi);
                s.swap_cols(t, bj);
                continue;
            }
            // Enforce divisibility of the rest of the block by the pivot.
            std::optional<std::size_t> offender;
            for (std::size_t i = t + 1; i < rows && !offender; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(i, j) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        offender = i;
                        break;
                    }
            if (!offender) break;
            s.row_axpy(t, *offender, Integer(-1));
        }
        if (a(t, t) < 0) s.negate_row(t);
    }

    SmithResult result;
    for (std::size_t k = 0; k < t; ++k) result.invariant_factors.push_back(a(k, k));
    if (with_transforms) {
        SmithTransforms tr{s.u, s.ui, s.v, s.vi};
        if (!(tr.U * original * tr.V == a) || !(tr.U * tr.U_inverse == IntMatrix::identity(rows)) ||
            !(tr.V * tr.V_inverse == IntMatrix::identity(cols)))
            throw std::logic_error("Smith normal form transform verification failed");
        result.transforms = std::move(tr);
    }
    result.diagonal = std::move(a);
    return result;
}

namespace {

// Packs residual rows into a dense matrix over the columns they use.
IntMatrix dense_block(const std::vector<UnitElimination<IntegerDomain>::Row>& rows) {
    std::map<std::uint32_t, std::size_t> col_index;
    for (const auto& row : rows)
        for (const auto& [c, v] : row) col_index.emplace(c, 0);
    std::size_t k = 0;
    for (auto& [c, idx] : col_index) idx = k++;
    IntMatrix m(rows.size(), col_index.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r]) m(r, col_index[c]) = v;
    return m;
}

UnitElimination<IntegerDomain> eliminate_integer(const SparseMatrix& m) {
    IntegerDomain dom;
    // Many short rows suit the pivot heuristic better than few long ones.
    bool transposed = m.cols() > m.rows();
    UnitElimination<IntegerDomain> elim(dom, transposed ? m.rows() : m.cols(),
                                        UnitElimination<IntegerDomain>::rows_of(dom, m, transposed));
    elim.run();
    return elim;
}

SparseMatrix clear_denominators(const SparseMatrix& m) {
    std::map<std::uint32_t, Integer> row_lcm;
    for (const auto& e : m.entries()) {
        auto [it, fresh] = row_lcm.emplace(e.row, 1);
        mpz_lcm(it->second.get_mpz_t(), it->second.get_mpz_t(), std::get<Rational>(e.value).get_den_mpz_t());
    }
    std::vector<SparseMatrix::Entry> out;
    out.reserve(m.nnz());
    for (const auto& e : m.entries()) {
        Rational scaled = std::get<Rational>(e.value) * Rational(row_lcm[e.row]);
        out.push_back({e.row, e.col, Integer(scaled.get_num())});
    }
    return SparseMatrix::from_entries(Ring::integers(0), m.rows(), m.cols(), std::move(out));
}

}  // namespace

std::vector<Integer> smith_normal_form(const SparseMatrix& m) {
    if (m.ring().kind() != RingKind::Integers) throw RingMismatch("Smith normal form needs a matrix over Z");
    auto elim = eliminate_integer(m);
    std::vector<Integer> factors(elim.unit_rank(), Integer(1));
    auto residual = elim.residual();
    if (!residual.empty()) {
        auto rest = smith_dense(dense_block(residual)).invariant_factors;
        factors.insert(factors.end(), rest.begin(), rest.end());
    }
    return factors;
}

std::size_t rank_fraction_free(IntMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(rank, j));
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Integer x = m(rank, c) * m(i, j) - m(i, c) * m(rank, j);
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = x;
            }
            m(i, c) = 0;
        }
        prev = m(rank, c);
        ++rank;
    }
    return rank;
}

std::size_t matrix_rank(const SparseMatrix& m) {
    switch (m.ring().kind()) {
        case RingKind::Integers: {
            auto elim = eliminate_integer(m);
            auto residual = elim.residual();
            return elim.unit_rank() + (residual.empty() ? 0 : rank_fraction_free(dense_block(residual)));
        }
        case RingKind::Rationals: return matrix_rank(clear_denominators(m));
        case RingKind::PrimeField: {
            PrimeFieldDomain dom{m.ring().modulus()};
            bool transposed = m.cols() > m.rows();
            UnitElimination<PrimeFieldDomain> elim(dom, transposed ? m.rows() : m.cols(),
                                                   UnitElimination<PrimeFieldDomain>::rows_of(dom, m, transposed));
            elim.run();
            return elim.unit_rank();
        }
        case RingKind::IntegerPolynomial: break;
    }
    throw std::invalid_argument("rank over Z[delta] is not supported; specialize delta first");
}

}  // namespace dtl
