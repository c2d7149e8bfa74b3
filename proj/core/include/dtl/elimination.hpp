#pragma once

// Sparse Gaussian elimination restricted to unit pivots, generic over the
// scalar domain. Over a field every nonzero entry is a unit so this is plain
// elimination; over Z the rows left without a unit entry form the residual
// block that a dense Smith form finishes.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dtl/coeff_ring.hpp"
#include "dtl/sparse_matrix.hpp"

namespace dtl {

struct IntegerDomain {
    using Value = Integer;
    bool is_zero(const Value& a) const { return a == 0; }
    bool is_unit(const Value& a) const { return a == 1 || a == -1; }
    /// Only called on units.
    Value unit_inverse(const Value& a) const { return a; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value neg(const Value& a) const { return -a; }
    Value one() const { return 1; }
    Value from_scalar(const Scalar& s) const { return std::get<Integer>(s); }
    Scalar to_scalar(const Value& a) const { return a; }
};

struct PrimeFieldDomain {
    using Value = std::uint64_t;
    std::uint64_t p;
    bool is_zero(Value a) const { return a == 0; }
    bool is_unit(Value a) const { return a != 0; }
    Value unit_inverse(Value a) const {
        Value result = 1, base = a, e = p - 2;
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }
    Value mul(Value a, Value b) const { return static_cast<Value>(static_cast<unsigned __int128>(a) * b % p); }
    Value sub(Value a, Value b) const { return a >= b ? a - b : a + (p - b); }
    Value neg(Value a) const { return a == 0 ? 0 : p - a; }
    Value one() const { return 1; }
    Value from_scalar(const Scalar& s) const { return std::get<Residue>(s).value; }
    Scalar to_scalar(Value a) const { return Residue{a, p}; }
};

struct RationalDomain {
    using Value = Rational;
    bool is_zero(const Value& a) const { return a == 0; }
    bool is_unit(const Value& a) const { return a != 0; }
    Value unit_inverse(const Value& a) const { return Value(1) / a; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value neg(const Value& a) const { return -a; }
    Value one() const { return 1; }
    Value from_scalar(const Scalar& s) const { return std::get<Rational>(s); }
    Scalar to_scalar(const Value& a) const { return a; }
};

/// Calls f with the elimination domain matching ring. The polynomial ring
/// has none.
template <class F>
decltype(auto) with_domain(const Ring& ring, F&& f) {
    switch (ring.kind()) {
        case RingKind::Integers: return f(IntegerDomain{});
        case RingKind::PrimeField: return f(PrimeFieldDomain{ring.modulus()});
        case RingKind::Rationals: return f(RationalDomain{});
        case RingKind::IntegerPolynomial: break;
    }
    throw std::invalid_argument("linear algebra over Z[delta] is not supported; specialize delta first");
}

template <class Dom>
class UnitElimination {
public:
    using Value = typename Dom::Value;
    using Row = std::vector<std::pair<std::uint32_t, Value>>;  // sorted by column

    struct Pivot {
        std::uint32_t row;
        std::uint32_t col;
    };

    UnitElimination(Dom dom, std::size_t cols, std::vector<Row> rows)
        : dom_(std::move(dom)), cols_(cols), rows_(std::move(rows)), pivot_order_(cols, kNone) {}

    /// The rows of m (or of its transpose) as elimination input.
    static std::vector<Row> rows_of(const Dom& dom, const SparseMatrix& m, bool transposed = false) {
        std::vector<Row> rows(transposed ? m.cols() : m.rows());
        for (const auto& e : m.entries()) {
            auto r = transposed ? e.col : e.row;
            auto c = transposed ? e.row : e.col;
            rows[r].emplace_back(c, dom.from_scalar(e.value));
        }
        if (transposed)
            for (auto& row : rows) std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return rows;
    }

    void run() {
        const std::size_t count = rows_.size();
        state_.assign(count, State::Active);
        std::vector<std::vector<std::uint32_t>> col_rows(cols_);
        using Item = std::pair<std::size_t, std::uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        for (std::uint32_t r = 0; r < count; ++r) {
            if (rows_[r].empty()) {
                state_[r] = State::Zero;
                continue;
            }
            for (const auto& [c, v] : rows_[r]) col_rows[c].push_back(r);
            heap.emplace(rows_[r].size(), r);
        }
        Row scratch;
        while (!heap.empty()) {
            auto [len, r] = heap.top();
            heap.pop();
            if (state_[r] != State::Active || len != rows_[r].size()) continue;
            // Markowitz-style choice: the unit entry whose column is shortest.
            std::optional<std::size_t> best;
            for (std::size_t k = 0; k < rows_[r].size(); ++k) {
                if (!dom_.is_unit(rows_[r][k].second)) continue;
                if (!best || col_rows[rows_[r][k].first].size() < col_rows[rows_[r][*best].first].size()) best = k;
            }
            if (!best) {
                state_[r] = State::Parked;
                continue;
            }
            const std::uint32_t c = rows_[r][*best].first;
            const Value inv = dom_.unit_inverse(rows_[r][*best].second);
            state_[r] = State::Pivot;
            pivot_order_[c] = static_cast<std::uint32_t>(pivots_.size());
            pivots_.push_back({r, c});
            auto touched = std::move(col_rows[c]);
            col_rows[c].clear();
            for (std::uint32_t t : touched) {
                if (t == r || state_[t] == State::Pivot || state_[t] == State::Zero) continue;
                auto& target = rows_[t];
                auto it = std::lower_bound(target.begin(), target.end(), c, [](const auto& e, std::uint32_t col) { return e.first < col; });
                if (it == target.end() || it->first != c) continue;
                Value factor = dom_.mul(it->second, inv);
                axpy(target, factor, rows_[r], scratch, [&](std::uint32_t fresh) { col_rows[fresh].push_back(t); });
                if (target.empty()) {
                    state_[t] = State::Zero;
                } else {
                    state_[t] = State::Active;
                    heap.emplace(target.size(), t);
                }
            }
        }
        done_ = true;
    }

    std::size_t unit_rank() const { return pivots_.size(); }
    const std::vector<Pivot>& pivots() const { return pivots_; }
    const Row& row(std::size_t r) const { return rows_[r]; }
    bool is_pivot_column(std::uint32_t c) const { return pivot_order_[c] != kNone; }
    std::size_t cols() const { return cols_; }

    /// Rows without a unit entry that are still nonzero; all their columns
    /// are non-pivot columns.
    std::vector<Row> residual() const {
        std::vector<Row> out;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (state_[r] == State::Parked && !rows_[r].empty()) out.push_back(rows_[r]);
        return out;
    }

    /// Columns that carry no pivot, in increasing order.
    std::vector<std::uint32_t> free_columns() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t c = 0; c < cols_; ++c)
            if (pivot_order_[c] == kNone) out.push_back(c);
        return out;
    }

    /// Reduces v modulo the pivot rows; the result has no pivot columns.
    Row reduce(const Row& v) const {
        std::map<std::uint32_t, Value> acc;
        std::set<std::uint32_t> pending;  // pivot orders still to clear
        for (const auto& [c, x] : v) {
            if (dom_.is_zero(x)) continue;
            acc[c] = x;
            if (pivot_order_[c] != kNone) pending.insert(pivot_order_[c]);
        }
        while (!pending.empty()) {
            std::uint32_t k = *pending.begin();
            pending.erase(pending.begin());
            const auto& pivot = pivots_[k];
            auto it = acc.find(pivot.col);
            if (it == acc.end()) continue;
            const Row& prow = rows_[pivot.row];
            Value pivot_value = std::lower_bound(prow.begin(), prow.end(), pivot.col, [](const auto& e, std::uint32_t col) {
                                    return e.first < col;
                                })->second;
            Value factor = dom_.mul(it->second, dom_.unit_inverse(pivot_value));
            for (const auto& [c, x] : prow) {
                auto [slot, fresh] = acc.try_emplace(c, dom_.neg(dom_.mul(factor, x)));
                if (!fresh) slot->second = dom_.sub(slot->second, dom_.mul(factor, x));
                if (dom_.is_zero(slot->second)) acc.erase(slot);
                else if (fresh && pivot_order_[c] != kNone) pending.insert(pivot_order_[c]);
            }
        }
        return Row(acc.begin(), acc.end());
    }

    /// Basis of the solutions x of (row . x) = 0 for every row, valid when
    /// the residual is empty: one vector per free column, by back
    /// substitution through the pivots in reverse order.
    std::vector<Row> kernel_basis() const {
        std::vector<Row> out;
        for (std::uint32_t f : free_columns()) out.push_back(back_substitute({{f, dom_.one()}}));
        return out;
    }

    /// Extends values on free columns to a solution of every pivot row.
    Row back_substitute(const Row& free_values) const {
        std::map<std::uint32_t, Value> x(free_values.begin(), free_values.end());
        for (std::size_t k = pivots_.size(); k-- > 0;) {
            const auto& pivot = pivots_[k];
            Value pivot_value{};
            Value sum{};
            bool have_sum = false;
            for (const auto& [c, a] : rows_[pivot.row]) {
                if (c == pivot.col) {
                    pivot_value = a;
                    continue;
                }
                auto it = x.find(c);
                if (it == x.end()) continue;
                Value term = dom_.mul(a, it->second);
                sum = have_sum ? dom_.sub(sum, dom_.neg(term)) : term;
                have_sum = true;
            }
            if (have_sum && !dom_.is_zero(sum)) x[pivot.col] = dom_.neg(dom_.mul(sum, dom_.unit_inverse(pivot_value)));
        }
        Row out;
        for (auto& [c, v] : x)
            if (!dom_.is_zero(v)) out.emplace_back(c, v);
        return out;
    }

    const Dom& domain() const { return dom_; }

private:
    enum class State : std::uint8_t { Active, Parked, Pivot, Zero };
    static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

    // target -= factor * source, reporting columns new to target.
    template <class OnNew>
    void axpy(Row& target, const Value& factor, const Row& source, Row& scratch, OnNew&& on_new) const {
        scratch.clear();
        std::size_t i = 0, j = 0;
        while (i < target.size() || j < source.size()) {
            if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
                scratch.push_back(std::move(target[i++]));
            } else if (i == target.size() || source[j].first < target[i].first) {
                scratch.emplace_back(source[j].first, dom_.neg(dom_.mul(factor, source[j].second)));
                on_new(source[j].first);
                ++j;
            } else {
                Value v = dom_.sub(target[i].second, dom_.mul(factor, source[j].second));
                if (!dom_.is_zero(v)) scratch.emplace_back(target[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        target.swap(scratch);
    }

    Dom dom_;
    std::size_t cols_;
    std::vector<Row> rows_;
    std::vector<State> state_;
    std::vector<std::uint32_t> pivot_order_;
    std::vector<Pivot> pivots_;
    bool done_ = false;
};

}  // namespace dtl
