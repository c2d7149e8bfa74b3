#include "dtl/bar_complex.hpp"

#include <limits>

#include "dtl/algebra.hpp"

namespace dtl {

SizeGuardExceeded::SizeGuardExceeded(int degree, std::size_t dimension, std::size_t entries)
    : std::runtime_error("bar term of degree " + std::to_string(degree) + " has rank " + std::to_string(dimension) +
                         " and needs about " + std::to_string(entries) + " stored entries, over the limit of " +
                         std::to_string(kBarEntryLimit)),
      degree_(degree),
      dimension_(dimension) {}

namespace {

// m^e, saturating at the largest size_t.
std::size_t saturating_power(std::size_t base, int exponent) {
    unsigned __int128 out = 1;
    for (int i = 0; i < exponent; ++i) {
        out *= base;
        if (out > std::numeric_limits<std::size_t>::max()) return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(out);
}

using ProductCache = std::vector<std::optional<std::pair<std::uint32_t, unsigned>>>;

SparseMatrix bar_boundary(const ProductCache& table, std::size_t m, const Ring& ring, int p, std::size_t cols, std::size_t rows) {
    std::vector<SparseMatrix::Entry> entries;
    std::vector<std::uint32_t> word(static_cast<std::size_t>(p));
    std::vector<Scalar> power_cache;
    auto power = [&](unsigned a) -> const Scalar& {
        while (power_cache.size() <= a) power_cache.push_back(ring.delta_power(static_cast<unsigned>(power_cache.size())));
        return power_cache[a];
    };
    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t rest = col;
        for (int k = p - 1; k >= 0; --k) {
            word[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(rest % m);
            rest /= m;
        }
        for (int i = 1; i < p; ++i) {
            const auto& prod = table[word[static_cast<std::size_t>(i - 1)] * m + word[static_cast<std::size_t>(i)]];
            if (!prod) continue;
            Scalar coeff = power(prod->second);
            if (ring.is_zero(coeff)) continue;
            if (i % 2) coeff = ring.negate(coeff);
            std::size_t row = 0;
            for (int k = 0; k < p; ++k) {
                if (k == i) continue;
                row = row * m + (k == i - 1 ? prod->first : word[static_cast<std::size_t>(k)]);
            }
            entries.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), std::move(coeff)});
        }
    }
    return SparseMatrix::from_entries(ring, rows, cols, std::move(entries));
}

}  // namespace

HomologyResult bar_homology(const AugmentedIdeal& ideal, const Ring& ring, int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("max degree must be non-negative");
    const std::size_t m = ideal.dimension;
    // Guard first: the largest boundary is d_{max+1} with max entries per column.
    const int top = max_degree + 1;
    {
        const std::size_t cols = saturating_power(m, top);
        const unsigned __int128 entries = static_cast<unsigned __int128>(cols) * static_cast<unsigned>(std::max(1, top - 1));
        if (entries > kBarEntryLimit)
            throw SizeGuardExceeded(top, cols, static_cast<std::size_t>(std::min<unsigned __int128>(entries, std::numeric_limits<std::size_t>::max())));
    }

    ChainComplex bar(ring);
    bar.set_term(0, 1);
    std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 1);
    rank[0] = 1;
    for (int p = 1; p <= top; ++p) {
        rank[static_cast<std::size_t>(p)] = saturating_power(m, p);
        bar.set_term(p, rank[static_cast<std::size_t>(p)]);
    }
    ProductCache table;
    if (top >= 2) {
        table.resize(m * m);
        for (std::uint32_t a = 0; a < m; ++a)
            for (std::uint32_t b = 0; b < m; ++b) table[a * m + b] = ideal.multiply(a, b);
    }
    for (int p = 2; p <= top; ++p)
        bar.set_boundary(p, bar_boundary(table, m, ring, p, rank[static_cast<std::size_t>(p)], rank[static_cast<std::size_t>(p) - 1]));

    auto full = complex_homology(bar);
    // The top degree lacks its incoming boundary; drop it.
    full.degrees.erase(top);
    return full;
}

HomologyResult bar_tor(int n, const Ring& ring, int max_degree) {
    const auto& basis = DiagramBasis::get(n);
    const std::uint32_t unit = basis.all_propagating_index();
    std::vector<std::uint32_t> to_global;
    std::vector<std::int64_t> to_local(basis.size(), -1);
    for (std::uint32_t i = 0; i < basis.size(); ++i)
        if (i != unit) {
            to_local[i] = static_cast<std::int64_t>(to_global.size());
            to_global.push_back(i);
        }
    AugmentedIdeal ideal;
    ideal.dimension = to_global.size();
    ideal.multiply = [&basis, to_global, to_local](std::uint32_t a, std::uint32_t b) -> std::optional<std::pair<std::uint32_t, unsigned>> {
        auto out = multiply_diagrams(basis[to_global[a]], basis[to_global[b]]);
        if (out.is_annihilated()) return std::nullopt;
        auto local = to_local[basis.index(out.diagram())];
        if (local < 0) throw std::logic_error("product of ideal elements left the augmentation ideal");
        return std::make_pair(static_cast<std::uint32_t>(local), out.loops());
    };
    return bar_homology(ideal, ring, max_degree);
}

std::vector<std::size_t> betti_numbers(const HomologyResult& h, int max_degree) {
    std::vector<std::size_t> out;
    for (int p = 0; p <= max_degree; ++p) out.push_back(h.at(p).rank);
    return out;
}

}  // namespace dtl
