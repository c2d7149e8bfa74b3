#include "dtl/functors.hpp"

#include <map>
#include <mutex>
#include <functional>
#include <type_traits>

#include "dtl/algebra.hpp"
#include "dtl/elimination.hpp"
#include "dtl/ideals.hpp"
#include "dtl/smith.hpp"

namespace dtl {

IdealBasis whole_algebra(int n) { return IdealBasis(n, "A", DiagramBasis::get(n).diagrams()); }

namespace {

// Products of basis diagrams: the cached table for small n, direct
// multiplication otherwise.
class Multiplier {
public:
    explicit Multiplier(int n) : basis_(DiagramBasis::get(n)) {
        if (n <= 5) table_ = &ProductTable::get(n);
    }
    std::optional<std::pair<std::uint32_t, unsigned>> operator()(std::uint32_t a, std::uint32_t b) const {
        if (table_) {
            auto e = (*table_)(a, b);
            if (e.annihilated()) return std::nullopt;
            return std::make_pair(e.index(), e.loops());
        }
        auto out = multiply_diagrams(basis_[a], basis_[b]);
        if (out.is_annihilated()) return std::nullopt;
        return std::make_pair(basis_.index(out.diagram()), out.loops());
    }

private:
    const DiagramBasis& basis_;
    const ProductTable* table_ = nullptr;
};

std::vector<TrivialRelation> compute_relations(const IdealBasis& M, const std::vector<std::uint32_t>& global) {
    const auto& basis = DiagramBasis::get(M.n());
    Multiplier mult(M.n());
    std::vector<std::int32_t> local(basis.size(), -1);
    for (std::size_t i = 0; i < global.size(); ++i) local[global[i]] = static_cast<std::int32_t>(i);
    const std::uint32_t unit = basis.all_propagating_index();

    // For a != P only the smallest loop exponent per target matters: the
    // others are multiples of it.
    std::vector<int> min_alpha(M.size(), -1);
    std::vector<TrivialRelation> out;
    for (std::uint32_t a = 0; a < basis.size(); ++a) {
        for (std::size_t m = 0; m < global.size(); ++m) {
            auto prod = mult(a, global[m]);
            std::int32_t target = -1;
            if (prod) {
                target = local[prod->first];
                if (target < 0)
                    throw IdealError(M.label() + " is not a left ideal: " + to_text(basis[a]) + " * " +
                                     to_text(M.diagrams()[m]) + " leaves it");
            }
            if (a == unit) {
                if (target != static_cast<std::int32_t>(m)) out.push_back({target, prod ? prod->second : 0, static_cast<std::int32_t>(m)});
            } else if (prod) {
                int& best = min_alpha[target];
                if (best < 0 || static_cast<int>(prod->second) < best) best = static_cast<int>(prod->second);
            }
        }
    }
    for (std::size_t r = 0; r < min_alpha.size(); ++r)
        if (min_alpha[r] >= 0) out.push_back({static_cast<std::int32_t>(r), static_cast<unsigned>(min_alpha[r]), -1});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

template <class Dom>
using RowOf = typename UnitElimination<Dom>::Row;

// Relation rows of a direct sum of ideals, columns offset per summand.
template <class Dom>
std::vector<RowOf<Dom>> relation_rows(const Dom& dom, const Ring& ring, const std::vector<IdealBasis>& summands) {
    std::vector<RowOf<Dom>> rows;
    std::map<unsigned, typename Dom::Value> powers;
    auto power = [&](unsigned alpha) -> const typename Dom::Value& {
        auto it = powers.find(alpha);
        if (it == powers.end()) it = powers.emplace(alpha, dom.from_scalar(ring.delta_power(alpha))).first;
        return it->second;
    };
    std::uint32_t offset = 0;
    for (const auto& s : summands) {
        for (const auto& rel : trivial_relations(s)) {
            std::map<std::uint32_t, typename Dom::Value> acc;
            if (rel.plus >= 0 && !dom.is_zero(power(rel.alpha))) acc[offset + rel.plus] = power(rel.alpha);
            if (rel.minus >= 0) {
                auto [it, fresh] = acc.try_emplace(offset + rel.minus, dom.neg(dom.one()));
                if (!fresh) it->second = dom.sub(it->second, dom.one());
            }
            RowOf<Dom> row;
            for (auto& [c, v] : acc)
                if (!dom.is_zero(v)) row.emplace_back(c, v);
            if (!row.empty()) rows.push_back(std::move(row));
        }
        offset += static_cast<std::uint32_t>(s.size());
    }
    return rows;
}

template <class Dom>
UnitElimination<Dom> eliminate_relations(const Dom& dom, const Ring& ring, const std::vector<IdealBasis>& summands) {
    std::size_t cols = 0;
    for (const auto& s : summands) cols += s.size();
    UnitElimination<Dom> elim(dom, cols, relation_rows(dom, ring, summands));
    elim.run();
    return elim;
}

// Dense integer matrix of rows over the given columns.
IntMatrix dense_rows(const std::vector<RowOf<IntegerDomain>>& rows, const std::map<std::uint32_t, std::size_t>& col_index) {
    IntMatrix m(rows.size(), col_index.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r]) m(r, col_index.at(c)) = v;
    return m;
}

std::map<std::uint32_t, std::size_t> index_of(const std::vector<std::uint32_t>& cols) {
    std::map<std::uint32_t, std::size_t> out;
    for (std::size_t i = 0; i < cols.size(); ++i) out[cols[i]] = i;
    return out;
}

// Columns of a boundary, as sparse rows of its transpose.
template <class Dom>
std::vector<RowOf<Dom>> columns_of(const Dom& dom, const ChainComplex& complex, int p) {
    const auto* d = complex.boundary(p);
    if (!d) return std::vector<RowOf<Dom>>(complex.rank(p));
    return UnitElimination<Dom>::rows_of(dom, *d, true);
}

// The quotient presentation of one degree: survivors are the free columns
// of the relation elimination.
template <class Dom>
struct Presentation {
    UnitElimination<Dom> elim;
    std::vector<std::uint32_t> survivors;
    std::map<std::uint32_t, std::size_t> position;
    std::vector<RowOf<Dom>> residual;
};

template <class Dom>
Presentation<Dom> present(const Dom& dom, const Ring& ring, const std::vector<IdealBasis>& summands) {
    auto elim = eliminate_relations(dom, ring, summands);
    auto survivors = elim.free_columns();
    auto position = index_of(survivors);
    auto residual = elim.residual();
    return Presentation<Dom>{std::move(elim), std::move(survivors), std::move(position), std::move(residual)};
}

std::vector<std::size_t> per_summand(const std::vector<IdealBasis>& summands, const std::vector<std::uint32_t>& cols) {
    std::vector<std::size_t> out(summands.size(), 0);
    std::size_t s = 0, end = summands.empty() ? 0 : summands[0].size();
    for (std::uint32_t c : cols) {
        while (c >= end) end += summands[++s].size();
        ++out[s];
    }
    return out;
}

std::vector<int> active_degrees(const IdealComplex& input) {
    if (!input.complex) throw std::invalid_argument("ideal complex without boundaries");
    std::vector<int> out;
    for (const auto& [p, s] : input.summands) {
        if (p < 0) continue;
        std::size_t total = 0;
        for (const auto& m : s) total += m.size();
        if (total != input.complex->rank(p))
            throw std::invalid_argument("summands of degree " + std::to_string(p) + " do not match the complex rank");
        out.push_back(p);
    }
    return out;
}

}  // namespace

HomologyResult quotient_complex_homology(const std::vector<int>& degrees, const std::map<int, std::size_t>& sizes,
                                         const std::map<int, IntMatrix>& res, const std::map<int, IntMatrix>& maps) {
    HomologyResult out{"Z", {}};
    for (int p : degrees) {
        const std::size_t s = sizes.at(p);
        // Cycles: x with F_p x in the row space of Res_{p-1}.
        IntMatrix cycles = IntMatrix::identity(s);
        if (maps.count(p)) {
            const IntMatrix& F = maps.at(p);
            const IntMatrix& R = res.at(p - 1);
            IntMatrix G(F.rows(), s + R.rows());
            for (std::size_t i = 0; i < F.rows(); ++i) {
                for (std::size_t j = 0; j < s; ++j) G(i, j) = F(i, j);
                for (std::size_t k = 0; k < R.rows(); ++k) G(i, s + k) = -R(k, i);
            }
            auto snf = smith_dense(G, true);
            const IntMatrix& V = snf.transforms->V;
            cycles = IntMatrix(s, G.cols() - snf.rank());
            for (std::size_t j = snf.rank(); j < G.cols(); ++j)
                for (std::size_t i = 0; i < s; ++i) cycles(i, j - snf.rank()) = V(i, j);
        }
        auto zsnf = smith_dense(cycles, true);
        const std::size_t zrank = zsnf.rank();
        const IntMatrix& U = zsnf.transforms->U;
        auto coordinates = [&](const std::vector<Integer>& y) {
            std::vector<Integer> c(zrank);
            for (std::size_t i = 0; i < zrank; ++i) {
                Integer acc = 0;
                for (std::size_t k = 0; k < s; ++k) acc += U(i, k) * y[k];
                mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), zsnf.invariant_factors[i].get_mpz_t());
                c[i] = acc;
            }
            return c;
        };
        // Boundaries: relations of T_p plus the image of F_{p+1}.
        std::vector<std::vector<Integer>> gens;
        const IntMatrix& R = res.at(p);
        for (std::size_t k = 0; k < R.rows(); ++k) {
            std::vector<Integer> y(s);
            for (std::size_t i = 0; i < s; ++i) y[i] = R(k, i);
            gens.push_back(coordinates(y));
        }
        if (maps.count(p + 1)) {
            const IntMatrix& F = maps.at(p + 1);
            for (std::size_t j = 0; j < F.cols(); ++j) {
                std::vector<Integer> y(s);
                for (std::size_t i = 0; i < s; ++i) y[i] = F(i, j);
                gens.push_back(coordinates(y));
            }
        }
        IntMatrix B(zrank, gens.size());
        for (std::size_t j = 0; j < gens.size(); ++j)
            for (std::size_t i = 0; i < zrank; ++i) B(i, j) = gens[j][i];
        auto bsnf = smith_dense(B);
        DegreeHomology h;
        h.rank = zrank - bsnf.rank();
        for (const auto& f : bsnf.invariant_factors)
            if (f > 1) h.torsion.push_back(f);
        out.degrees[p] = h;
    }
    return out;
}

namespace {

template <class Dom>
FunctorResult tensor_with(const Dom& dom, const IdealComplex& input) {
    const ChainComplex& complex = *input.complex;
    const Ring& ring = complex.ring();
    const auto degrees = active_degrees(input);
    FunctorResult result;

    std::map<int, Presentation<Dom>> pres;
    bool residual = false;
    for (int p : degrees) {
        auto& pr = pres.emplace(p, present(dom, ring, input.summands.at(p))).first->second;
        residual = residual || !pr.residual.empty();
        FunctorTerm term;
        term.generators = complex.rank(p);
        term.rank = pr.survivors.size();
        term.summand_ranks = per_summand(input.summands.at(p), pr.survivors);
        result.terms[p] = term;
    }

    // Induced maps on survivors: reduce the image of each survivor.
    std::map<int, std::vector<RowOf<Dom>>> induced;  // per degree, one reduced column per survivor
    for (int p : degrees) {
        if (p == 0 || !pres.count(p - 1)) continue;
        auto cols = columns_of(dom, complex, p);
        auto& out = induced[p];
        for (std::uint32_t s : pres.at(p).survivors) out.push_back(pres.at(p - 1).elim.reduce(cols[s]));
    }

    if (!residual) {
        ChainComplex reduced(ring);
        for (int p : degrees) reduced.set_term(p, pres.at(p).survivors.size());
        for (auto& [p, cols] : induced) {
            std::vector<SparseMatrix::Entry> entries;
            const auto& below = pres.at(p - 1).position;
            for (std::size_t j = 0; j < cols.size(); ++j)
                for (const auto& [c, v] : cols[j]) entries.push_back({static_cast<std::uint32_t>(below.at(c)), static_cast<std::uint32_t>(j), dom.to_scalar(v)});
            reduced.set_boundary(p, SparseMatrix::from_entries(ring, reduced.rank(p - 1), reduced.rank(p), std::move(entries)));
        }
        result.homology = complex_homology(reduced);
        return result;
    }

    if constexpr (std::is_same_v<Dom, IntegerDomain>) {
        result.lattice_route = true;
        std::map<int, IntMatrix> res, maps;
        std::map<int, std::size_t> sizes;
        for (int p : degrees) {
            const auto& pr = pres.at(p);
            sizes[p] = pr.survivors.size();
            res[p] = dense_rows(pr.residual, pr.position);
        }
        for (auto& [p, cols] : induced) {
            const auto& below = pres.at(p - 1).position;
            IntMatrix F(sizes[p - 1], sizes[p]);
            for (std::size_t j = 0; j < cols.size(); ++j)
                for (const auto& [c, v] : cols[j]) F(below.at(c), j) = v;
            maps[p] = std::move(F);
        }
        result.homology = quotient_complex_homology(degrees, sizes, res, maps);
        result.homology.ring = ring.descriptor() + " delta=" + ring.delta_descriptor();
        for (int p : degrees) {
            auto& term = result.terms[p];
            auto tor = smith_dense(res[p]);
            term.rank = sizes[p] - tor.rank();
            for (const auto& f : tor.invariant_factors)
                if (f > 1) term.torsion.push_back(f);
        }
        return result;
    } else {
        throw std::logic_error("non-unit relation over a field");
    }
}

// A basis of the functionals killing every relation row, with a map that
// reads coordinates off any such functional.
template <class Dom>
struct KernelBasis {
    std::vector<RowOf<Dom>> vectors;
    std::function<std::vector<typename Dom::Value>(const std::map<std::uint32_t, typename Dom::Value>&)> coordinates;
};

template <class Dom>
KernelBasis<Dom> kernel_of(const Dom& dom, const UnitElimination<Dom>& elim) {
    KernelBasis<Dom> out;
    const auto free = elim.free_columns();
    auto residual = elim.residual();
    if (residual.empty()) {
        out.vectors = elim.kernel_basis();
        out.coordinates = [dom, free](const std::map<std::uint32_t, typename Dom::Value>& g) {
            std::vector<typename Dom::Value> c(free.size(), typename Dom::Value{});
            for (std::size_t i = 0; i < free.size(); ++i) {
                auto it = g.find(free[i]);
                if (it != g.end()) c[i] = it->second;
            }
            return c;
        };
        return out;
    }
    if constexpr (std::is_same_v<Dom, IntegerDomain>) {
        auto snf = smith_dense(dense_rows(residual, index_of(free)), true);
        const std::size_t r = snf.rank();
        const IntMatrix V = snf.transforms->V, Vi = snf.transforms->V_inverse;
        for (std::size_t j = r; j < free.size(); ++j) {
            RowOf<Dom> values;
            for (std::size_t i = 0; i < free.size(); ++i)
                if (V(i, j) != 0) values.emplace_back(free[i], V(i, j));
            out.vectors.push_back(elim.back_substitute(values));
        }
        out.coordinates = [free, Vi, r](const std::map<std::uint32_t, Integer>& g) {
            std::vector<Integer> c(free.size() - r);
            for (std::size_t k = r; k < free.size(); ++k)
                for (std::size_t i = 0; i < free.size(); ++i) {
                    auto it = g.find(free[i]);
                    if (it != g.end()) c[k - r] += Vi(k, i) * it->second;
                }
            return c;
        };
        return out;
    } else {
        throw std::logic_error("non-unit relation over a field");
    }
}

template <class Dom>
FunctorResult hom_with(const Dom& dom, const IdealComplex& input) {
    const ChainComplex& complex = *input.complex;
    const Ring& ring = complex.ring();
    const auto degrees = active_degrees(input);
    FunctorResult result;

    std::map<int, KernelBasis<Dom>> kernels;
    for (int p : degrees) {
        const auto& summands = input.summands.at(p);
        auto elim = eliminate_relations(dom, ring, summands);
        auto& k = kernels.emplace(p, kernel_of(dom, elim)).first->second;
        FunctorTerm term;
        term.generators = complex.rank(p);
        term.rank = k.vectors.size();
        if (elim.residual().empty()) {
            term.summand_ranks = per_summand(summands, elim.free_columns());
        } else {
            result.lattice_route = true;
            for (const auto& s : summands) term.summand_ranks.push_back(hom_solver(s, ring).size());
        }
        result.terms[p] = term;
    }

    // E_{-p} = Hom(C_p, 1); the coboundary precomposes with d_{p+1}.
    ChainComplex cochains(ring);
    for (int p : degrees) cochains.set_term(-p, kernels.at(p).vectors.size());
    for (int p : degrees) {
        if (!kernels.count(p + 1) || !complex.boundary(p + 1)) continue;
        auto cols = columns_of(dom, complex, p + 1);
        std::vector<SparseMatrix::Entry> entries;
        const auto& source = kernels.at(p).vectors;
        for (std::size_t i = 0; i < source.size(); ++i) {
            std::map<std::uint32_t, typename Dom::Value> f(source[i].begin(), source[i].end());
            std::map<std::uint32_t, typename Dom::Value> g;
            for (std::uint32_t j = 0; j < cols.size(); ++j) {
                typename Dom::Value acc{};
                bool any = false;
                for (const auto& [r, v] : cols[j]) {
                    auto it = f.find(r);
                    if (it == f.end()) continue;
                    auto term = dom.mul(v, it->second);
                    acc = any ? dom.sub(acc, dom.neg(term)) : term;
                    any = true;
                }
                if (any && !dom.is_zero(acc)) g[j] = acc;
            }
            auto c = kernels.at(p + 1).coordinates(g);
            for (std::size_t t = 0; t < c.size(); ++t)
                if (!dom.is_zero(c[t])) entries.push_back({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(i), dom.to_scalar(c[t])});
        }
        cochains.set_boundary(-p, SparseMatrix::from_entries(ring, cochains.rank(-p - 1), cochains.rank(-p), std::move(entries)));
    }
    auto h = complex_homology(cochains);
    result.homology.ring = h.ring;
    for (auto& [q, v] : h.degrees) result.homology.degrees[-q] = v;
    return result;
}

}  // namespace

const std::vector<TrivialRelation>& trivial_relations(const IdealBasis& M) {
    static std::mutex mutex;
    static std::map<std::pair<int, std::vector<std::uint32_t>>, std::vector<TrivialRelation>> cache;
    const auto& basis = DiagramBasis::get(M.n());
    std::vector<std::uint32_t> global;
    global.reserve(M.size());
    for (const auto& d : M.diagrams()) global.push_back(basis.index(d));
    auto key = std::make_pair(M.n(), global);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto relations = compute_relations(M, global);
    std::lock_guard lock(mutex);
    return cache.emplace(std::move(key), std::move(relations)).first->second;
}

FunctorResult tensor_trivial(const IdealComplex& input) {
    if (!input.complex) throw std::invalid_argument("ideal complex without boundaries");
    return with_domain(input.complex->ring(), [&](auto dom) { return tensor_with(dom, input); });
}

FunctorResult hom_trivial(const IdealComplex& input) {
    if (!input.complex) throw std::invalid_argument("ideal complex without boundaries");
    return with_domain(input.complex->ring(), [&](auto dom) { return hom_with(dom, input); });
}

std::vector<Functional> hom_solver(const IdealBasis& M, const Ring& ring) {
    return with_domain(ring, [&](auto dom) {
        auto elim = eliminate_relations(dom, ring, {M});
        auto kernel = kernel_of(dom, elim);
        std::vector<Functional> out;
        for (const auto& v : kernel.vectors) {
            Functional f;
            for (const auto& [c, x] : v) f.emplace_back(c, dom.to_scalar(x));
            out.push_back(std::move(f));
        }
        return out;
    });
}

}  // namespace dtl
