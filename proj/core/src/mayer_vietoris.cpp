#include "dtl/mayer_vietoris.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "dtl/algebra.hpp"
#include "dtl/ideals.hpp"

namespace dtl {

namespace {

std::vector<std::set<int>> subsets_by_size(int n) {
    std::vector<std::set<int>> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::set<int> s;
        for (int j = 0; j < n; ++j)
            if (mask & (1u << j)) s.insert(j + 1);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return out;
}

std::string subset_text(const std::vector<int>& subset) {
    std::string out = "{";
    for (std::size_t i = 0; i < subset.size(); ++i) out += (i ? "," : "") + std::to_string(subset[i] + 1);
    return out + "}";
}

// The link state with the most defects among the members' right link
// states; a nonzero intersection is J of it.
LinkState widest_link_state(const IdealBasis& J) {
    std::optional<LinkState> best;
    for (const auto& d : J.diagrams()) {
        auto q = right_link_state(d);
        if (!best || q.defect_count() > best->defect_count()) best = q;
    }
    return *best;
}

IntersectionCertificate certify(const IdealBasis& J) {
    IntersectionCertificate cert;
    const int n = J.n();
    auto q = widest_link_state(J);
    cert.link_state = q;
    if (!(ideal_J(q) == J)) {
        cert.failure = J.label() + " is not J_" + q.to_string();
        return cert;
    }
    if (q.defect_count() == 0 && !q.is_isolated(1)) {
        // Only the cup module has neither defects nor isolated vertices.
        auto cup = certify_cup_module(n);
        cert.kind = IntersectionCertificate::Kind::CupIsomorphism;
        cert.generator = cup.k_full.e;
        cert.passed = cup.passed() && J == cup_module(n);
        if (!cert.passed) cert.failure = cup.passed() ? J.label() + " is not Cup(" + std::to_string(n) + ")" : cup.failure();
    } else {
        Diagram e = q.defect_count() > 0 ? find_idempotent(q) : empty_diagram(n);
        auto gen = assert_idempotent_generator(J, e);
        cert.generator = e;
        cert.passed = gen.passed();
        cert.failure = gen.failure();
    }
    cert.generator_augmentation_zero = propagating_count(cert.generator) < n;
    return cert;
}

}  // namespace

Cover build_cover(int n) {
    if (n < 1) throw std::invalid_argument("cover needs n >= 1");
    Cover cover;
    cover.n = n;
    for (const auto& S : subsets_by_size(n)) cover.ideals.push_back(ideal_K(n, S));
    for (int i = 1; i < n; ++i) cover.ideals.push_back(ideal_L(n, i));

    // Depth-first over increasing subsets; a zero intersection stays zero.
    const int w = static_cast<int>(cover.ideals.size());
    std::vector<Intersection> found;
    std::vector<int> subset;
    std::function<void(const IdealBasis&)> extend = [&](const IdealBasis& current) {
        found.push_back({subset, current, {}});
        for (int j = subset.back() + 1; j < w; ++j) {
            auto next = intersect({current, cover.ideals[j]});
            if (next.empty()) continue;
            subset.push_back(j);
            extend(next);
            subset.pop_back();
        }
    };
    for (int i = 0; i < w; ++i) {
        subset = {i};
        extend(cover.ideals[i]);
    }
    std::sort(found.begin(), found.end(), [](const Intersection& a, const Intersection& b) {
        if (a.subset.size() != b.subset.size()) return a.subset.size() < b.subset.size();
        return a.subset < b.subset;
    });
    for (auto& x : found) {
        x.certificate = certify(x.basis);
        if (!x.certificate.passed)
            throw CoverError("certificate failed for " + x.basis.label() + " " + subset_text(x.subset) + ": " + x.certificate.failure);
    }
    cover.intersections = std::move(found);
    return cover;
}

bool cover_is_complete(const Cover& cover) {
    std::set<Diagram> covered;
    for (const auto& J : cover.ideals) covered.insert(J.diagrams().begin(), J.diagrams().end());
    const auto I = augmentation_ideal_basis(cover.n);
    return covered == std::set<Diagram>(I.diagrams().begin(), I.diagrams().end());
}

int MVComplex::top_degree() const { return complex.max_degree().value_or(-1); }

MVComplex build_mv_complex(const Cover& cover, const Ring& ring) {
    const int n = cover.n;
    const auto& basis = DiagramBasis::get(n);
    MVComplex mv{n, ChainComplex(ring), {}, {}};

    mv.complex.set_term(-1, 1, {"1"});
    std::vector<std::string> c0;
    for (const auto& d : basis.diagrams()) c0.push_back(to_text(d));
    mv.complex.set_term(0, basis.size(), std::move(c0));
    mv.summands[0] = {IdealBasis(n, "A", basis.diagrams())};
    mv.subsets[0] = {{}};

    // Offsets of each summand inside its degree.
    std::map<std::vector<int>, std::pair<const Intersection*, std::uint32_t>> where;
    std::map<int, std::vector<std::string>> labels;
    for (const auto& x : cover.intersections) {
        const int p = static_cast<int>(x.subset.size());
        auto& lab = labels[p];
        where[x.subset] = {&x, static_cast<std::uint32_t>(lab.size())};
        for (const auto& d : x.basis.diagrams()) lab.push_back(subset_text(x.subset) + "|" + to_text(d));
        mv.summands[p].push_back(x.basis);
        mv.subsets[p].push_back(x.subset);
    }
    for (auto& [p, lab] : labels) {
        const std::size_t rank = lab.size();
        mv.complex.set_term(p, rank, std::move(lab));
    }

    const Scalar one = ring.one(), minus_one = ring.negate(ring.one());
    std::vector<SparseMatrix::Entry> eps{{0, basis.all_propagating_index(), one}};
    mv.complex.set_boundary(0, SparseMatrix::from_entries(ring, 1, basis.size(), std::move(eps)));

    for (const auto& [p, xs] : mv.subsets) {
        if (p < 1) continue;
        std::vector<SparseMatrix::Entry> entries;
        for (const auto& subset : xs) {
            const auto& [x, offset] = where.at(subset);
            for (std::size_t k = 0; k < subset.size(); ++k) {
                // #(S, j) = k: the elements of S below j.
                const Scalar& sign = k % 2 ? minus_one : one;
                std::vector<int> face = subset;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
                for (std::size_t m = 0; m < x->basis.size(); ++m) {
                    const auto& d = x->basis.diagrams()[m];
                    std::uint32_t row;
                    if (face.empty()) {
                        row = basis.index(d);
                    } else {
                        const auto& [y, face_offset] = where.at(face);
                        row = face_offset + static_cast<std::uint32_t>(*y->basis.position(d));
                    }
                    entries.push_back({row, offset + static_cast<std::uint32_t>(m), sign});
                }
            }
        }
        mv.complex.set_boundary(p, SparseMatrix::from_entries(ring, mv.complex.rank(p - 1), mv.complex.rank(p), std::move(entries)));
    }
    return mv;
}

HomologyResult verify_acyclic(const ChainComplex& complex, const Ring& ring) {
    if (complex.ring().kind() == RingKind::IntegerPolynomial) return complex_homology(complex.specialize_to(ring));
    if (!(complex.ring() == ring)) throw RingMismatch("complex is over a different ring");
    return complex_homology(complex);
}

int displayed_top(int n) {
    if (n == 2) return 1;
    if (n % 2 == 0) return n / 2;
    return std::max(1, n / 2 - 1);
}

ShapeReport check_display_shape(const MVComplex& mv) {
    const int n = mv.n;
    ShapeReport report;
    report.displayed_top = displayed_top(n);
    report.generic_top = mv.top_degree();
    const int k_count = (1 << n) - 1;

    auto summand_count = [&](int p) { return mv.subsets.count(p) ? mv.subsets.at(p).size() : std::size_t{0}; };
    auto mismatch = [&](int p, const std::string& what) {
        report.mismatches.push_back("degree " + std::to_string(p) + ": " + what);
    };
    if (mv.complex.rank(-1) != 1) mismatch(-1, "expected the trivial module");
    if (mv.complex.rank(0) != DiagramBasis::get(n).size()) mismatch(0, "expected the whole algebra");

    for (int p = 1; p <= report.displayed_top; ++p) {
        const bool cup_degree = n % 2 == 0 && p == n / 2;
        // Index subsets of L's of size p with no consecutive elements.
        std::size_t l_expected = 0;
        for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask)
            if (static_cast<int>(__builtin_popcount(mask)) == p && (mask & (mask >> 1)) == 0) ++l_expected;
        std::size_t expected = l_expected + (p == 1 ? static_cast<std::size_t>(k_count) : 0);
        if (summand_count(p) != expected)
            mismatch(p, "expected " + std::to_string(expected) + " summands, found " + std::to_string(summand_count(p)));
        if (p == 1) {
            for (int i = 0; i < k_count && i < static_cast<int>(summand_count(1)); ++i)
                if (mv.subsets.at(1)[i] != std::vector<int>{i}) mismatch(1, "K summands out of order");
        }
        if (cup_degree) {
            const auto& last = mv.summands.at(p).back();
            if (!(last == cup_module(n))) mismatch(p, "top summand is not Cup(" + std::to_string(n) + ")");
        }
    }
    for (int p = report.displayed_top + 1; p <= report.generic_top; ++p) {
        if (mv.complex.rank(p) == 0) continue;
        report.note = "n=" + std::to_string(n) + ": the generic complex has a nonzero term in degree " + std::to_string(p) +
                      " (rank " + std::to_string(mv.complex.rank(p)) + ", " + std::to_string(summand_count(p)) +
                      " intersections of L ideals) above the displayed top degree " + std::to_string(report.displayed_top) +
                      "; the generic complex is used";
        if (n % 2 == 0) mismatch(p, "unexpected term above the displayed top");
    }
    return report;
}

std::vector<std::string> functor_cross_check(const MVComplex& mv, const Cover& cover, const FunctorResult& tensor,
                                             const FunctorResult& hom) {
    std::vector<std::string> out;
    std::map<std::vector<int>, const Intersection*> by_subset;
    for (const auto& x : cover.intersections) by_subset[x.subset] = &x;
    for (const auto& [p, summands] : mv.summands) {
        const auto& t = tensor.terms.at(p).summand_ranks;
        const auto& h = hom.terms.at(p).summand_ranks;
        for (std::size_t i = 0; i < summands.size(); ++i) {
            std::size_t expected = 1;
            if (p > 0) expected = by_subset.at(mv.subsets.at(p)[i])->certificate.generator_augmentation_zero ? 0 : 1;
            if (t[i] != expected || h[i] != expected)
                out.push_back("degree " + std::to_string(p) + " summand " + summands[i].label() + ": tensor rank " +
                              std::to_string(t[i]) + ", hom rank " + std::to_string(h[i]) + ", expected " + std::to_string(expected));
        }
    }
    return out;
}

}  // namespace dtl
