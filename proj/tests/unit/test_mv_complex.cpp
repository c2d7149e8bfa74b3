#include <doctest.h>

#include <set>

#include "dtl/algebra.hpp"
#include "dtl/ideals.hpp"
#include "dtl/mayer_vietoris.hpp"

using namespace dtl;

namespace {

const Cover& cover(int n) {
    static std::map<int, Cover> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_cover(n)).first;
    return it->second;
}

const MVComplex& symbolic(int n) {
    static std::map<int, MVComplex> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_mv_complex(cover(n), Ring::polynomial())).first;
    return it->second;
}

// Nonconsecutive subsets of {1..m} of size k.
std::size_t sparse_subsets(int m, int k) {
    std::size_t count = 0;
    for (unsigned mask = 0; mask < (1u << m); ++mask)
        if (__builtin_popcount(mask) == k && (mask & (mask >> 1)) == 0) ++count;
    return count;
}

}  // namespace

TEST_CASE("cover size and order") {
    CHECK(cover(2).width() == 4);
    CHECK(cover(3).width() == 9);
    for (int n = 1; n <= 5; ++n) {
        const auto& c = cover(n);
        CHECK(c.width() == (1u << n) - 1 + (n - 1));
        CHECK(c.ideals.front().label() == "K_{R1}");
        if (n > 1) CHECK(c.ideals.back().label() == "L_" + std::to_string(n - 1));
        CHECK(cover_is_complete(c));
        for (const auto& x : c.intersections) {
            CHECK(x.certificate.passed);
            CHECK(x.certificate.generator_augmentation_zero);
            if (x.certificate.kind == IntersectionCertificate::Kind::Idempotent)
                CHECK(x.basis.contains(x.certificate.generator));
            else  // the cup module is generated through its copy K_full
                CHECK(cup_iso_maps(n).k_full().contains(x.certificate.generator));
        }
    }
    CHECK(cover(2).ideals[2].label() == "K_{R1,R2}");
    std::set<Diagram> united;
    for (const auto& J : cover(2).ideals) united.insert(J.diagrams().begin(), J.diagrams().end());
    CHECK(united.size() == 8);
}

TEST_CASE("nonzero intersections are the K singletons and nonconsecutive L sets") {
    for (int n = 2; n <= 5; ++n) {
        const int k_count = (1 << n) - 1;
        std::size_t expected = k_count;
        for (int k = 1; k <= n - 1; ++k) expected += sparse_subsets(n - 1, k);
        CHECK(cover(n).intersections.size() == expected);
        for (const auto& x : cover(n).intersections) {
            if (x.subset.size() > 1) CHECK(x.subset.front() >= k_count);
            for (std::size_t i = 1; i < x.subset.size(); ++i) CHECK(x.subset[i] > x.subset[i - 1] + 1);
        }
    }
    // The cup module shows up as the top L intersection for even n.
    const auto& top = cover(4).intersections.back();
    CHECK(top.certificate.kind == IntersectionCertificate::Kind::CupIsomorphism);
    CHECK(top.basis == cup_module(4));
}

TEST_CASE("n=2 complex ranks") {
    const auto& mv = symbolic(2);
    CHECK(mv.complex.rank(-1) == 1);
    CHECK(mv.complex.rank(0) == 9);
    CHECK(mv.complex.rank(1) == 8);
    CHECK(mv.complex.rank(2) == 0);
    CHECK(mv.top_degree() == 1);
    CHECK(mv.complex.labels(-1) == std::vector<std::string>{"1"});
    CHECK(mv.summands.at(1).size() == 4);
    CHECK(mv.summands.at(1).back() == cup_module(2));
    long euler = 0;
    for (int p : mv.complex.degrees()) euler += (p % 2 ? -1 : 1) * long(mv.complex.rank(p));
    CHECK(euler == 0);
}

TEST_CASE("n=3 has nothing in degree two") {
    CHECK(symbolic(3).complex.rank(2) == 0);
    CHECK(symbolic(3).top_degree() == 1);
}

TEST_CASE("boundary squares to zero over Z[delta]") {
    for (int n = 1; n <= 5; ++n) CHECK_FALSE(symbolic(n).complex.d2_violation());
}

TEST_CASE("boundary entries and signs") {
    const auto& mv = symbolic(4);
    const auto* d0 = mv.complex.boundary(0);
    REQUIRE(d0);
    CHECK(d0->nnz() == 1);
    for (int p = 1; p <= mv.top_degree(); ++p) {
        const auto* d = mv.complex.boundary(p);
        REQUIRE(d);
        for (const auto& e : d->entries()) {
            const Ring R = Ring::polynomial();
            CHECK((R.equal(e.value, R.one()) || R.equal(e.value, R.from_integer(-1))));
        }
        // Every basis element of a p-fold summand has p faces.
        CHECK(d->nnz() == mv.complex.rank(p) * static_cast<std::size_t>(p));
    }
}

TEST_CASE("acyclicity") {
    CHECK(verify_acyclic(symbolic(2).complex, Ring::integers(0)).vanishes());
    CHECK(verify_acyclic(symbolic(2).complex, Ring::integers(1)).vanishes());
    CHECK(verify_acyclic(symbolic(4).complex, Ring::prime_field(2, 1)).vanishes());
    for (int n = 1; n <= 4; ++n) {
        auto h = verify_acyclic(symbolic(n).complex, Ring::rationals(2));
        CHECK(h.vanishes());
        CHECK(h.degrees.count(-1));
    }
    // A complex built directly over the target ring gives the same answer.
    auto direct = build_mv_complex(cover(3), Ring::prime_field(3, 2));
    CHECK(verify_acyclic(direct.complex, Ring::prime_field(3, 2)).vanishes());
    CHECK_THROWS(verify_acyclic(direct.complex, Ring::integers(0)));
}

TEST_CASE("displayed shapes") {
    CHECK(displayed_top(2) == 1);
    CHECK(displayed_top(3) == 1);
    CHECK(displayed_top(4) == 2);
    CHECK(displayed_top(5) == 1);
    CHECK(displayed_top(6) == 3);
    for (int n : {2, 3, 4}) {
        auto report = check_display_shape(symbolic(n));
        CHECK(report.mismatches.empty());
        CHECK_FALSE(report.note);
        CHECK(report.generic_top == report.displayed_top);
    }
    auto five = check_display_shape(symbolic(5));
    CHECK(five.mismatches.empty());
    CHECK(five.generic_top == 2);
    REQUIRE(five.note);
    CHECK(five.note->find("degree 2") != std::string::npos);
    CHECK(symbolic(5).complex.rank(2) > 0);
}

TEST_CASE("even display at n=6 ends in the cup module") {
    auto mv = build_mv_complex(build_cover(6), Ring::integers(0));
    auto report = check_display_shape(mv);
    CHECK(report.mismatches.empty());
    CHECK(report.generic_top == 3);
    CHECK(mv.summands.at(3).size() == 1);
}

TEST_CASE("functors on the resolution") {
    for (int n = 1; n <= 3; ++n)
        for (const Ring& ring : {Ring::integers(0), Ring::integers(2), Ring::prime_field(2, 1), Ring::rationals(-1)}) {
            auto mv = build_mv_complex(cover(n), ring);
            auto tor = tensor_trivial(mv.resolution());
            auto ext = hom_trivial(mv.resolution());
            CHECK(tor.homology.concentrated_in(0));
            CHECK(ext.homology.concentrated_in(0));
            CHECK_FALSE(tor.lattice_route);
            CHECK_FALSE(ext.lattice_route);
            CHECK(tor.terms.at(0).rank == 1);
            for (const auto& [p, term] : tor.terms)
                if (p > 0) CHECK(term.rank == 0);
            CHECK(functor_cross_check(mv, cover(n), tor, ext).empty());
        }
}

TEST_CASE("functor cross-check reports disagreements") {
    auto mv = build_mv_complex(cover(2), Ring::integers(0));
    auto tor = tensor_trivial(mv.resolution());
    auto ext = hom_trivial(mv.resolution());
    tor.terms.at(1).summand_ranks[0] = 1;
    auto issues = functor_cross_check(mv, cover(2), tor, ext);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].find("K_{R1}") != std::string::npos);
}
