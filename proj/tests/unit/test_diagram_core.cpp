#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "dtl/algebra.hpp"
#include "dtl/diagram.hpp"
#include "dtl/ideal_basis.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dtl;
using namespace dtl::testing;

namespace {

// Independent product: explicit multigraph on 3n vertices with BFS over
// edge ids. Left column 0..n-1, middle n..2n-1, right 2n..3n-1.
MultiplicationOutcome oracle_multiply(const Diagram& a, const Diagram& b) {
    const int n = a.n();
    struct E { int u, v; };
    std::vector<E> edges;
    auto place = [&](const Diagram& d, int left_offset, int right_offset) {
        for (auto [x, y] : d.edges()) {
            auto id = [&](Vertex v) { return (v.side == Side::Left ? left_offset : right_offset) + v.index - 1; };
            edges.push_back({id(x), id(y)});
        }
    };
    place(a, 0, n);
    place(b, n, 2 * n);
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(3 * n));
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        incident[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].u)].push_back(e);
        incident[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].v)].push_back(e);
    }
    std::vector<int> component(static_cast<std::size_t>(3 * n), -1);
    unsigned loops = 0;
    bool annihilated = false;
    std::vector<Edge> result_edges;
    for (int start = 0; start < 3 * n; ++start) {
        if (component[static_cast<std::size_t>(start)] >= 0 || incident[static_cast<std::size_t>(start)].empty()) continue;
        std::vector<int> stack{start}, members;
        component[static_cast<std::size_t>(start)] = start;
        std::set<int> edge_ids;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int e : incident[static_cast<std::size_t>(v)]) {
                edge_ids.insert(e);
                int w = edges[static_cast<std::size_t>(e)].u == v ? edges[static_cast<std::size_t>(e)].v : edges[static_cast<std::size_t>(e)].u;
                if (component[static_cast<std::size_t>(w)] < 0) {
                    component[static_cast<std::size_t>(w)] = start;
                    stack.push_back(w);
                }
            }
        }
        if (edge_ids.size() == members.size()) {
            ++loops;
            continue;
        }
        std::vector<int> ends;
        for (int v : members)
            if (incident[static_cast<std::size_t>(v)].size() == 1) ends.push_back(v);
        REQUIRE(ends.size() == 2);
        bool outer0 = ends[0] < n || ends[0] >= 2 * n, outer1 = ends[1] < n || ends[1] >= 2 * n;
        if (!outer0 || !outer1) {
            annihilated = true;
            continue;
        }
        auto to_vertex = [&](int v) { return v < n ? Vertex::left(v + 1) : Vertex::right(v - 2 * n + 1); };
        result_edges.push_back({to_vertex(ends[0]), to_vertex(ends[1])});
    }
    if (annihilated) return MultiplicationOutcome::annihilated();
    std::vector<Vertex> isolated;
    std::set<Vertex> used;
    for (auto [x, y] : result_edges) used.insert(x), used.insert(y);
    for (int i = 1; i <= n; ++i) {
        if (!used.count(Vertex::left(i))) isolated.push_back(Vertex::left(i));
        if (!used.count(Vertex::right(i))) isolated.push_back(Vertex::right(i));
    }
    return MultiplicationOutcome::product(loops, make_diagram(n, result_edges, isolated));
}

Diagram D(const char* text) { return parse_diagram(text); }

const Ring& zdelta() {
    static const Ring ring = Ring::polynomial();
    return ring;
}

AlgebraElement basis(const Diagram& d) { return AlgebraElement::basis_element(zdelta(), d); }

}  // namespace

TEST_CASE("basis counts match brute force and Motzkin numbers") {
    auto motzkin = motzkin_numbers(11);
    const long expected[] = {2, 9, 51, 323, 2188};
    for (int n = 1; n <= 5; ++n) {
        auto basis = enumerate_basis(n);
        CHECK(static_cast<long>(basis.size()) == expected[n - 1]);
        CHECK(static_cast<long>(basis.size()) == motzkin[static_cast<std::size_t>(2 * n)]);
        if (n <= 4) {
            auto oracle = brute_force_matchings(n);
            CHECK(oracle.size() == basis.size());
            std::set<std::vector<std::pair<int, int>>> ours;
            for (const auto& d : basis) {
                std::vector<std::pair<int, int>> chords;
                for (auto [x, y] : d.edges()) {
                    int a = boundary_position(n, x), b = boundary_position(n, y);
                    chords.emplace_back(std::min(a, b), std::max(a, b));
                }
                std::sort(chords.begin(), chords.end());
                ours.insert(chords);
            }
            CHECK(ours == oracle);
        }
    }
}

TEST_CASE("basis order is the canonical order and is stable") {
    for (int n = 1; n <= 4; ++n) {
        auto a = enumerate_basis(n), b = enumerate_basis(n);
        CHECK(a == b);
        CHECK(std::is_sorted(a.begin(), a.end()));
        for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].slot_edges() < a[i].slot_edges());
    }
}

TEST_CASE("make_diagram validation") {
    Diagram u = make_diagram(2, {{Vertex::left(1), Vertex::left(2)}, {Vertex::right(1), Vertex::right(2)}});
    CHECK(to_text(u) == "D2:(L1,L2)(R1,R2)");
    CHECK(propagating_count(u) == 0);

    try {
        make_diagram(2, {{Vertex::left(1), Vertex::right(2)}, {Vertex::left(2), Vertex::right(1)}});
        FAIL("expected NonPlanar");
    } catch (const DiagramError& e) {
        CHECK(e.kind() == DiagramError::Kind::NonPlanar);
        REQUIRE(e.crossing().has_value());
        std::set<Edge> reported{e.crossing()->first, e.crossing()->second};
        CHECK(reported == std::set<Edge>{{Vertex::left(1), Vertex::right(2)}, {Vertex::left(2), Vertex::right(1)}});
    }

    try {
        make_diagram(2, {{Vertex::left(1), Vertex::left(2)}, {Vertex::left(1), Vertex::right(1)}});
        FAIL("expected DuplicateVertex");
    } catch (const DiagramError& e) {
        CHECK(e.kind() == DiagramError::Kind::DuplicateVertex);
    }
    try {
        make_diagram(2, {{Vertex::left(1), Vertex::left(1)}});
        FAIL("expected SelfEdge");
    } catch (const DiagramError& e) {
        CHECK(e.kind() == DiagramError::Kind::SelfEdge);
    }
    std::vector<Edge> edges{{Vertex::left(1), Vertex::left(2)}};
    std::vector<Vertex> isolated{Vertex::right(1)};
    CHECK_THROWS_AS(make_diagram(2, edges, isolated), DiagramError);

    Diagram six = make_diagram(6, {{Vertex::left(1), Vertex::left(3)},
                                   {Vertex::left(4), Vertex::right(1)},
                                   {Vertex::left(5), Vertex::right(5)},
                                   {Vertex::right(3), Vertex::right(4)}});
    CHECK(propagating_count(six) == 2);
    CHECK(six.is_isolated(Vertex::left(2)));
}

TEST_CASE("text format round trips") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& d : enumerate_basis(n)) CHECK(parse_diagram(to_text(d)) == d);
    CHECK_THROWS_AS(parse_diagram("D2:(L1,R2)(L2,R1)"), DiagramError);
    CHECK_THROWS_AS(parse_diagram("D2:(L1,L3)"), DiagramError);
    CHECK_THROWS_AS(parse_diagram("X2:"), DiagramError);
    CHECK(to_text(parse_diagram("D3:(R2,L1)")) == "D3:(L1,R2)");
}

TEST_CASE("worked product examples") {
    Diagram u = D("D2:(L1,L2)(R1,R2)");
    auto uu = multiply_diagrams(u, u);
    REQUIRE_FALSE(uu.is_annihilated());
    CHECK(uu.loops() == 1);
    CHECK(uu.diagram() == u);

    auto p = multiply_diagrams(D("D2:(L2,R1)"), D("D2:(L1,R2)"));
    REQUIRE_FALSE(p.is_annihilated());
    CHECK(p.loops() == 0);
    CHECK(p.diagram() == D("D2:(L2,R2)"));

    CHECK(multiply_diagrams(D("D2:(L1,R1)(L2,R2)"), D("D2:(L1,R1)")).is_annihilated());
    CHECK(multiply_diagrams(u, D("D2:(R1,R2)")).is_annihilated());

    CHECK(multiply_elements(basis(u), basis(u)) ==
          [&] {
              AlgebraElement x(zdelta(), 2);
              x.add_term(u, Polynomial::delta());
              return x;
          }());
    CHECK(to_string(uu) == "delta^1 * D2:(L1,L2)(R1,R2)");
    CHECK_THROWS_AS(multiply_diagrams(u, D("D3:")), DiagramError);
}

TEST_CASE("identity element of dTL_2 has the four terms") {
    auto one = identity_element(2, zdelta());
    std::set<Diagram> expected{D("D2:(L1,R1)(L2,R2)"), D("D2:(L1,R1)"), D("D2:(L2,R2)"), D("D2:")};
    std::set<Diagram> got;
    for (const auto& [d, c] : one.terms()) {
        got.insert(d);
        CHECK(zdelta().equal(c, zdelta().one()));
    }
    CHECK(got == expected);
    CHECK(identity_element(1, zdelta()).terms().size() == 2);
}

TEST_CASE("multiplication agrees with the multigraph oracle") {
    for (int n = 1; n <= 3; ++n) {
        const auto& b = DiagramBasis::get(n).diagrams();
        for (const auto& x : b)
            for (const auto& y : b) CHECK(multiply_diagrams(x, y) == oracle_multiply(x, y));
    }
    for (int trial = 0; trial < 3000; ++trial) {
        int n = testing::uniform_int(4, 6);
        const auto& x = testing::random_diagram(n);
        const auto& y = testing::random_diagram(n);
        CHECK(multiply_diagrams(x, y) == oracle_multiply(x, y));
    }
}

TEST_CASE("product properties: planarity, propagating bound, loop-free unglued factors") {
    for (int n = 1; n <= 4; ++n) {
        const auto& b = DiagramBasis::get(n).diagrams();
        for (const auto& x : b) {
            for (const auto& y : b) {
                auto out = multiply_diagrams(x, y);
                if (out.is_annihilated()) continue;
                std::vector<std::uint8_t> partner(out.diagram().slots().begin(), out.diagram().slots().begin() + 2 * n);
                CHECK_NOTHROW(Diagram::from_slots(n, partner));
                CHECK(propagating_count(out.diagram()) <= std::min(propagating_count(x), propagating_count(y)));
                bool x_right_cups = false, y_left_cups = false;
                for (auto [a, c] : x.edges()) x_right_cups |= a.side == Side::Right && c.side == Side::Right;
                for (auto [a, c] : y.edges()) y_left_cups |= a.side == Side::Left && c.side == Side::Left;
                if (!x_right_cups || !y_left_cups) CHECK(out.loops() == 0);
            }
        }
    }
}

TEST_CASE("associativity over Z[delta]") {
    SUBCASE("exhaustive at n = 2") {
        const auto& b = DiagramBasis::get(2).diagrams();
        for (const auto& x : b)
            for (const auto& y : b)
                for (const auto& z : b)
                    CHECK((basis(x) * basis(y)) * basis(z) == basis(x) * (basis(y) * basis(z)));
    }
    SUBCASE("random at n = 3, 4") {
        for (int n = 3; n <= 4; ++n)
            for (int trial = 0; trial < 2000; ++trial) {
                auto x = basis(testing::random_diagram(n)), y = basis(testing::random_diagram(n)),
                     z = basis(testing::random_diagram(n));
                CHECK((x * y) * z == x * (y * z));
            }
    }
}

TEST_CASE("identity is a two-sided unit and idempotent") {
    for (int n = 1; n <= 4; ++n) {
        auto one = identity_element(n, zdelta());
        CHECK(one * one == one);
        for (const auto& d : DiagramBasis::get(n).diagrams()) {
            CHECK(one * basis(d) == basis(d));
            CHECK(basis(d) * one == basis(d));
        }
    }
}

TEST_CASE("bilinearity and the augmentation") {
    Ring z = Ring::integers(3);
    for (int trial = 0; trial < 200; ++trial) {
        int n = testing::uniform_int(1, 3);
        auto x = testing::random_element(z, n), y = testing::random_element(z, n), w = testing::random_element(z, n);
        CHECK(x * (y + w) == x * y + x * w);
        CHECK((y + w) * x == y * x + w * x);
        CHECK(z.equal(augmentation(x * y), z.multiply(augmentation(x), augmentation(y))));
    }
    for (int n = 1; n <= 4; ++n) CHECK(z.equal(augmentation(identity_element(n, z)), z.one()));
    CHECK(z.is_zero(augmentation(AlgebraElement::basis_element(z, D("D2:(L1,L2)(R1,R2)")))));
    CHECK_THROWS_AS(testing::random_element(z, 2) * testing::random_element(Ring::integers(2), 2), RingMismatch);
}

TEST_CASE("augmentation ideal") {
    CHECK(augmentation_ideal_basis(1).size() == 1);
    CHECK(augmentation_ideal_basis(2).size() == 8);
    for (int n = 1; n <= 3; ++n) {
        auto I = augmentation_ideal_basis(n);
        CHECK(I.size() + 1 == DiagramBasis::get(n).size());
        const auto& b = DiagramBasis::get(n).diagrams();
        // Two-sided closure.
        for (const auto& d : b)
            for (const auto& m : I.diagrams()) {
                auto left = multiply_diagrams(d, m), right = multiply_diagrams(m, d);
                if (!left.is_annihilated()) CHECK(I.contains(left.diagram()));
                if (!right.is_annihilated()) CHECK(I.contains(right.diagram()));
            }
    }
}

TEST_CASE("product table matches direct multiplication") {
    for (int n = 1; n <= 3; ++n) {
        const auto& b = DiagramBasis::get(n);
        const auto& table = ProductTable::get(n);
        for (std::uint32_t i = 0; i < b.size(); ++i)
            for (std::uint32_t j = 0; j < b.size(); ++j) {
                auto direct = multiply_diagrams(b[i], b[j]);
                auto entry = table(i, j);
                CHECK(entry.annihilated() == direct.is_annihilated());
                if (!direct.is_annihilated()) {
                    CHECK(b[entry.index()] == direct.diagram());
                    CHECK(entry.loops() == direct.loops());
                }
            }
    }
}
