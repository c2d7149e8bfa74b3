#include <doctest.h>

#include <set>

#include "dtl/algebra.hpp"
#include "dtl/ideals.hpp"
#include "dtl/link_state.hpp"

using namespace dtl;

namespace {

Diagram D(const char* text) { return parse_diagram(text); }

std::set<Diagram> members(const IdealBasis& J) { return {J.diagrams().begin(), J.diagrams().end()}; }

// Independent validity oracle for the text form of a link state.
bool valid_link_text(const std::string& s) {
    std::vector<int> open;
    for (std::size_t v = 0; v < s.size(); ++v) {
        if (s[v] == '(') open.push_back(static_cast<int>(v));
        else if (s[v] == ')') {
            if (open.empty()) return false;
            open.pop_back();
        } else if (s[v] == 'D') {
            if (!open.empty()) return false;
        }
    }
    return open.empty();
}

std::set<std::set<int>> nonempty_subsets(int n) {
    std::set<std::set<int>> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::set<int> s;
        for (int j = 0; j < n; ++j)
            if (mask & (1u << j)) s.insert(j + 1);
        out.insert(s);
    }
    return out;
}

IdealBasis intersect_L(int n, const std::set<int>& U) {
    std::vector<IdealBasis> parts;
    for (int i : U) parts.push_back(ideal_L(n, i));
    return intersect(parts);
}

bool has_consecutive(const std::set<int>& U) {
    for (int i : U)
        if (U.count(i + 1)) return true;
    return false;
}

}  // namespace

TEST_CASE("link states of diagrams") {
    Diagram six = make_diagram(6, {{Vertex::left(1), Vertex::left(3)},
                                   {Vertex::left(4), Vertex::right(1)},
                                   {Vertex::left(5), Vertex::right(5)},
                                   {Vertex::right(3), Vertex::right(4)}});
    CHECK(right_link_state(six).to_string() == "DO()DO");
    CHECK(left_link_state(six).to_string() == "(O)DDO");
    CHECK(right_link_state(D("D2:(L1,L2)(R1,R2)")).to_string() == "()");
    CHECK(right_link_state(all_propagating(4)).to_string() == "DDDD");
    auto p = LinkState::parse("DO()DO");
    CHECK(p.cup_partner(3) == 4);
    CHECK(p.defects() == std::vector<int>{1, 5});
}

TEST_CASE("link state validation") {
    CHECK_THROWS_AS(LinkState::parse("(D)"), LinkStateError);
    CHECK_THROWS_AS(LinkState::parse("(("), LinkStateError);
    CHECK_THROWS_AS(LinkState::parse("DX"), LinkStateError);
    try {
        LinkState::parse("(D)");
    } catch (const LinkStateError& e) {
        CHECK(e.kind() == LinkStateError::Kind::EnclosedDefect);
    }
}

TEST_CASE("enumerated link states are exactly the realized right link states") {
    CHECK(enumerate_link_states(1).size() == 2);
    auto two = enumerate_link_states(2);
    std::set<std::string> texts;
    for (const auto& p : two) texts.insert(p.to_string());
    CHECK(texts == std::set<std::string>{"DD", "DO", "OD", "OO", "()"});
    for (int n = 1; n <= 5; ++n) {
        std::set<LinkState> realized;
        for (const auto& d : DiagramBasis::get(n).diagrams()) realized.insert(right_link_state(d));
        auto all = enumerate_link_states(n);
        CHECK(std::set<LinkState>(all.begin(), all.end()) == realized);
        CHECK(std::is_sorted(all.begin(), all.end()));
        // Oracle: all strings over {D,O,(,)} that parse as valid.
        std::size_t oracle = 0;
        std::string s(static_cast<std::size_t>(n), 'D');
        const char alphabet[] = {'D', 'O', '(', ')'};
        for (unsigned code = 0; code < (1u << (2 * n)); ++code) {
            for (int v = 0; v < n; ++v) s[static_cast<std::size_t>(v)] = alphabet[(code >> (2 * v)) & 3u];
            if (valid_link_text(s)) ++oracle;
        }
        CHECK(all.size() == oracle);
    }
}

TEST_CASE("splices") {
    CHECK(splice(LinkState::parse("DD"), 1, 2).to_string() == "()");
    try {
        splice(LinkState::parse("DDD"), 1, 3);
        FAIL("expected InvalidSplice");
    } catch (const LinkStateError& e) {
        CHECK(e.kind() == LinkStateError::Kind::InvalidSplice);
        CHECK(e.vertex() == 2);
    }
    CHECK(splice(LinkState::parse("DO()DO"), 1, 5).to_string() == "(O())O");
    CHECK_THROWS_AS(splice(LinkState::parse("DO"), 1, 2), LinkStateError);

    CHECK(splice_closure(LinkState::parse("OOO")).size() == 1);
    CHECK(splice_closure(LinkState::parse("DD")).size() == 2);
    CHECK(splice_closure(LinkState::parse("DDDD")).size() == 6);
    for (int n = 1; n <= 5; ++n)
        for (const auto& p : enumerate_link_states(n))
            for (const auto& q : splice_closure(p)) {
                CHECK(valid_link_text(q.to_string()));
                CHECK(q.defect_count() <= p.defect_count());
            }
}

TEST_CASE("J ideals") {
    auto j = ideal_J(LinkState::parse("OO"));
    CHECK(members(j) == std::set<Diagram>{D("D2:"), D("D2:(L1,L2)")});
    CHECK(members(ideal_J(LinkState::parse("D"))) == std::set<Diagram>{D("D1:(L1,R1)")});
    for (int n = 1; n <= 3; ++n)
        for (const auto& p : enumerate_link_states(n)) CHECK_FALSE(find_left_closure_violation(ideal_J(p)));
}

TEST_CASE("J ideals are left ideals at n = 4" * doctest::timeout(120)) {
    for (const auto& p : enumerate_link_states(4)) CHECK_FALSE(find_left_closure_violation(ideal_J(p)));
}

TEST_CASE("K and L ideals") {
    CHECK(members(ideal_K(2, {1})) == std::set<Diagram>{D("D2:(L2,R2)"), D("D2:(L1,R2)")});
    CHECK(members(ideal_K(2, {1, 2})) == std::set<Diagram>{D("D2:"), D("D2:(L1,L2)")});
    CHECK(ideal_K(2, {1}).label() == "K_{R1}");
    CHECK_THROWS_AS(ideal_K(2, {}), IdealError);
    CHECK(members(ideal_L(2, 1)) == std::set<Diagram>{D("D2:(R1,R2)"), D("D2:(L1,L2)(R1,R2)")});
    CHECK_THROWS_AS(ideal_L(3, 3), IdealError);
    CHECK(intersect_L(3, {1, 2}).empty());
    auto l13 = intersect_L(5, {1, 3});
    CHECK(l13.contains(D("D5:(L1,L2)(L3,L4)(L5,R5)(R1,R2)(R3,R4)")));

    for (int n = 1; n <= 4; ++n) {
        for (const auto& S : nonempty_subsets(n)) {
            auto K = ideal_K(n, S);
            CHECK(K == ideal_J(k_link_state(n, S)));
            CHECK_FALSE(find_left_closure_violation(K));
        }
        for (int i = 1; i < n; ++i) CHECK_FALSE(find_left_closure_violation(ideal_L(n, i)));
    }
}

TEST_CASE("cover, disjointness and zero intersections" * doctest::timeout(120)) {
    for (int n = 1; n <= 5; ++n) {
        std::set<Diagram> covered;
        std::size_t k_total = 0;
        std::vector<IdealBasis> ks, ls;
        for (const auto& S : nonempty_subsets(n)) {
            ks.push_back(ideal_K(n, S));
            k_total += ks.back().size();
            for (const auto& d : ks.back().diagrams()) covered.insert(d);
        }
        // Pairwise disjoint: the union has as many elements as the sum.
        CHECK(covered.size() == k_total);
        std::size_t with_isolated_right = 0;
        for (const auto& d : DiagramBasis::get(n).diagrams()) {
            bool any = false;
            for (int j = 1; j <= n; ++j) any |= d.is_isolated(Vertex::right(j));
            with_isolated_right += any;
        }
        CHECK(k_total == with_isolated_right);
        for (int i = 1; i < n; ++i) {
            ls.push_back(ideal_L(n, i));
            for (const auto& d : ls.back().diagrams()) covered.insert(d);
        }
        CHECK(covered == members(augmentation_ideal_basis(n)));
        for (const auto& K : ks)
            for (const auto& L : ls) CHECK(intersect({K, L}).empty());

        for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
            std::set<int> U;
            for (int i = 0; i < n - 1; ++i)
                if (mask & (1u << i)) U.insert(i + 1);
            auto J = intersect_L(n, U);
            CHECK(J.empty() == has_consecutive(U));
            if (!has_consecutive(U)) CHECK(J == ideal_J(l_link_state(n, U)));
        }
    }
}

TEST_CASE("cup module and its isomorphism with K_full") {
    CHECK(cup_module(2) == ideal_L(2, 1));
    CHECK(cup_module(2).size() == 2);
    CHECK_THROWS_AS(cup_module(3), IdealError);
    CHECK_THROWS_AS(cup_iso_maps(5), IdealError);
    for (int n : {2, 4, 6}) {
        auto cup = cup_module(n);
        for (const auto& d : cup.diagrams()) CHECK(propagating_count(d) == 0);
        std::set<int> odd;
        for (int i = 1; i < n; i += 2) odd.insert(i);
        CHECK(cup == intersect_L(n, odd));
    }
    auto iso = cup_iso_maps(2);
    CHECK(iso.forward(D("D2:")) == D("D2:(R1,R2)"));
    CHECK(iso.backward(D("D2:(R1,R2)")) == D("D2:"));
    CHECK(iso.forward(D("D2:(L1,L2)")) == D("D2:(L1,L2)(R1,R2)"));
    CHECK(iso.backward(D("D2:(L1,L2)(R1,R2)")) == D("D2:(L1,L2)"));
    for (int n : {2, 4, 6}) {
        auto maps = cup_iso_maps(n);
        for (const auto& d : maps.k_full().diagrams()) CHECK(maps.backward(maps.forward(d)) == d);
        for (const auto& c : maps.cup().diagrams()) CHECK(maps.forward(maps.backward(c)) == c);
    }
}

TEST_CASE("sesqui-diagram paths") {
    // p = ()D glued onto e with left cup (1,2) and propagating 3 -- R3.
    auto p = LinkState::parse("()D");
    Diagram e = D("D3:(L1,L2)(L3,R3)(R1,R2)");
    SesquiDiagram s(p, e);
    CHECK(s.glued_edges().size() == 2);
    auto path = s.trace_from_defect(3);
    CHECK(path.reaches_right);
    CHECK(path.end == 3);
    CHECK(path.glued_edges.empty());
    CHECK_THROWS_AS(s.trace_from_defect(1), LinkStateError);
}
