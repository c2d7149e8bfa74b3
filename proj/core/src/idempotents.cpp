#include "dtl/idempotents.hpp"

#include <map>
#include <set>

#include "dtl/algebra.hpp"
#include "dtl/ideals.hpp"

namespace dtl {

ConditionFlags check_conditions(const LinkState& p, const Diagram& e) {
    SesquiDiagram sesqui(p, e);
    ConditionFlags flags;
    flags.c1 = right_link_state(e) == p;

    flags.c2 = true;
    for (int j = 1; j <= p.n(); ++j)
        if (p.is_isolated(j) && !(e.is_isolated(Vertex::left(j)) && e.is_isolated(Vertex::right(j)))) flags.c2 = false;

    flags.c3 = true;
    std::map<SesquiDiagram::GluedEdge, int> uses;
    for (int j : p.defects()) {
        auto path = sesqui.trace_from_defect(j);
        if (!path.reaches_right || path.end != j) flags.c3 = false;
        for (const auto& edge : path.glued_edges) ++uses[edge];
    }

    flags.c4 = true;
    for (const auto& edge : sesqui.glued_edges()) {
        auto it = uses.find(edge);
        if (it == uses.end() || it->second != 1) flags.c4 = false;
    }
    return flags;
}

Diagram find_idempotent(const LinkState& p) {
    if (p.defect_count() == 0)
        throw std::invalid_argument("find_idempotent needs a link state with a defect, got " + p.to_string());
    for (const auto& e : DiagramBasis::get(p.n()).diagrams())
        if (right_link_state(e) == p && check_conditions(p, e).all()) return e;
    throw NoIdempotentFound(p);
}

Diagram naive_candidate(const LinkState& p) {
    std::vector<Edge> edges;
    std::vector<Vertex> isolated;
    for (int j = 1; j <= p.n(); ++j) {
        if (p.is_defect(j)) {
            edges.push_back({Vertex::left(j), Vertex::right(j)});
            continue;
        }
        isolated.push_back(Vertex::left(j));
        if (auto k = p.cup_partner(j)) {
            if (*k > j) edges.push_back({Vertex::right(j), Vertex::right(*k)});
        } else {
            isolated.push_back(Vertex::right(j));
        }
    }
    return make_diagram(p.n(), edges, isolated);
}

std::optional<Diagram> unit_failure(const IdealBasis& J, const Diagram& e) {
    for (const auto& y : J.diagrams()) {
        auto out = multiply_diagrams(y, e);
        if (out.is_annihilated() || out.loops() != 0 || !(out.diagram() == y)) return y;
    }
    return std::nullopt;
}

std::string GeneratorCertificate::failure() const {
    std::string out;
    auto add = [&](const std::string& s) { out += (out.empty() ? "" : "; ") + s; };
    if (!member) add("(i) " + to_text(e) + " is not a member of " + ideal);
    if (!idempotent) add("(ii) e*e != e");
    if (!unit) add("(iii) y*e != y for y = " + (unit_witness ? to_text(*unit_witness) : std::string("?")));
    return out;
}

GeneratorCertificate assert_idempotent_generator(const IdealBasis& J, const Diagram& e) {
    GeneratorCertificate cert;
    cert.ideal = J.label();
    cert.e = e;
    cert.member = J.contains(e);
    auto sq = multiply_diagrams(e, e);
    cert.idempotent = !sq.is_annihilated() && sq.loops() == 0 && sq.diagram() == e;
    cert.unit_witness = unit_failure(J, e);
    cert.unit = !cert.unit_witness;
    return cert;
}

IdempotentCertificate certify_link_state(const LinkState& p) {
    Diagram e = find_idempotent(p);
    return {p, e, check_conditions(p, e), verify_unit(ideal_J(p), e)};
}

std::string CupCertificate::failure() const {
    std::string out;
    auto add = [&](const std::string& s) { out += (out.empty() ? "" : "; ") + s; };
    if (!k_full.passed()) add("K_full generator: " + k_full.failure());
    if (!forward_bijective) add("forward map is not a bijection onto Cup(" + std::to_string(n) + ")");
    if (!backward_bijective) add("backward map is not a bijection onto K_full");
    if (!mutually_inverse) add("cup maps are not mutually inverse");
    if (!forward_linear) add("forward map does not commute with left multiplication");
    if (!backward_linear) add("backward map does not commute with left multiplication");
    return out;
}

namespace {

// Compares f(a*m) with a*f(m); both sides are either annihilated or the same
// power of delta times the same diagram.
template <class Map>
bool commutes_with_left_action(int n, const IdealBasis& domain, Map&& f) {
    try {
        for (const auto& a : DiagramBasis::get(n).diagrams()) {
            for (const auto& m : domain.diagrams()) {
                auto lhs = multiply_diagrams(a, m);
                auto rhs = multiply_diagrams(a, f(m));
                if (lhs.is_annihilated() != rhs.is_annihilated()) return false;
                if (lhs.is_annihilated()) continue;
                if (lhs.loops() != rhs.loops() || !(f(lhs.diagram()) == rhs.diagram())) return false;
            }
        }
    } catch (const IdealError&) {
        return false;
    }
    return true;
}

}  // namespace

CupCertificate certify_cup_module(int n) {
    CupIsomorphism iso(n);
    CupCertificate cert;
    cert.n = n;
    cert.k_full = assert_idempotent_generator(iso.k_full(), empty_diagram(n));

    std::set<Diagram> images;
    bool into = true;
    for (const auto& d : iso.k_full().diagrams()) {
        try {
            Diagram image = iso.forward(d);
            into = into && iso.cup().contains(image);
            images.insert(image);
        } catch (const IdealError&) {
            into = false;
        }
    }
    cert.forward_bijective = into && images.size() == iso.cup().size() && iso.k_full().size() == iso.cup().size();

    std::set<Diagram> preimages;
    into = true;
    for (const auto& c : iso.cup().diagrams()) {
        Diagram back = iso.backward(c);
        into = into && iso.k_full().contains(back);
        preimages.insert(back);
    }
    cert.backward_bijective = into && preimages.size() == iso.k_full().size();

    cert.mutually_inverse = cert.forward_bijective && cert.backward_bijective;
    if (cert.mutually_inverse) {
        for (const auto& d : iso.k_full().diagrams())
            if (!(iso.backward(iso.forward(d)) == d)) cert.mutually_inverse = false;
        for (const auto& c : iso.cup().diagrams())
            if (!(iso.forward(iso.backward(c)) == c)) cert.mutually_inverse = false;
    }
    if (cert.mutually_inverse) {
        cert.forward_linear = commutes_with_left_action(n, iso.k_full(), [&](const Diagram& d) { return iso.forward(d); });
        cert.backward_linear = commutes_with_left_action(n, iso.cup(), [&](const Diagram& d) { return iso.backward(d); });
    }
    return cert;
}

}  // namespace dtl
