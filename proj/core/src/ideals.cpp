#include "dtl/ideals.hpp"

#include <algorithm>

#include "dtl/algebra.hpp"

namespace dtl {

IdealBasis::IdealBasis(int n, std::string label, std::vector<Diagram> diagrams)
    : n_(n), label_(std::move(label)), diagrams_(std::move(diagrams)) {
    std::sort(diagrams_.begin(), diagrams_.end());
    diagrams_.erase(std::unique(diagrams_.begin(), diagrams_.end()), diagrams_.end());
    for (const auto& d : diagrams_) {
        if (d.n() != n_) throw DiagramError(DiagramError::Kind::SizeMismatch, "ideal member of the wrong height");
        keys_.insert(d.key());
    }
}

std::optional<std::size_t> IdealBasis::position(const Diagram& d) const {
    auto it = std::lower_bound(diagrams_.begin(), diagrams_.end(), d);
    if (it == diagrams_.end() || !(*it == d)) return std::nullopt;
    return static_cast<std::size_t>(it - diagrams_.begin());
}

IdealBasis augmentation_ideal_basis(int n) {
    std::vector<Diagram> members;
    for (const auto& d : DiagramBasis::get(n).diagrams())
        if (propagating_count(d) < n) members.push_back(d);
    return IdealBasis(n, "I", std::move(members));
}

std::optional<std::pair<Diagram, Diagram>> find_left_closure_violation(const IdealBasis& ideal) {
    for (const auto& d : DiagramBasis::get(ideal.n()).diagrams()) {
        for (const auto& m : ideal.diagrams()) {
            auto outcome = multiply_diagrams(d, m);
            if (!outcome.is_annihilated() && !ideal.contains(outcome.diagram())) return std::pair{d, m};
        }
    }
    return std::nullopt;
}

namespace {

template <class Pred>
std::vector<Diagram> select(int n, Pred&& pred) {
    std::vector<Diagram> out;
    for (const auto& d : DiagramBasis::get(n).diagrams())
        if (pred(d)) out.push_back(d);
    return out;
}

std::set<int> right_isolated(const Diagram& d) {
    std::set<int> out;
    for (int j = 1; j <= d.n(); ++j)
        if (d.is_isolated(Vertex::right(j))) out.insert(j);
    return out;
}

bool has_right_cup(const Diagram& d, int i) {
    auto p = d.partner(Vertex::right(i));
    return p && *p == Vertex::right(i + 1);
}

}  // namespace

IdealBasis ideal_J(const LinkState& p) {
    auto closure = splice_closure(p);
    std::set<std::string> allowed;
    for (const auto& q : closure) allowed.insert(q.to_string());
    return IdealBasis(p.n(), "J_" + p.to_string(), select(p.n(), [&](const Diagram& d) {
                          return allowed.count(right_link_state(d).to_string()) > 0;
                      }));
}

std::string k_label(const std::set<int>& S) {
    std::string out = "K_{";
    bool first = true;
    for (int j : S) {
        if (!first) out += ",";
        first = false;
        out += "R" + std::to_string(j);
    }
    return out + "}";
}

IdealBasis ideal_K(int n, const std::set<int>& S) {
    if (S.empty()) throw IdealError("K_S needs a nonempty subset S");
    if (*S.begin() < 1 || *S.rbegin() > n) throw IdealError("K_S subset out of range");
    return IdealBasis(n, k_label(S), select(n, [&](const Diagram& d) { return right_isolated(d) == S; }));
}

IdealBasis ideal_L(int n, int i) {
    if (i < 1 || i > n - 1) throw IdealError("L_i needs 1 <= i <= n-1, got i=" + std::to_string(i));
    return IdealBasis(n, "L_" + std::to_string(i), select(n, [&](const Diagram& d) {
                          return right_isolated(d).empty() && has_right_cup(d, i);
                      }));
}

IdealBasis intersect(const std::vector<IdealBasis>& ideals) {
    if (ideals.empty()) throw IdealError("intersection of no ideals");
    const int n = ideals.front().n();
    std::string label;
    for (const auto& ideal : ideals) {
        if (ideal.n() != n) throw DiagramError(DiagramError::Kind::SizeMismatch, "intersecting ideals of different heights");
        label += (label.empty() ? "" : " & ") + ideal.label();
    }
    std::vector<Diagram> members;
    for (const auto& d : ideals.front().diagrams())
        if (std::all_of(ideals.begin() + 1, ideals.end(), [&](const IdealBasis& J) { return J.contains(d); }))
            members.push_back(d);
    return IdealBasis(n, label, std::move(members));
}

IdealBasis cup_module(int n) {
    if (n < 2 || n % 2 != 0) throw IdealError("Cup(n) needs even n, got n=" + std::to_string(n));
    return IdealBasis(n, "Cup(" + std::to_string(n) + ")", select(n, [&](const Diagram& d) {
                          for (int i = 1; i < n; i += 2)
                              if (!has_right_cup(d, i)) return false;
                          return true;
                      }));
}

LinkState k_link_state(int n, const std::set<int>& S) {
    std::string text(static_cast<std::size_t>(n), 'D');
    for (int j : S) text.at(static_cast<std::size_t>(j - 1)) = 'O';
    return LinkState::parse(text);
}

LinkState l_link_state(int n, const std::set<int>& U) {
    std::string text(static_cast<std::size_t>(n), 'D');
    for (int i : U) {
        if (i < 1 || i >= n || U.count(i + 1)) throw IdealError("cup positions must be non-consecutive and in 1..n-1");
        text[static_cast<std::size_t>(i - 1)] = '(';
        text[static_cast<std::size_t>(i)] = ')';
    }
    return LinkState::parse(text);
}

// --- cup isomorphism ----------------------------------------------------------

namespace {

Diagram make_cup_diagram(int n) {
    if (n < 2 || n % 2 != 0) throw IdealError("the cup isomorphism needs even n, got n=" + std::to_string(n));
    std::vector<Edge> edges;
    for (int i = 1; i < n; i += 2) edges.push_back({Vertex::right(i), Vertex::right(i + 1)});
    std::vector<Vertex> isolated;
    for (int i = 1; i <= n; ++i) isolated.push_back(Vertex::left(i));
    return make_diagram(n, edges, isolated);
}

std::set<int> all_right(int n) {
    std::set<int> out;
    for (int j = 1; j <= n; ++j) out.insert(j);
    return out;
}

}  // namespace

CupIsomorphism::CupIsomorphism(int n)
    : n_(n), d_cup_(make_cup_diagram(n)), k_full_(ideal_K(n, all_right(n))), cup_(cup_module(n)) {}

Diagram CupIsomorphism::forward(const Diagram& d) const {
    auto outcome = multiply_diagrams(d, d_cup_);
    if (outcome.is_annihilated() || outcome.loops() != 0)
        throw IdealError("right multiplication by d_cup is not a loop-free product on " + to_text(d));
    return outcome.diagram();
}

Diagram CupIsomorphism::backward(const Diagram& d) const {
    if (d.n() != n_) throw DiagramError(DiagramError::Kind::SizeMismatch, "cup isomorphism applied to a diagram of the wrong height");
    Diagram::SlotArray partner;
    partner.fill(Diagram::kIsolated);
    for (int s = 0; s < n_; ++s) {
        auto p = d.partner_slot(s);
        if (p != Diagram::kIsolated && p < n_) partner[static_cast<std::size_t>(s)] = p;
    }
    return Diagram::from_slots_unchecked(n_, partner);
}

CupIsomorphism cup_iso_maps(int n) { return CupIsomorphism(n); }

}  // namespace dtl
