#include "dtl/classical_tl.hpp"

#include <algorithm>
#include <unordered_map>

#include "dtl/algebra.hpp"

namespace dtl {

bool is_tl_diagram(const Diagram& d) {
    for (int s = 0; s < d.slot_count(); ++s)
        if (d.partner_slot(s) == Diagram::kIsolated) return false;
    return true;
}

std::vector<Diagram> tl_basis(int n) {
    std::vector<Diagram> out;
    for (const auto& d : DiagramBasis::get(n).diagrams())
        if (is_tl_diagram(d)) out.push_back(d);
    return out;
}

std::pair<unsigned, Diagram> tl_multiply(const Diagram& first, const Diagram& second) {
    if (first.n() != second.n())
        throw DiagramError(DiagramError::Kind::SizeMismatch, "cannot multiply diagrams of different sizes");
    if (!is_tl_diagram(first) || !is_tl_diagram(second))
        throw DiagramError(DiagramError::Kind::Malformed, "Temperley-Lieb diagrams have no isolated vertices");
    auto out = multiply_diagrams(first, second);
    // Without isolated vertices every middle path closes up or runs through.
    if (out.is_annihilated()) throw std::logic_error("perfect matchings annihilated");
    return {out.loops(), out.diagram()};
}

HomologyResult tl_bar_tor(int n, const Ring& ring, int max_degree) {
    const auto identity = all_propagating(n);
    std::vector<Diagram> ideal_basis;
    for (const auto& d : tl_basis(n))
        if (!(d == identity)) ideal_basis.push_back(d);
    std::unordered_map<Diagram, std::uint32_t> index;
    for (std::uint32_t i = 0; i < ideal_basis.size(); ++i) index.emplace(ideal_basis[i], i);

    AugmentedIdeal ideal;
    ideal.dimension = ideal_basis.size();
    ideal.multiply = [ideal_basis, index](std::uint32_t a, std::uint32_t b) -> std::optional<std::pair<std::uint32_t, unsigned>> {
        auto [loops, d] = tl_multiply(ideal_basis[a], ideal_basis[b]);
        return std::make_pair(index.at(d), loops);
    };
    return bar_homology(ideal, ring, max_degree);
}

}  // namespace dtl
