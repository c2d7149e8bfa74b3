#include "json_io.hpp"

#include "dtl/diagram.hpp"

namespace dtl::cli {

json diagram_json(const Diagram& d) {
    json edges = json::array();
    for (const auto& e : d.edges()) edges.push_back({to_string(e.first), to_string(e.second)});
    json isolated = json::array();
    for (const auto& v : d.isolated()) isolated.push_back(to_string(v));
    return {{"n", d.n()},
            {"text", to_text(d)},
            {"edges", edges},
            {"isolated", isolated},
            {"propagating", propagating_count(d)},
            {"left_link_state", left_link_state(d).to_string()},
            {"right_link_state", right_link_state(d).to_string()}};
}

json link_state_json(const LinkState& p) {
    json cups = json::array();
    for (int v = 1; v <= p.n(); ++v)
        if (auto w = p.cup_partner(v); w && *w > v) cups.push_back({v, *w});
    json isolated = json::array();
    for (int v = 1; v <= p.n(); ++v)
        if (p.is_isolated(v)) isolated.push_back(v);
    return {{"n", p.n()}, {"text", p.to_string()}, {"defects", p.defects()}, {"cups", cups}, {"isolated", isolated}};
}

json matrix_json(const SparseMatrix& m) {
    json entries = json::array();
    for (const auto& e : m.entries()) entries.push_back({e.row, e.col, m.ring().format(e.value)});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

SparseMatrix matrix_from_json(const json& j, const Ring& ring) {
    const std::size_t rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
    std::vector<SparseMatrix::Entry> entries;
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 3) throw std::invalid_argument("matrix entries are [row, col, coeff] triples");
        const auto& c = e[2];
        Scalar value = c.is_string() ? ring.parse_element(c.get<std::string>())
                                     : ring.from_integer(Integer(c.get<long>()));
        entries.push_back({e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(), value});
    }
    return SparseMatrix::from_entries(ring, rows, cols, std::move(entries));
}

json homology_json(const HomologyResult& h) {
    json out = json::array();
    for (const auto& [p, d] : h.degrees) {
        json torsion = json::array();
        for (const auto& t : d.torsion) torsion.push_back(t.get_str());
        out.push_back({{"degree", p}, {"betti", d.rank}, {"torsion", torsion}});
    }
    return out;
}

json certificate_json(const IdempotentCertificate& c) {
    return {{"link_state", c.p.to_string()},
            {"idempotent", diagram_json(c.e)},
            {"conditions", {{"c1", c.conditions.c1}, {"c2", c.conditions.c2}, {"c3", c.conditions.c3}, {"c4", c.conditions.c4}}},
            {"unit_verified", c.unit_verified}};
}

json certificate_json(const GeneratorCertificate& c) {
    json out = {{"ideal", c.ideal},
                {"generator", to_text(c.e)},
                {"member", c.member},
                {"idempotent", c.idempotent},
                {"unit", c.unit},
                {"passed", c.passed()}};
    if (c.unit_witness) out["unit_witness"] = to_text(*c.unit_witness);
    if (!c.passed()) out["failure"] = c.failure();
    return out;
}

json complex_json(const ChainComplex& c, bool with_matrices) {
    json ranks = json::object();
    for (int p : c.degrees()) ranks[std::to_string(p)] = c.rank(p);
    json out = {{"ring", c.ring().descriptor()}, {"delta", c.ring().delta_descriptor()}, {"ranks", ranks}};
    if (with_matrices) {
        json boundaries = json::object();
        for (int p : c.degrees())
            if (c.rank(p - 1) > 0 || p - 1 == *c.min_degree()) boundaries[std::to_string(p)] = matrix_json(c.boundary_or_zero(p));
        out["boundaries"] = boundaries;
        json labels = json::object();
        for (int p : c.degrees()) labels[std::to_string(p)] = c.labels(p);
        out["labels"] = labels;
    }
    return out;
}

}  // namespace dtl::cli
