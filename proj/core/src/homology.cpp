#include "dtl/homology.hpp"

#include <algorithm>

#include "dtl/smith.hpp"

namespace dtl {

void ChainComplex::set_term(int degree, std::size_t rank, std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != rank) throw std::invalid_argument("label count differs from rank");
    terms_[degree] = Term{rank, std::move(labels)};
}

void ChainComplex::set_boundary(int degree, SparseMatrix d) {
    if (!(d.ring() == ring_)) throw RingMismatch("boundary over a different ring");
    if (d.rows() != rank(degree - 1) || d.cols() != rank(degree))
        throw std::invalid_argument("boundary d_" + std::to_string(degree) + " has shape " + std::to_string(d.rows()) + "x" +
                                    std::to_string(d.cols()) + ", expected " + std::to_string(rank(degree - 1)) + "x" +
                                    std::to_string(rank(degree)));
    if (d.is_zero()) boundaries_.erase(degree);
    else boundaries_.insert_or_assign(degree, std::move(d));
}

std::size_t ChainComplex::rank(int degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? 0 : it->second.rank;
}

const std::vector<std::string>& ChainComplex::labels(int degree) const {
    static const std::vector<std::string> none;
    auto it = terms_.find(degree);
    return it == terms_.end() ? none : it->second.labels;
}

std::vector<int> ChainComplex::degrees() const {
    std::vector<int> out;
    for (const auto& [p, t] : terms_) out.push_back(p);
    return out;
}

std::optional<int> ChainComplex::min_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

std::optional<int> ChainComplex::max_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
}

const SparseMatrix* ChainComplex::boundary(int degree) const {
    auto it = boundaries_.find(degree);
    return it == boundaries_.end() ? nullptr : &it->second;
}

SparseMatrix ChainComplex::boundary_or_zero(int degree) const {
    if (const auto* d = boundary(degree)) return *d;
    return SparseMatrix(ring_, rank(degree - 1), rank(degree));
}

std::optional<int> ChainComplex::d2_violation() const {
    for (const auto& [p, d] : boundaries_) {
        const auto* below = boundary(p - 1);
        if (below && !((*below) * d).is_zero()) return p;
    }
    return std::nullopt;
}

ChainComplex ChainComplex::specialize_to(const Ring& target) const {
    ChainComplex out(target);
    out.terms_ = terms_;
    for (const auto& [p, d] : boundaries_) out.set_boundary(p, d.specialize_to(target));
    return out;
}

bool HomologyResult::vanishes() const {
    return std::all_of(degrees.begin(), degrees.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

bool HomologyResult::concentrated_in(int p) const {
    for (const auto& [q, h] : degrees) {
        if (q == p) {
            if (h.rank != 1 || !h.torsion.empty()) return false;
        } else if (!h.is_zero()) {
            return false;
        }
    }
    return degrees.count(p) > 0;
}

const DegreeHomology& HomologyResult::at(int p) const {
    static const DegreeHomology zero;
    auto it = degrees.find(p);
    return it == degrees.end() ? zero : it->second;
}

HomologyResult complex_homology(const ChainComplex& complex, bool check_d2) {
    const Ring& ring = complex.ring();
    if (ring.kind() == RingKind::IntegerPolynomial)
        throw std::invalid_argument("homology over Z[delta] is not computed; specialize delta first");
    if (check_d2)
        if (auto p = complex.d2_violation()) throw D2NotZero(*p);

    HomologyResult result{ring.descriptor() + " delta=" + ring.delta_descriptor(), {}};
    auto degrees = complex.degrees();
    if (degrees.empty()) return result;

    // rank and torsion of each boundary d_p, computed once.
    std::map<int, std::size_t> rank;
    std::map<int, std::vector<Integer>> torsion;
    for (int p : degrees) {
        for (int q : {p, p + 1}) {
            if (rank.count(q)) continue;
            const auto* d = complex.boundary(q);
            if (!d) {
                rank[q] = 0;
                continue;
            }
            if (ring.kind() == RingKind::Integers) {
                auto factors = smith_normal_form(*d);
                rank[q] = factors.size();
                for (const auto& f : factors)
                    if (f > 1) torsion[q].push_back(f);
            } else {
                rank[q] = matrix_rank(*d);
            }
        }
    }
    for (int p : degrees) {
        DegreeHomology h;
        h.rank = complex.rank(p) - rank[p] - rank[p + 1];
        h.torsion = torsion[p + 1];
        result.degrees[p] = h;
    }
    return result;
}

}  // namespace dtl
