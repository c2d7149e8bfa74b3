#pragma once

// A left ideal stored extensionally as a subset of the diagram basis.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dtl/diagram.hpp"

namespace dtl {

class IdealBasis {
public:
    IdealBasis(int n, std::string label, std::vector<Diagram> diagrams);

    int n() const { return n_; }
    const std::string& label() const { return label_; }
    /// Members in canonical diagram order.
    const std::vector<Diagram>& diagrams() const { return diagrams_; }
    std::size_t size() const { return diagrams_.size(); }
    bool empty() const { return diagrams_.empty(); }
    bool contains(const Diagram& d) const { return d.n() == n_ && keys_.count(d.key()) > 0; }
    /// Position of d among the members.
    std::optional<std::size_t> position(const Diagram& d) const;

    IdealBasis relabeled(std::string label) const { return IdealBasis(n_, std::move(label), diagrams_); }

    /// Same member set; labels are ignored.
    friend bool operator==(const IdealBasis& a, const IdealBasis& b) {
        return a.n_ == b.n_ && a.diagrams_ == b.diagrams_;
    }

private:
    int n_;
    std::string label_;
    std::vector<Diagram> diagrams_;
    std::unordered_set<std::uint64_t> keys_;
};

/// All diagrams with fewer than n propagating edges.
IdealBasis augmentation_ideal_basis(int n);

/// A witness (d, m) with d*m outside the ideal, or nothing when the ideal is
/// closed under left multiplication by every basis diagram.
std::optional<std::pair<Diagram, Diagram>> find_left_closure_violation(const IdealBasis& ideal);

}  // namespace dtl
