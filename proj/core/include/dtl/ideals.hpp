#pragma once

// The named left ideals: J_p, K_S, L_i, their intersections, and Cup(n).

#include <set>
#include <stdexcept>
#include <vector>

#include "dtl/ideal_basis.hpp"
#include "dtl/link_state.hpp"

namespace dtl {

class IdealError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Diagrams whose right link state is reachable from p by splices.
IdealBasis ideal_J(const LinkState& p);

/// Diagrams whose isolated right vertices are exactly S (1-based, nonempty).
IdealBasis ideal_K(int n, const std::set<int>& S);

/// Diagrams with no isolated right vertex and a right cup (i, i+1).
IdealBasis ideal_L(int n, int i);

/// Set intersection; all inputs must share n. The label joins the inputs.
IdealBasis intersect(const std::vector<IdealBasis>& ideals);

/// Even n: right cups at (1,2), (3,4), ..., (n-1,n).
IdealBasis cup_module(int n);

/// "K_{R1,R3}" style label.
std::string k_label(const std::set<int>& S);

/// Isolated on S and defects elsewhere.
LinkState k_link_state(int n, const std::set<int>& S);
/// Cups (i, i+1) for i in U and defects elsewhere. U must have no
/// consecutive elements.
LinkState l_link_state(int n, const std::set<int>& U);

/// The isomorphism K_full -> Cup(n) given by right multiplication by d_cup,
/// and its inverse d -> d_l.
class CupIsomorphism {
public:
    explicit CupIsomorphism(int n);

    int n() const { return n_; }
    /// Left column isolated, right cups (1,2), (3,4), ...
    const Diagram& cup_diagram() const { return d_cup_; }
    const IdealBasis& k_full() const { return k_full_; }
    const IdealBasis& cup() const { return cup_; }

    /// Throws IdealError unless d*d_cup is a loop-free product.
    Diagram forward(const Diagram& d) const;
    /// Keeps d's left link state and isolates the right column.
    Diagram backward(const Diagram& d) const;

private:
    int n_;
    Diagram d_cup_;
    IdealBasis k_full_;
    IdealBasis cup_;
};

CupIsomorphism cup_iso_maps(int n);

}  // namespace dtl
