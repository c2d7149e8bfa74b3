#pragma once

// Idempotent generators e_p of the ideals J_p: the four sesqui-diagram
// conditions, exhaustive search, and certificates.

#include <optional>
#include <stdexcept>
#include <string>

#include "dtl/ideal_basis.hpp"
#include "dtl/link_state.hpp"

namespace dtl {

struct ConditionFlags {
    bool c1 = false;  // right link state of e is p
    bool c2 = false;  // isolated vertices of p are isolated on both sides of e
    bool c3 = false;  // every defect j' reaches overline j
    bool c4 = false;  // every glued-column edge lies on exactly one defect path
    bool all() const { return c1 && c2 && c3 && c4; }
};

ConditionFlags check_conditions(const LinkState& p, const Diagram& e);

class NoIdempotentFound : public std::runtime_error {
public:
    explicit NoIdempotentFound(const LinkState& p)
        : std::runtime_error("no diagram satisfies the idempotent conditions for " + p.to_string()) {}
};

/// First diagram in canonical order with right link state p satisfying all
/// four conditions. p must have a defect.
Diagram find_idempotent(const LinkState& p);

/// The diagram with propagating edges j -- overline j at the defects of p,
/// p's cups on the right and an isolated left column elsewhere. Fails C4
/// whenever p has a cup.
Diagram naive_candidate(const LinkState& p);

/// A member y with y*e != y, if any.
std::optional<Diagram> unit_failure(const IdealBasis& J, const Diagram& e);
inline bool verify_unit(const IdealBasis& J, const Diagram& e) { return !unit_failure(J, e); }

struct GeneratorCertificate {
    std::string ideal;
    Diagram e;
    bool member = false;
    bool idempotent = false;
    bool unit = false;
    std::optional<Diagram> unit_witness;

    bool passed() const { return member && idempotent && unit; }
    /// Empty when passed.
    std::string failure() const;
};

/// Checks e in J, e*e = e and y*e = y for every member y.
GeneratorCertificate assert_idempotent_generator(const IdealBasis& J, const Diagram& e);

struct IdempotentCertificate {
    LinkState p;
    Diagram e;
    ConditionFlags conditions;
    bool unit_verified = false;
};

/// find_idempotent followed by the condition check and unit verification on J_p.
IdempotentCertificate certify_link_state(const LinkState& p);

/// Projectivity of Cup(n) through its isomorphism with K_full.
struct CupCertificate {
    int n = 0;
    GeneratorCertificate k_full;
    bool forward_bijective = false;
    bool backward_bijective = false;
    bool mutually_inverse = false;
    bool forward_linear = false;
    bool backward_linear = false;

    bool passed() const {
        return k_full.passed() && forward_bijective && backward_bijective && mutually_inverse && forward_linear &&
               backward_linear;
    }
    std::string failure() const;
};

/// Exhaustive check that the cup maps are mutually inverse bijections
/// commuting with left multiplication by every basis diagram.
CupCertificate certify_cup_module(int n);

}  // namespace dtl
