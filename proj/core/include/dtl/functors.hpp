#pragma once

// The functors 1 (x)_A - and Hom_A(-, 1) applied to complexes whose terms
// are direct sums of left ideals spanned by basis diagrams.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dtl/homology.hpp"
#include "dtl/ideal_basis.hpp"
#include "dtl/smith.hpp"

namespace dtl {

/// One generator of the relation module of 1 (x)_A M:
/// delta^alpha e_plus - e_minus, either side possibly absent.
struct TrivialRelation {
    std::int32_t plus = -1;
    unsigned alpha = 0;
    std::int32_t minus = -1;
    friend auto operator<=>(const TrivialRelation&, const TrivialRelation&) = default;
};

/// The relations a*m - eps(a) m over every basis diagram a and member m,
/// deduplicated. Indices refer to positions in M. Cached per member set.
/// Throws IdealError when M is not closed under left multiplication.
const std::vector<TrivialRelation>& trivial_relations(const IdealBasis& M);

/// A complex of direct sums of ideals: summands per degree, and the
/// boundaries between the flattened bases. Degrees below zero are ignored.
struct IdealComplex {
    std::map<int, std::vector<IdealBasis>> summands;
    const ChainComplex* complex = nullptr;
};

struct FunctorTerm {
    std::size_t generators = 0;  // rank of the term before the functor
    std::size_t rank = 0;        // free rank afterwards
    std::vector<Integer> torsion;
    std::vector<std::size_t> summand_ranks;  // per summand, in order
};

struct FunctorResult {
    std::map<int, FunctorTerm> terms;
    /// Tor_p at key p, or Ext^p at key p.
    HomologyResult homology;
    /// True when some relation block had no unit pivot and the dense
    /// lattice route was taken (only possible over Z).
    bool lattice_route = false;
};

/// Tor_*(1, 1) from the tensored complex.
FunctorResult tensor_trivial(const IdealComplex& input);
/// Ext^*(1, 1) from the Hom cochain complex.
FunctorResult hom_trivial(const IdealComplex& input);

/// A functional on the span of M's members, as (position, value) pairs.
using Functional = std::vector<std::pair<std::uint32_t, Scalar>>;

/// Basis of Hom_A(M, 1): functionals f with f(a*m) = eps(a) f(m) for every
/// basis diagram a and member m.
std::vector<Functional> hom_solver(const IdealBasis& M, const Ring& ring);

/// Homology over Z of T_p = Z^{sizes[p]} / rowspace(res[p]) with maps
/// maps[p] : T_p -> T_{p-1} given on representatives. Every degree needs a
/// size and a (possibly empty) relation matrix.
HomologyResult quotient_complex_homology(const std::vector<int>& degrees, const std::map<int, std::size_t>& sizes,
                                         const std::map<int, IntMatrix>& res, const std::map<int, IntMatrix>& maps);

/// The whole algebra as an ideal, labelled "A".
IdealBasis whole_algebra(int n);

}  // namespace dtl
