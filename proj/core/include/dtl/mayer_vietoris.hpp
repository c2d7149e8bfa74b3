#pragma once

// The idempotent left cover of the augmentation ideal by the K_S and L_i,
// its Mayer-Vietoris complex, and the functor checks built on it.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dtl/functors.hpp"
#include "dtl/homology.hpp"
#include "dtl/ideal_basis.hpp"
#include "dtl/idempotents.hpp"

namespace dtl {

class CoverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Why a nonzero intersection is principal on an idempotent.
struct IntersectionCertificate {
    enum class Kind { Idempotent, CupIsomorphism };
    Kind kind = Kind::Idempotent;
    /// Right link state generating the intersection as a J ideal.
    std::optional<LinkState> link_state;
    /// The idempotent e, or the K_full generator for the cup module.
    Diagram generator;
    bool generator_augmentation_zero = false;
    bool passed = false;
    std::string failure;
};

/// A nonzero intersection of cover ideals, indexed by a 0-based subset.
struct Intersection {
    std::vector<int> subset;
    IdealBasis basis;
    IntersectionCertificate certificate;
};

struct Cover {
    int n = 0;
    /// Every K_S (by subset size, then lexicographically), then L_1..L_{n-1}.
    std::vector<IdealBasis> ideals;
    /// Nonzero intersections ordered by subset size, then lexicographically.
    std::vector<Intersection> intersections;

    std::size_t width() const { return ideals.size(); }
};

/// The ordered cover with every nonzero intersection certified. Throws
/// CoverError naming the first ideal whose certificate fails.
Cover build_cover(int n);

/// Union of the cover ideals equals the augmentation ideal.
bool cover_is_complete(const Cover& cover);

struct MVComplex {
    int n = 0;
    /// Degrees -1 .. top. C_{-1} is "1", C_0 is A, C_p for p >= 1 the sum of
    /// the nonzero p-fold intersections. Labels read "{i,j}|diagram".
    ChainComplex complex;
    /// Summands for p >= 0 and their subsets (empty subset for C_0).
    std::map<int, std::vector<IdealBasis>> summands;
    std::map<int, std::vector<std::vector<int>>> subsets;

    int top_degree() const;
    IdealComplex resolution() const { return IdealComplex{summands, &complex}; }
};

/// Inclusions with sign (-1)^{#(S,j)} for p >= 1 and the augmentation
/// C_0 -> C_{-1}.
MVComplex build_mv_complex(const Cover& cover, const Ring& ring);

/// Homology of every degree, including -1, after specializing a Z[delta]
/// complex into ring.
HomologyResult verify_acyclic(const ChainComplex& complex, const Ring& ring);

/// Top degree of the displayed resolution shapes.
int displayed_top(int n);

struct ShapeReport {
    int displayed_top = 0;
    int generic_top = 0;
    /// Disagreements with the displayed shape up to its top degree.
    std::vector<std::string> mismatches;
    /// Set when the generic complex has terms above the displayed top.
    std::optional<std::string> note;
};

ShapeReport check_display_shape(const MVComplex& mv);

/// Each summand of positive degree is killed by both functors exactly when
/// its generator has zero augmentation; C_0 keeps rank one. Returns the
/// disagreements.
std::vector<std::string> functor_cross_check(const MVComplex& mv, const Cover& cover, const FunctorResult& tensor,
                                             const FunctorResult& hom);

}  // namespace dtl
