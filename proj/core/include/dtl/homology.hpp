#pragma once

// Chain complexes with sparse boundaries and their homology.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtl/coeff_ring.hpp"
#include "dtl/sparse_matrix.hpp"

namespace dtl {

class D2NotZero : public std::runtime_error {
public:
    explicit D2NotZero(int degree)
        : std::runtime_error("boundary composite d_" + std::to_string(degree - 1) + " d_" + std::to_string(degree) +
                             " is not zero"),
          degree_(degree) {}
    int degree() const { return degree_; }

private:
    int degree_;
};

/// Graded free modules C_p with boundaries d_p : C_p -> C_{p-1}. Degrees
/// without a term have rank zero; missing boundaries are zero.
class ChainComplex {
public:
    explicit ChainComplex(Ring ring) : ring_(std::move(ring)) {}

    const Ring& ring() const { return ring_; }

    void set_term(int degree, std::size_t rank, std::vector<std::string> labels = {});
    /// Shape must be rank(degree-1) x rank(degree); both terms must exist.
    void set_boundary(int degree, SparseMatrix d);

    std::size_t rank(int degree) const;
    const std::vector<std::string>& labels(int degree) const;
    /// Degrees carrying a term, ascending.
    std::vector<int> degrees() const;
    std::optional<int> min_degree() const;
    std::optional<int> max_degree() const;
    /// The boundary out of degree p, or nothing when it is zero.
    const SparseMatrix* boundary(int degree) const;
    /// Zero matrix of the right shape when no boundary is stored.
    SparseMatrix boundary_or_zero(int degree) const;

    /// The lowest p with d_{p-1} d_p != 0.
    std::optional<int> d2_violation() const;

    /// Same complex with Z[delta] entries specialized into target.
    ChainComplex specialize_to(const Ring& target) const;

private:
    struct Term {
        std::size_t rank = 0;
        std::vector<std::string> labels;
    };

    Ring ring_;
    std::map<int, Term> terms_;
    std::map<int, SparseMatrix> boundaries_;
};

struct DegreeHomology {
    /// Betti number over Z, dimension over a field.
    std::size_t rank = 0;
    /// Over Z: invariants > 1 with each dividing the next.
    std::vector<Integer> torsion;

    bool is_zero() const { return rank == 0 && torsion.empty(); }
    friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

struct HomologyResult {
    std::string ring;
    std::map<int, DegreeHomology> degrees;

    bool vanishes() const;
    /// Degree p is k (free of rank one) and every other degree vanishes.
    bool concentrated_in(int p) const;
    const DegreeHomology& at(int p) const;
};

/// Homology of every degree of the complex. Ranks come from matrix_rank
/// and torsion from the Smith form of the incoming boundary. Throws
/// D2NotZero unless check_d2 is false.
HomologyResult complex_homology(const ChainComplex& complex, bool check_d2 = true);

}  // namespace dtl
