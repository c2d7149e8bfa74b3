#pragma once

// dTL_n(delta) as linear combinations of diagrams, plus cached per-n basis
// and multiplication tables used by the homological machinery.

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dtl/coeff_ring.hpp"
#include "dtl/diagram.hpp"

namespace dtl {

class AlgebraElement {
public:
    AlgebraElement(Ring ring, int n) : ring_(std::move(ring)), n_(n) {}
    static AlgebraElement basis_element(const Ring& ring, const Diagram& d);

    const Ring& ring() const { return ring_; }
    int n() const { return n_; }
    const std::map<Diagram, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coefficient(const Diagram& d) const;

    /// Adds c*d; zero results are removed.
    void add_term(const Diagram& d, const Scalar& c);

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement multiply_elements(const AlgebraElement& x, const AlgebraElement& y);

    std::string to_string() const;

private:
    void check_compatible(const AlgebraElement& other) const;

    Ring ring_;
    int n_;
    std::map<Diagram, Scalar> terms_;
};

/// Bilinear extension of the diagram product; each pair contributes
/// delta^loops times the product of coefficients.
AlgebraElement multiply_elements(const AlgebraElement& x, const AlgebraElement& y);

/// Sum over subsets T of {1..n} of the diagram with propagating edges j -- R_j
/// for j outside T and isolated vertices elsewhere.
AlgebraElement identity_element(int n, const Ring& ring);

/// Coefficient of the all-propagating diagram.
Scalar augmentation(const AlgebraElement& x);

/// Basis of dTL_n in canonical order with an index lookup. Cached per n.
class DiagramBasis {
public:
    explicit DiagramBasis(int n);
    static const DiagramBasis& get(int n);

    int n() const { return n_; }
    std::size_t size() const { return diagrams_.size(); }
    const std::vector<Diagram>& diagrams() const { return diagrams_; }
    const Diagram& operator[](std::size_t i) const { return diagrams_[i]; }
    std::optional<std::uint32_t> find(const Diagram& d) const;
    std::uint32_t index(const Diagram& d) const;
    std::uint32_t all_propagating_index() const { return all_propagating_; }

private:
    int n_;
    std::vector<Diagram> diagrams_;
    std::unordered_map<std::uint64_t, std::uint32_t> by_key_;
    std::uint32_t all_propagating_ = 0;
};

/// Full multiplication table of the diagram basis. Cached per n; intended for
/// n <= 5 where it has at most 2188^2 entries.
class ProductTable {
public:
    class Entry {
    public:
        explicit Entry(std::uint32_t packed) : packed_(packed) {}
        bool annihilated() const { return packed_ == kAnnihilated; }
        std::uint32_t index() const { return packed_ & 0xFFFFFFu; }
        unsigned loops() const { return packed_ >> 24; }

    private:
        friend class ProductTable;
        std::uint32_t packed_;
    };

    explicit ProductTable(int n);
    static const ProductTable& get(int n);

    int n() const { return n_; }
    std::size_t size() const { return size_; }
    Entry operator()(std::uint32_t a, std::uint32_t b) const { return Entry(table_[a * size_ + b]); }

private:
    static constexpr std::uint32_t kAnnihilated = 0xFFFFFFFFu;

    int n_;
    std::size_t size_;
    std::vector<std::uint32_t> table_;
};

}  // namespace dtl
