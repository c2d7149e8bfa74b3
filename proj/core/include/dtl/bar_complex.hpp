#pragma once

// Tor_*(1, 1) from the reduced bar complex of an augmented algebra whose
// augmentation ideal has a basis closed under multiplication up to scalars.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dtl/homology.hpp"

namespace dtl {

class SizeGuardExceeded : public std::runtime_error {
public:
    SizeGuardExceeded(int degree, std::size_t dimension, std::size_t entries);
    int degree() const { return degree_; }
    /// Rank of the offending bar term.
    std::size_t dimension() const { return dimension_; }

private:
    int degree_;
    std::size_t dimension_;
};

/// Largest number of stored boundary entries a bar computation may build.
inline constexpr std::size_t kBarEntryLimit = 10'000'000;

/// Basis x_0..x_{m-1} of the augmentation ideal with x_i x_j = delta^a x_k
/// or zero.
struct AugmentedIdeal {
    std::size_t dimension = 0;
    std::function<std::optional<std::pair<std::uint32_t, unsigned>>(std::uint32_t, std::uint32_t)> multiply;
};

/// Homology of the reduced bar complex in degrees 0..max_degree. Degree p
/// has term I^{(x)p} and boundary sum_{i=1}^{p-1} (-1)^i (.. x_i x_{i+1} ..).
/// Tor_0 is the ground ring. Throws SizeGuardExceeded before building a
/// boundary over kBarEntryLimit entries.
HomologyResult bar_homology(const AugmentedIdeal& ideal, const Ring& ring, int max_degree);

/// Tor over dTL_n with the augmentation ideal spanned by every diagram
/// except the all-propagating one.
HomologyResult bar_tor(int n, const Ring& ring, int max_degree);

/// Betti numbers (dimensions over a field) in degrees 0..max_degree.
std::vector<std::size_t> betti_numbers(const HomologyResult& h, int max_degree);

}  // namespace dtl
