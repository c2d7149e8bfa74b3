#pragma once

// The classical Temperley-Lieb algebra TL_n(delta) inside the dilute basis:
// perfect planar matchings, whose products never annihilate.

#include <utility>
#include <vector>

#include "dtl/bar_complex.hpp"
#include "dtl/diagram.hpp"

namespace dtl {

/// No isolated vertex.
bool is_tl_diagram(const Diagram& d);

/// Perfect planar matchings in canonical order.
std::vector<Diagram> tl_basis(int n);

/// (loops, product). Throws DiagramError on mismatched n or a non-TL input.
std::pair<unsigned, Diagram> tl_multiply(const Diagram& first, const Diagram& second);

/// Tor over TL_n with the identity diagram sent to 1 and every other
/// basis diagram to 0.
HomologyResult tl_bar_tor(int n, const Ring& ring, int max_degree);

}  // namespace dtl
