#pragma once

// JSON encodings shared by the subcommands and the verification report.

#include <nlohmann/json.hpp>

#include "dtl/homology.hpp"
#include "dtl/idempotents.hpp"
#include "dtl/link_state.hpp"
#include "dtl/mayer_vietoris.hpp"

namespace dtl::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json diagram_json(const Diagram& d);
json link_state_json(const LinkState& p);

/// {"rows":r,"cols":c,"entries":[[i,j,"coeff"],...]}; coefficients are
/// written with the ring's formatter.
json matrix_json(const SparseMatrix& m);
/// Inverse of matrix_json; coefficients may be strings or integers.
SparseMatrix matrix_from_json(const json& j, const Ring& ring);

/// One {"degree","betti","torsion"} record per degree, ascending.
json homology_json(const HomologyResult& h);

json certificate_json(const IdempotentCertificate& c);
json certificate_json(const GeneratorCertificate& c);

/// Ranks, labels of summands and (optionally) matrices of an MV complex.
json complex_json(const ChainComplex& c, bool with_matrices);

}  // namespace dtl::cli
