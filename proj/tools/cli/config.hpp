#pragma once

// Run configuration for `dtl verify`.
//
// File format: one `key = value` per line, `#` starts a comment, lists are
// comma separated. Keys: n_min, n_max, rings, deltas, max_bar_degree,
// output_dir, dump_matrices, seed, jobs. Precedence: command-line flags, then
// the DTL_OUTPUT_DIR environment variable (output_dir only), then the
// file, then the defaults below.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtl/coeff_ring.hpp"

namespace dtl::cli {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    int n_min = 1;
    int n_max = 4;
    std::vector<std::string> rings{"Z", "Fp:2"};
    std::vector<long> deltas{0, 1};
    int max_bar_degree = 4;
    std::string output_dir = "dtl-report";
    bool dump_matrices = false;
    std::uint64_t seed = 20240101;
    /// Worker threads; 0 uses every hardware thread.
    int jobs = 0;

    /// Throws ConfigError for an empty or invalid n range, unknown rings,
    /// or a negative bar degree.
    void validate() const;
    /// Every (ring, delta) pair, rings parsed.
    std::vector<Ring> specializations() const;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
};

/// Accepts "Z", "Q", "Fp:p", "Fp" shorthand "F2", "F_2".
std::string normalize_ring(const std::string& descriptor);

/// Applies `key = value` lines onto config.
void apply_config_text(RunConfig& config, const std::string& text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

}  // namespace dtl::cli
