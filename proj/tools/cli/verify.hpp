#pragma once

// End-to-end verification run producing a JSON report.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace dtl::cli {

struct CheckRecord {
    std::string name;
    nlohmann::json parameters;
    /// "pass", "fail" or "skipped".
    std::string verdict;
    nlohmann::json payload;
    double wall_time_ms = 0;

    std::string key() const { return name + " " + parameters.dump(); }
};

struct Report {
    std::string tool_version;
    RunConfig config;
    std::vector<CheckRecord> records;
    std::vector<std::string> notes;

    bool passed() const;
    /// Records sorted by key; wall times live only in "wall_time_ms".
    nlohmann::json to_json() const;
    static Report from_json(const nlohmann::json& j);
};

/// Runs every check for every configured parameter tuple. Matrices are
/// written next to the report when config.dump_matrices is set.
Report run_verify_theorem(const RunConfig& config);

/// Writes report.json into config.output_dir and returns its path.
std::string write_report(const Report& report);

std::string tool_version();

}  // namespace dtl::cli
