#include "config.hpp"

#include <fstream>
#include <sstream>

namespace dtl::cli {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty()) out.push_back(t);
    return out;
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": expected an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config key " + key + ": expected true or false, got '" + value + "'");
}

}  // namespace

std::string normalize_ring(const std::string& descriptor) {
    std::string d = descriptor;
    if (d.size() > 1 && d[0] == 'F' && d.rfind("Fp:", 0) != 0) {
        std::string digits = d.substr(d[1] == '_' ? 2 : 1);
        if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) return "Fp:" + digits;
    }
    return d;
}

void RunConfig::validate() const {
    if (n_min < 1) throw ConfigError("n_min must be at least 1");
    if (n_max < n_min) throw ConfigError("n_max must be at least n_min");
    if (n_max > 6) throw ConfigError("n_max above 6 is outside the supported range");
    if (rings.empty()) throw ConfigError("no rings configured");
    if (deltas.empty()) throw ConfigError("no delta values configured");
    if (max_bar_degree < 0) throw ConfigError("max_bar_degree must be non-negative");
    if (output_dir.empty()) throw ConfigError("output_dir is empty");
    if (jobs < 0) throw ConfigError("jobs must be non-negative");
    for (const auto& r : rings) {
        if (r == "Z[delta]") throw ConfigError("verification needs a specialized delta; Z[delta] is not a valid ring here");
        try {
            Ring::parse(normalize_ring(r), "0");
        } catch (const std::exception& e) {
            throw ConfigError("unrecognized ring descriptor '" + r + "': " + e.what());
        }
    }
}

std::vector<Ring> RunConfig::specializations() const {
    std::vector<Ring> out;
    for (const auto& r : rings)
        for (long d : deltas) out.push_back(Ring::parse(normalize_ring(r), std::to_string(d)));
    return out;
}

nlohmann::json RunConfig::to_json() const {
    return {{"n_min", n_min},
            {"n_max", n_max},
            {"rings", rings},
            {"deltas", deltas},
            {"max_bar_degree", max_bar_degree},
            {"output_dir", output_dir},
            {"dump_matrices", dump_matrices},
            {"seed", seed},
            {"jobs", jobs}};
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    c.n_min = j.at("n_min").get<int>();
    c.n_max = j.at("n_max").get<int>();
    c.rings = j.at("rings").get<std::vector<std::string>>();
    c.deltas = j.at("deltas").get<std::vector<long>>();
    c.max_bar_degree = j.at("max_bar_degree").get<int>();
    c.output_dir = j.at("output_dir").get<std::string>();
    c.dump_matrices = j.at("dump_matrices").get<bool>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.jobs = j.value("jobs", 0);
    return c;
}

void apply_config_text(RunConfig& config, const std::string& text) {
    std::stringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "n_min") config.n_min = static_cast<int>(parse_long(key, value));
        else if (key == "n_max") config.n_max = static_cast<int>(parse_long(key, value));
        else if (key == "rings") config.rings = split_list(value);
        else if (key == "deltas") {
            config.deltas.clear();
            for (const auto& d : split_list(value)) config.deltas.push_back(parse_long(key, d));
        } else if (key == "max_bar_degree") config.max_bar_degree = static_cast<int>(parse_long(key, value));
        else if (key == "output_dir") config.output_dir = value;
        else if (key == "dump_matrices") config.dump_matrices = parse_bool(key, value);
        else if (key == "seed") config.seed = static_cast<std::uint64_t>(parse_long(key, value));
        else if (key == "jobs") config.jobs = static_cast<int>(parse_long(key, value));
        else throw ConfigError("config line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    apply_config_text(config, buffer.str());
}

}  // namespace dtl::cli
