#pragma once

#include "freediv/lindiag.hpp"
#include "freediv/parse.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace freediv {

inline constexpr const char* tool_version = "0.1.0";

// stage names in dependency order
const std::vector<std::string>& all_stages();

struct analysis_config {
    std::string poly_text;
    std::vector<std::string> vars;
    std::set<std::string> stages;   // empty = all
    double budget_secs = 600.0;     // per stage
    uint64_t budget_steps = 0;      // 0 = unlimited
    std::string output_path;        // empty = stdout
    enum class fmt : uint8_t { json, text } format = fmt::json;
    bool timings = false;           // include wall times and cache info
    bool use_cache = true;
    std::string cache_dir;          // empty = FREEDIV_CACHE env or default
    int funceq_process_cap = 25;

    void validate() const; // throws std::invalid_argument on bad stage names etc.
};

enum class stage_status : uint8_t { proved, disproved, not_applicable, timeout, skipped };
std::string to_string(stage_status s);

struct stage_result {
    stage_status status = stage_status::skipped;
    std::map<std::string, std::string> payload; // scalar fields, already rendered
    std::map<std::string, std::vector<std::string>> lists;
    double wall_secs = 0.0;
    bool cache_hit = false;
};

struct report_document {
    std::string version;
    std::string poly_canonical;
    std::vector<std::string> vars;
    std::vector<std::pair<std::string, stage_result>> stages; // in run order
    std::string to_json(bool with_run_info) const;
    std::string to_text() const;
};

// parse with the variable list (cli-report surface of the polynomial grammar)
polynomial parse_input_polynomial(const std::string& text, const std::vector<std::string>& vars);

report_document analyze(const analysis_config& cfg);

// cache primitives (content-addressed JSON files)
std::string cache_root(const analysis_config& cfg);
uint64_t fnv1a64(const std::string& s);

} // namespace freediv
