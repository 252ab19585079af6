#pragma once

#include <stdexcept>
#include <string>

#include "degseq/decay.hpp"

namespace degseq {

// Plan file did not match the schema.
class plan_error : public std::invalid_argument {
public:
    explicit plan_error(const std::string& what) : std::invalid_argument(what) {}
};

// Filesystem failure while reading a plan or writing artifacts.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

struct PlanFile {
    ExperimentPlan plan;
    std::string mode = "decay";  // "decay" or "collision_bound"
    std::string csv_out;
    std::string json_out;
};

// Strict parse: unknown keys anywhere are rejected.
PlanFile parse_plan_text(const std::string& json_text);
PlanFile load_plan_file(const std::string& path);

// JSON summary artifact: fit slopes and standard errors, slope gaps,
// warnings, and (when present) the collision-bound rows.
std::string report_summary_json(const PlanFile& plan_file, const DecayReport& report,
                                const CollisionBoundReport* collision = nullptr);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace degseq
