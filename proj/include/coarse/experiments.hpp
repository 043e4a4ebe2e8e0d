#pragma once

#include <map>
#include <string>
#include <vector>

#include "coarse/verdict.hpp"

namespace coarse {

// One verified claim inside an experiment. `anchor` tags the provenance of the
// expected value ("derived-oracle" for brute-force/enumeration expectations,
// a short slug for formula-level constants).
struct CheckRow {
    std::string claim;
    std::string anchor;
    std::string measured;
    std::string expected;
    bool pass = false;
};

struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> parameters; // sorted by key
    std::vector<CheckRow> checks;
    std::vector<std::pair<std::string, ComparisonVerdict>> verdicts;
    long long runtime_ms = 0;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

using ParamMap = std::map<std::string, std::string>;

// Named, scripted reproductions. Two runs with identical parameters produce
// identical reports except for runtime_ms.
//
//   rays-infinite-unit          vn pair of the ray-shift metric
//   amenable-nonfinite          sup-norm log sequence space
//   free-group-property-I       piecewise-multiplication graph metric
//   qi-noninvariance            exponential-gap sequence pair
//   coarse-noninvariance        squares space vs log metric bounds
//   rspace-spiral               ring probes on the logarithmic spiral
//   noncommuting-construction   witness pair of non-commuting metrics
ExperimentReport run_experiment(const std::string& name, const ParamMap& params = {});

struct ExperimentInfo {
    std::string name;
    std::string summary;
    ParamMap defaults;
};
const std::vector<ExperimentInfo>& experiment_list();

// Formats: "json" (full report), "csv" (one row per check), "text".
std::string emit_report(const ExperimentReport& r, const std::string& format);

// Inverse of the json emitter; emit-parse round-trips are lossless.
ExperimentReport report_from_json(const std::string& text);

} // namespace coarse
