#pragma once

#include <string>
#include <vector>

#include "coarse/double_metric.hpp"
#include "coarse/verdict.hpp"

namespace coarse {

// Interchange format for spaces and doubles:
//   {"name": ..., "points": [labels], "dist": [[...]], "cross": [[...]]}
// with row-major matrices and numbers written to 17 significant digits.
// Output field order is fixed, so serialization is byte-deterministic.

std::string json_escape(const std::string& s);
std::string label_to_json(const PointLabel& p);

std::string space_to_json(const FiniteMetricSpace& s);
std::string double_to_json(const DoubleMetric& d,
                           const std::vector<std::string>& provenance = {});

PointLabel label_from_json_text(const std::string& text);
FiniteMetricSpace space_from_json(const std::string& text, const ValidateOptions& opts = {});

// Documents with a "cross" member parse as doubles; validation runs on load.
bool json_has_cross(const std::string& text);
DoubleMetric double_from_json(const std::string& text, const ValidateOptions& opts = {});

std::string verdict_to_json(const ComparisonVerdict& v);
ComparisonVerdict verdict_from_json(const std::string& text);
std::string class_label_to_json(const ClassLabel& c);

// CSV views: diagnostic profile (point,a,b,c) and verdict evidence
// (level,C,max_a).
std::string diag_profile_csv(const FiniteMetricSpace& s, const DiagProfile& p);
std::string evidence_csv(const ComparisonVerdict& v);

} // namespace coarse
