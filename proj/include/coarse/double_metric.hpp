#pragma once

#include <optional>

#include "coarse/metric_space.hpp"

namespace coarse {

// A metric on the double X ⊔ X': the base metric serves both copies, and
// cross(i,j) holds the distance from point i in the first copy to point j in
// the second. Validity means every mixed triangle closes:
//
//   (1) cross(i,j) <= base(i,k) + cross(k,j)
//   (2) cross(i,j) <= cross(i,k) + base(k,j)
//   (3) base(i,k)  <= cross(i,j) + cross(k,j)
//   (4) base(j,k)  <= cross(i,j) + cross(i,k)
//
// within additive tolerance, plus cross > 0 everywhere. Together with the two
// base copies these are exactly the triangle inequalities on the double.
struct DoubleMetric {
    FiniteMetricSpace base;
    SquareMatrix cross;
    double floor_value = 0.0; // min cross entry, always > 0 for a valid double

    int size() const { return base.size(); }

    static DoubleMetric validated(FiniteMetricSpace base, SquareMatrix cross,
                                  const ValidateOptions& opts = {});

    // Construction for values known valid by derivation; recomputes the floor only.
    static DoubleMetric trusted(FiniteMetricSpace base, SquareMatrix cross);
};

std::optional<Issue> validate_double(const FiniteMetricSpace& base, const SquareMatrix& cross,
                                     const ValidateOptions& opts = {});

// Restriction to a point subset (indices into the current object, any order;
// normalized to sorted-unique). Restriction of a metric is a metric, so the
// result is valid by construction and keeps the original values.
DoubleMetric restrict_double(const DoubleMetric& d, std::vector<int> subset);
FiniteMetricSpace restrict_space(const FiniteMetricSpace& s, std::vector<int> subset);

// The three distance samples used throughout the analysis:
//   a(x) = d(x, X')  = min_j cross(x, j)
//   b(x) = d(x, x')  = cross(x, x)
//   c(x) = d(x', X)  = min_i cross(i, x)
struct DiagProfile {
    std::vector<double> a, b, c;
};

DiagProfile diag_profile(const DoubleMetric& d);

} // namespace coarse
