#pragma once

#include "coarse/double_metric.hpp"

namespace coarse {

// An increasing chain of truncations of one ambient double. Levels are nested
// point subsets of the ambient; snapshots are the corresponding restrictions,
// so values agree exactly on common points. Asymptotic verdicts read their
// evidence off the chain.
//
// Compositions and minima computed on the ambient are exact on points that sit
// far enough inside it; level subsets are therefore usually chosen strictly
// inside whatever boundary the ambient truncation has.
struct ScaleFamily {
    DoubleMetric ambient;
    std::vector<double> params;            // strictly increasing
    std::vector<std::vector<int>> levels;  // nested subsets, sorted-unique

    int level_count() const { return static_cast<int>(levels.size()); }

    static ScaleFamily from_subsets(DoubleMetric ambient, std::vector<double> params,
                                    std::vector<std::vector<int>> levels);

    // Convenience: nested prefixes of the ambient point order at the given
    // fractions (last one should be 1.0).
    static ScaleFamily prefixes(DoubleMetric ambient, const std::vector<double>& fractions);

    // Convenience: sublevels of the base distance to a point. Radial chains
    // track the metric scale directly, which prefix counts do not on spaces
    // whose spheres grow.
    static ScaleFamily radial(DoubleMetric ambient, int basepoint, const std::vector<double>& radii);

    DoubleMetric snapshot(int level) const { return restrict_double(ambient, levels[static_cast<size_t>(level)]); }
};

} // namespace coarse
