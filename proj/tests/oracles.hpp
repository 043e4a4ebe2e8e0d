#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "coarse/double_metric.hpp"
#include "coarse/point_label.hpp"
#include "coarse/util.hpp"

// Independent reference implementations used only by the tests. These stay
// deliberately naive (explicit reduction, plain cubic loops) so the production
// paths are checked against a second route.

namespace oracle {

// Word distance by explicit concatenate-and-cancel, no prefix tricks.
inline int word_distance(const std::string& u, const std::string& v) {
    std::string w = coarse::words::inverse(u) + v;
    std::string reduced;
    for (char c : w) {
        if (!reduced.empty() && reduced.back() == coarse::words::letter_inverse(c))
            reduced.pop_back();
        else
            reduced.push_back(c);
    }
    return static_cast<int>(reduced.size());
}

// Plain cubic triangle scan.
inline bool triangle_ok(const coarse::SquareMatrix& d, double tol = coarse::kTriangleTol) {
    for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j)
            for (int k = 0; k < d.n; ++k)
                if (d.at(i, k) > d.at(i, j) + d.at(j, k) + tol) return false;
    return true;
}

// Plain scan of all four mixed-triangle families.
inline bool mixed_ok(const coarse::FiniteMetricSpace& base, const coarse::SquareMatrix& cross,
                     double tol = coarse::kTriangleTol) {
    const int n = base.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (cross.at(i, j) > base.d(i, k) + cross.at(k, j) + tol) return false;
                if (cross.at(i, j) > cross.at(i, k) + base.d(k, j) + tol) return false;
                if (base.d(i, k) > cross.at(i, j) + cross.at(k, j) + tol) return false;
                if (base.d(j, k) > cross.at(i, j) + cross.at(i, k) + tol) return false;
            }
    return true;
}

// Naive min-plus product, no blocking, no parallelism.
inline coarse::SquareMatrix compose_naive(const coarse::SquareMatrix& inner,
                                          const coarse::SquareMatrix& outer) {
    const int n = inner.n;
    coarse::SquareMatrix out(n);
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
            double best = inner.at(x, 0) + outer.at(0, z);
            for (int u = 1; u < n; ++u) best = std::min(best, inner.at(x, u) + outer.at(u, z));
            out.at(x, z) = best;
        }
    return out;
}

// Valid random double over a lattice base: cross routed through a random
// subset with half-integer weights, so every later sum stays exact.
inline coarse::DoubleMetric random_link_field(const coarse::FiniteMetricSpace& base,
                                              std::uint64_t seed) {
    coarse::SplitMix64 rng(seed);
    const int n = base.size();
    int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    std::vector<int> subset;
    std::vector<double> weight;
    for (int s = 0; s < m; ++s) {
        subset.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
        weight.push_back(0.5 + 0.5 * static_cast<double>(rng.below(5)));
    }
    coarse::SquareMatrix cross(n, std::numeric_limits<double>::infinity());
    for (int s = 0; s < m; ++s) {
        int u = subset[static_cast<size_t>(s)];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                cross.at(i, j) = std::min(cross.at(i, j),
                                          base.d(i, u) + weight[static_cast<size_t>(s)] + base.d(u, j));
    }
    return coarse::DoubleMetric::trusted(base, std::move(cross));
}

} // namespace oracle
