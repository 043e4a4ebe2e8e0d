#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarse/point_label.hpp"

namespace coarse {

struct SquareMatrix {
    int n = 0;
    std::vector<double> a;

    SquareMatrix() = default;
    explicit SquareMatrix(int size, double fill = 0.0)
        : n(size), a(static_cast<size_t>(size) * size, fill) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    const double* row(int i) const { return a.data() + static_cast<size_t>(i) * n; }
    double* row(int i) { return a.data() + static_cast<size_t>(i) * n; }

    bool operator==(const SquareMatrix& other) const = default;
};

struct ValidateOptions {
    bool exhaustive = false;        // force the cubic scan regardless of size
    int exhaustive_cutoff = 1500;   // above this, sample triples instead
    std::size_t sample_triples = 10'000'000;
    std::uint64_t seed = 0x5eed5eedULL;
};

struct Issue; // errors.hpp

// A finite point set with validated pairwise distances.
//
// Invariants (checked by validate_space / the factory):
//   dist(i,i) = 0, dist symmetric, dist(i,j) > 0 off the diagonal, and the
//   triangle inequality within additive tolerance kTriangleTol.
struct FiniteMetricSpace {
    std::string name;
    std::vector<PointLabel> points;
    SquareMatrix dist;

    int size() const { return dist.n; }
    double d(int i, int j) const { return dist.at(i, j); }

    // Throwing factory; validates before constructing.
    static FiniteMetricSpace validated(std::string name, std::vector<PointLabel> points,
                                       SquareMatrix dist, const ValidateOptions& opts = {});

    bool same_space(const FiniteMetricSpace& other) const {
        return points == other.points && dist == other.dist;
    }
};

// Returns the first violation in deterministic scan order, or nullopt.
// Triangle violations report the lexicographically first triple (i,j,k) with
// dist(i,k) > dist(i,j) + dist(j,k) + tol, together with the slack.
std::optional<Issue> validate_space(const std::vector<PointLabel>& points,
                                    const SquareMatrix& dist, const ValidateOptions& opts = {});

} // namespace coarse
