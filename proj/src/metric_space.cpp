#include "coarse/metric_space.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>

#include "coarse/errors.hpp"
#include "coarse/util.hpp"

namespace coarse {

namespace {

std::optional<Issue> check_shape(const std::vector<PointLabel>& points, const SquareMatrix& m) {
    if (m.n < 0 || m.a.size() != static_cast<size_t>(m.n) * m.n) {
        Issue is;
        is.code = IssueCode::NotSquare;
        is.detail = "matrix storage does not match declared size";
        return is;
    }
    if (static_cast<int>(points.size()) != m.n) {
        Issue is;
        is.code = IssueCode::NotSquare;
        is.detail = "label count " + std::to_string(points.size()) + " != matrix size " +
                    std::to_string(m.n);
        return is;
    }
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (!std::isfinite(m.at(i, j))) {
                Issue is;
                is.code = IssueCode::NotFinite;
                is.indices = {i, j, -1};
                return is;
            }
    return std::nullopt;
}

// Lexicographically first (i,j,k) with d(i,k) > d(i,j) + d(j,k) + tol.
// Workers scan disjoint i-ranges; the earliest i wins, which preserves the
// lexicographic guarantee.
std::optional<Issue> triangle_scan_exhaustive(const SquareMatrix& d) {
    const int n = d.n;
    std::atomic<std::int64_t> best_i{n};

    struct Hit {
        int i = -1, j = -1, k = -1;
        double slack = 0;
    };

    int workers = worker_count();
    std::vector<Hit> per(static_cast<size_t>(workers > 0 ? workers : 1));
    std::atomic<int> next_worker{0};

    parallel_for(
        n,
        [&](std::int64_t lo, std::int64_t hi) {
            int w = next_worker.fetch_add(1);
            Hit local;
            for (std::int64_t i = lo; i < hi; ++i) {
                if (i > best_i.load(std::memory_order_relaxed)) break;
                const double* di = d.row(static_cast<int>(i));
                for (int j = 0; j < n; ++j) {
                    const double* dj = d.row(j);
                    const double dij = di[j];
                    for (int k = 0; k < n; ++k) {
                        if (di[k] > dij + dj[k] + kTriangleTol) {
                            local = {static_cast<int>(i), j, k, di[k] - (dij + dj[k])};
                            break;
                        }
                    }
                    if (local.i >= 0) break;
                }
                if (local.i >= 0) {
                    std::int64_t cur = best_i.load();
                    while (i < cur && !best_i.compare_exchange_weak(cur, i)) {
                    }
                    break;
                }
            }
            per[static_cast<size_t>(w)] = local;
        },
        workers);

    Hit best;
    for (const Hit& h : per) {
        if (h.i < 0) continue;
        if (best.i < 0 || h.i < best.i || (h.i == best.i && (h.j < best.j || (h.j == best.j && h.k < best.k))))
            best = h;
    }
    if (best.i < 0) return std::nullopt;
    Issue is;
    is.code = IssueCode::TriangleViolation;
    is.indices = {best.i, best.j, best.k};
    is.slack = best.slack;
    is.detail = "dist(i,k) > dist(i,j) + dist(j,k)";
    return is;
}

std::optional<Issue> triangle_scan_sampled(const SquareMatrix& d, const ValidateOptions& opts) {
    const int n = d.n;
    SplitMix64 rng(opts.seed);
    for (std::size_t s = 0; s < opts.sample_triples; ++s) {
        int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (d.at(i, k) > d.at(i, j) + d.at(j, k) + kTriangleTol) {
            Issue is;
            is.code = IssueCode::TriangleViolation;
            is.indices = {i, j, k};
            is.slack = d.at(i, k) - (d.at(i, j) + d.at(j, k));
            is.detail = "dist(i,k) > dist(i,j) + dist(j,k) (sampled scan)";
            return is;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<Issue> validate_space(const std::vector<PointLabel>& points, const SquareMatrix& dist,
                                    const ValidateOptions& opts) {
    if (auto is = check_shape(points, dist)) return is;
    const int n = dist.n;
    for (int i = 0; i < n; ++i) {
        if (dist.at(i, i) != 0.0) {
            Issue is;
            is.code = IssueCode::ZeroOffDiagonal;
            is.indices = {i, i, -1};
            is.slack = dist.at(i, i);
            is.detail = "nonzero diagonal entry";
            return is;
        }
        for (int j = 0; j < n; ++j) {
            if (dist.at(i, j) != dist.at(j, i)) {
                Issue is;
                is.code = IssueCode::NotSymmetric;
                is.indices = {i, j, -1};
                is.slack = dist.at(i, j) - dist.at(j, i);
                return is;
            }
            if (i != j && dist.at(i, j) <= 0.0) {
                Issue is;
                is.code = IssueCode::ZeroOffDiagonal;
                is.indices = {i, j, -1};
                is.slack = dist.at(i, j);
                is.detail = "off-diagonal distance must be positive";
                return is;
            }
        }
    }
    if (opts.exhaustive || n <= opts.exhaustive_cutoff) return triangle_scan_exhaustive(dist);
    return triangle_scan_sampled(dist, opts);
}

FiniteMetricSpace FiniteMetricSpace::validated(std::string name, std::vector<PointLabel> points,
                                               SquareMatrix dist, const ValidateOptions& opts) {
    if (auto is = validate_space(points, dist, opts)) raise(*is);
    FiniteMetricSpace s;
    s.name = std::move(name);
    s.points = std::move(points);
    s.dist = std::move(dist);
    return s;
}

} // namespace coarse
