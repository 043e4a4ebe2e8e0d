#include "coarse/double_metric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "coarse/errors.hpp"
#include "coarse/util.hpp"

namespace coarse {

namespace {

struct MixedHit {
    int kind = 0;
    int i = -1, j = -1, k = -1;
    double slack = 0.0;
};

bool earlier(const MixedHit& a, const MixedHit& b) {
    if (b.kind == 0) return a.kind != 0;
    if (a.kind == 0) return false;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.k < b.k;
}

// One mixed-triangle family over a row pair; returns first offending j.
inline int scan_row(int kind, const double* cross_i, const double* cross_k, double pivot, int n,
                    double& slack) {
    if (kind == 1) { // cross(i,j) <= base(i,k) + cross(k,j), scanning j with fixed i,k
        for (int j = 0; j < n; ++j)
            if (cross_i[j] > pivot + cross_k[j] + kTriangleTol) {
                slack = cross_i[j] - (pivot + cross_k[j]);
                return j;
            }
        return -1;
    }
    // kind 3: base(i,k) <= cross(i,j) + cross(k,j), scanning j
    for (int j = 0; j < n; ++j)
        if (pivot > cross_i[j] + cross_k[j] + kTriangleTol) {
            slack = pivot - (cross_i[j] + cross_k[j]);
            return j;
        }
    return -1;
}

// Families (2) and (4) follow from (1) and (3) applied to the transpose with
// the same base, so the scan materializes the transpose once and reuses the
// row kernels. Kind numbering in reports stays 1-4 as documented.
std::optional<Issue> mixed_scan_exhaustive(const FiniteMetricSpace& base, const SquareMatrix& cross) {
    const int n = base.size();
    SquareMatrix crossT(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) crossT.at(j, i) = cross.at(i, j);

    int workers = worker_count();
    std::vector<MixedHit> per(static_cast<size_t>(std::max(workers, 1)));
    std::atomic<int> next_worker{0};
    std::atomic<std::int64_t> stop_i{n};

    parallel_for(
        n,
        [&](std::int64_t lo, std::int64_t hi) {
            int w = next_worker.fetch_add(1);
            MixedHit local;
            for (std::int64_t i = lo; i < hi; ++i) {
                if (i > stop_i.load(std::memory_order_relaxed)) break;
                for (int k = 0; k < n && local.kind == 0; ++k) {
                    const double bik = base.d(static_cast<int>(i), k);
                    double slack = 0.0;
                    int j = scan_row(1, cross.row(static_cast<int>(i)), cross.row(k), bik, n, slack);
                    if (j >= 0) {
                        local = {1, static_cast<int>(i), j, k, slack};
                        break;
                    }
                    j = scan_row(1, crossT.row(static_cast<int>(i)), crossT.row(k), bik, n, slack);
                    if (j >= 0) {
                        // transposed family (1) is family (2): offending triple is (j, i, k)
                        local = {2, j, static_cast<int>(i), k, slack};
                        break;
                    }
                    j = scan_row(3, cross.row(static_cast<int>(i)), cross.row(k), bik, n, slack);
                    if (j >= 0) {
                        local = {3, static_cast<int>(i), j, k, slack};
                        break;
                    }
                    j = scan_row(3, crossT.row(static_cast<int>(i)), crossT.row(k), bik, n, slack);
                    if (j >= 0) {
                        local = {4, j, static_cast<int>(i), k, slack};
                        break;
                    }
                }
                if (local.kind != 0) {
                    std::int64_t cur = stop_i.load();
                    while (i < cur && !stop_i.compare_exchange_weak(cur, i)) {
                    }
                    break;
                }
            }
            per[static_cast<size_t>(w)] = local;
        },
        workers);

    MixedHit best;
    for (const MixedHit& h : per)
        if (h.kind != 0 && earlier(h, best)) best = h;
    if (best.kind == 0) return std::nullopt;
    Issue is;
    is.code = IssueCode::MixedTriangleViolation;
    is.kind = best.kind;
    is.indices = {best.i, best.j, best.k};
    is.slack = best.slack;
    return is;
}

std::optional<Issue> mixed_scan_sampled(const FiniteMetricSpace& base, const SquareMatrix& cross,
                                        const ValidateOptions& opts) {
    const int n = base.size();
    SplitMix64 rng(opts.seed ^ 0xD0B1E5ULL);
    for (std::size_t s = 0; s < opts.sample_triples; ++s) {
        int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        Issue is;
        is.code = IssueCode::MixedTriangleViolation;
        is.indices = {i, j, k};
        if (cross.at(i, j) > base.d(i, k) + cross.at(k, j) + kTriangleTol) {
            is.kind = 1;
            is.slack = cross.at(i, j) - (base.d(i, k) + cross.at(k, j));
            return is;
        }
        if (cross.at(i, j) > cross.at(i, k) + base.d(k, j) + kTriangleTol) {
            is.kind = 2;
            is.slack = cross.at(i, j) - (cross.at(i, k) + base.d(k, j));
            return is;
        }
        if (base.d(i, k) > cross.at(i, j) + cross.at(k, j) + kTriangleTol) {
            is.kind = 3;
            is.slack = base.d(i, k) - (cross.at(i, j) + cross.at(k, j));
            return is;
        }
        if (base.d(j, k) > cross.at(i, j) + cross.at(i, k) + kTriangleTol) {
            is.kind = 4;
            is.slack = base.d(j, k) - (cross.at(i, j) + cross.at(i, k));
            return is;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<Issue> validate_double(const FiniteMetricSpace& base, const SquareMatrix& cross,
                                     const ValidateOptions& opts) {
    const int n = base.size();
    if (cross.n != n || cross.a.size() != static_cast<size_t>(n) * n) {
        Issue is;
        is.code = IssueCode::NotSquare;
        is.detail = "cross dimensions do not match base";
        return is;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = cross.at(i, j);
            if (!std::isfinite(v)) {
                Issue is;
                is.code = IssueCode::NotFinite;
                is.indices = {i, j, -1};
                return is;
            }
            if (v <= 0.0) {
                Issue is;
                is.code = IssueCode::NonPositiveCross;
                is.indices = {i, j, -1};
                is.slack = v;
                return is;
            }
        }
    if (opts.exhaustive || n <= opts.exhaustive_cutoff)
        return mixed_scan_exhaustive(base, cross);
    return mixed_scan_sampled(base, cross, opts);
}

DoubleMetric DoubleMetric::validated(FiniteMetricSpace base, SquareMatrix cross,
                                     const ValidateOptions& opts) {
    if (auto is = validate_double(base, cross, opts)) raise(*is);
    return trusted(std::move(base), std::move(cross));
}

DoubleMetric DoubleMetric::trusted(FiniteMetricSpace base, SquareMatrix cross) {
    DoubleMetric d;
    d.floor_value = std::numeric_limits<double>::infinity();
    for (double v : cross.a) d.floor_value = std::min(d.floor_value, v);
    d.base = std::move(base);
    d.cross = std::move(cross);
    return d;
}

static std::vector<int> normalize_subset(std::vector<int> subset, int n) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    if (subset.empty()) raise(IssueCode::EmptySubset, "restriction needs at least one point");
    if (subset.front() < 0 || subset.back() >= n)
        raise(IssueCode::ParamOutOfRange, "subset index out of range");
    return subset;
}

FiniteMetricSpace restrict_space(const FiniteMetricSpace& s, std::vector<int> subset) {
    subset = normalize_subset(std::move(subset), s.size());
    FiniteMetricSpace out;
    out.name = s.name;
    const int m = static_cast<int>(subset.size());
    out.points.reserve(static_cast<size_t>(m));
    for (int idx : subset) out.points.push_back(s.points[static_cast<size_t>(idx)]);
    out.dist = SquareMatrix(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out.dist.at(i, j) = s.d(subset[i], subset[j]);
    return out;
}

DoubleMetric restrict_double(const DoubleMetric& d, std::vector<int> subset) {
    subset = normalize_subset(std::move(subset), d.size());
    FiniteMetricSpace base = restrict_space(d.base, subset);
    const int m = static_cast<int>(subset.size());
    SquareMatrix cross(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) cross.at(i, j) = d.cross.at(subset[i], subset[j]);
    return DoubleMetric::trusted(std::move(base), std::move(cross));
}

DiagProfile diag_profile(const DoubleMetric& d) {
    const int n = d.size();
    DiagProfile p;
    p.a.assign(static_cast<size_t>(n), std::numeric_limits<double>::infinity());
    p.b.resize(static_cast<size_t>(n));
    p.c.assign(static_cast<size_t>(n), std::numeric_limits<double>::infinity());
    for (int i = 0; i < n; ++i) {
        const double* row = d.cross.row(i);
        double amin = row[0];
        for (int j = 1; j < n; ++j) amin = std::min(amin, row[j]);
        p.a[static_cast<size_t>(i)] = amin;
        p.b[static_cast<size_t>(i)] = d.cross.at(i, i);
        for (int j = 0; j < n; ++j)
            p.c[static_cast<size_t>(j)] = std::min(p.c[static_cast<size_t>(j)], row[j]);
    }
    return p;
}

} // namespace coarse
