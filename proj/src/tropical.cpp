#include "coarse/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coarse/analysis.hpp"
#include "coarse/errors.hpp"
#include "coarse/util.hpp"

namespace coarse {

namespace {
constexpr int kRowBlock = 64;
}

DoubleMetric compose(const DoubleMetric& outer, const DoubleMetric& inner, int workers) {
    if (!outer.base.same_space(inner.base))
        raise(IssueCode::BaseMismatch, "compose needs identical bases");
    return DoubleMetric::trusted(inner.base, min_plus_product(inner.cross, outer.cross, workers));
}

SquareMatrix min_plus_product(const SquareMatrix& A, const SquareMatrix& B, int workers) {
    const int n = A.n;
    SquareMatrix out(n, std::numeric_limits<double>::infinity());

    // Row-blocked min-plus with the middle index unrolled four wide, so each
    // output row is read and written once per four B rows. Candidate sums are
    // independent and min is exact, so any traversal gives identical bits.
    const std::int64_t blocks = (n + kRowBlock - 1) / kRowBlock;
    parallel_for(
        blocks,
        [&](std::int64_t blo, std::int64_t bhi) {
            for (std::int64_t blk = blo; blk < bhi; ++blk) {
                const int x0 = static_cast<int>(blk) * kRowBlock;
                const int x1 = std::min(n, x0 + kRowBlock);
                int u = 0;
                for (; u + 4 <= n; u += 4) {
                    const double* b0 = B.row(u);
                    const double* b1 = B.row(u + 1);
                    const double* b2 = B.row(u + 2);
                    const double* b3 = B.row(u + 3);
                    for (int x = x0; x < x1; ++x) {
                        const double a0 = A.at(x, u);
                        const double a1 = A.at(x, u + 1);
                        const double a2 = A.at(x, u + 2);
                        const double a3 = A.at(x, u + 3);
                        double* ox = out.row(x);
                        for (int z = 0; z < n; ++z) {
                            double c01 = std::min(a0 + b0[z], a1 + b1[z]);
                            double c23 = std::min(a2 + b2[z], a3 + b3[z]);
                            ox[z] = std::min(ox[z], std::min(c01, c23));
                        }
                    }
                }
                for (; u < n; ++u) {
                    const double* bu = B.row(u);
                    for (int x = x0; x < x1; ++x) {
                        const double axu = A.at(x, u);
                        double* ox = out.row(x);
                        for (int z = 0; z < n; ++z) ox[z] = std::min(ox[z], axu + bu[z]);
                    }
                }
            }
        },
        workers);

    return out;
}

SquareMatrix transposed(const SquareMatrix& m) {
    const int n = m.n;
    SquareMatrix t(n);
    constexpr int kTile = 64;
    for (int i0 = 0; i0 < n; i0 += kTile)
        for (int j0 = 0; j0 < n; j0 += kTile) {
            const int i1 = std::min(n, i0 + kTile), j1 = std::min(n, j0 + kTile);
            for (int i = i0; i < i1; ++i)
                for (int j = j0; j < j1; ++j) t.at(j, i) = m.at(i, j);
        }
    return t;
}

DoubleMetric adjoint(const DoubleMetric& d) {
    return DoubleMetric::trusted(d.base, transposed(d.cross));
}

DoubleMetric unit_rep(const FiniteMetricSpace& space, double gap) {
    if (gap <= 0.0) raise(IssueCode::ParamOutOfRange, "gap must be positive");
    const int n = space.size();
    SquareMatrix cross(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cross.at(i, j) = space.d(i, j) + gap;
    return DoubleMetric::trusted(space, std::move(cross));
}

DoubleMetric zero_rep(const FiniteMetricSpace& space, int basepoint, double gap) {
    if (gap <= 0.0) raise(IssueCode::ParamOutOfRange, "gap must be positive");
    const int n = space.size();
    if (basepoint < 0 || basepoint >= n)
        raise(IssueCode::ParamOutOfRange, "basepoint out of range");
    SquareMatrix cross(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cross.at(i, j) = space.d(i, basepoint) + gap + space.d(basepoint, j);
    return DoubleMetric::trusted(space, std::move(cross));
}

DoubleMetric link_metric(const FiniteMetricSpace& space, const std::vector<int>& subset,
                         double gap) {
    if (gap <= 0.0) raise(IssueCode::ParamOutOfRange, "gap must be positive");
    if (subset.empty()) raise(IssueCode::EmptySubset, "link metric needs a nonempty subset");
    const int n = space.size();
    for (int u : subset)
        if (u < 0 || u >= n) raise(IssueCode::ParamOutOfRange, "subset index out of range");
    SquareMatrix cross(n, std::numeric_limits<double>::infinity());
    for (int u : subset) {
        const double* du = space.dist.row(u);
        for (int i = 0; i < n; ++i) {
            const double diu = du[i] + gap;
            double* ci = cross.row(i);
            for (int j = 0; j < n; ++j) ci[j] = std::min(ci[j], diu + du[j]);
        }
    }
    return DoubleMetric::trusted(space, std::move(cross));
}

std::vector<int> PointMap::domain() const {
    std::vector<int> dom;
    for (int i = 0; i < size(); ++i)
        if (in_domain(i)) dom.push_back(i);
    return dom;
}

PointMap PointMap::total(int n, const std::vector<int>& targets) {
    if (static_cast<int>(targets.size()) != n)
        raise(IssueCode::ParamOutOfRange, "target list size mismatch");
    PointMap f;
    f.image = targets;
    return f;
}

double PointMap::distortion(const FiniteMetricSpace& space, std::pair<int, int>* argmax) const {
    double worst = 0.0;
    std::pair<int, int> at{-1, -1};
    const std::vector<int> dom = domain();
    for (size_t a = 0; a < dom.size(); ++a)
        for (size_t b = a + 1; b < dom.size(); ++b) {
            int u = dom[a], v = dom[b];
            double diff = std::fabs(space.d(image[static_cast<size_t>(u)], image[static_cast<size_t>(v)]) -
                                    space.d(u, v));
            if (diff > worst) {
                worst = diff;
                at = {u, v};
            }
        }
    if (argmax) *argmax = at;
    return worst;
}

DoubleMetric graph_metric(const FiniteMetricSpace& space, const PointMap& f, double C) {
    if (C <= 0.0) raise(IssueCode::ParamOutOfRange, "C must be positive");
    if (f.size() != space.size()) raise(IssueCode::ParamOutOfRange, "map size mismatch");
    const std::vector<int> dom = f.domain();
    if (dom.empty()) raise(IssueCode::EmptySubset, "map has empty domain");

    std::pair<int, int> worst_pair;
    double dist = f.distortion(space, &worst_pair);
    if (!(dist < C)) {
        Issue is;
        is.code = IssueCode::DistortionExceedsC;
        is.indices = {worst_pair.first, worst_pair.second, -1};
        is.slack = dist - C;
        is.detail = "map distortion " + format_double(dist) + " not below C = " + format_double(C);
        raise(is);
    }

    const int n = space.size();
    SquareMatrix cross(n, std::numeric_limits<double>::infinity());
    for (int u : dom) {
        const double* du = space.dist.row(u);
        const double* dfu = space.dist.row(f(u));
        for (int i = 0; i < n; ++i) {
            const double left = du[i] + C;
            double* ci = cross.row(i);
            for (int j = 0; j < n; ++j) ci[j] = std::min(ci[j], left + dfu[j]);
        }
    }
    if (auto is = validate_double(space, cross)) {
        Issue wrapped = *is;
        wrapped.code = IssueCode::ValidationFailed;
        wrapped.detail = "graph metric failed validation: " + is->str();
        raise(wrapped);
    }
    return DoubleMetric::trusted(space, std::move(cross));
}

std::pair<DoubleMetric, DoubleMetric> vn_pair(const DoubleMetric& s, int workers) {
    SquareMatrix adj = transposed(s.cross);
    DoubleMetric e = DoubleMetric::trusted(s.base, min_plus_product(s.cross, adj, workers));
    DoubleMetric f = DoubleMetric::trusted(s.base, min_plus_product(adj, s.cross, workers));
    return {std::move(e), std::move(f)};
}

ComparisonVerdict leq(const DoubleMetric& s, const DoubleMetric& t, const ScaleFamily& family) {
    if (!s.base.same_space(t.base) || !s.base.same_space(family.ambient.base))
        raise(IssueCode::BaseMismatch, "leq needs identical bases");
    DoubleMetric product = compose(t, compose(adjoint(s), s));
    ScaleFamily prod_family = ScaleFamily::from_subsets(product, family.params, family.levels);
    return coarse_equal(s, product, prod_family);
}

SemigroupElement SemigroupElement::make(DoubleMetric rep, std::vector<std::string> provenance) {
    SemigroupElement e;
    e.rep = std::move(rep);
    e.provenance = std::move(provenance);
    return e;
}

SemigroupElement& SemigroupElement::with_family(ScaleFamily fam) {
    if (!rep.base.same_space(fam.ambient.base) || !(rep.cross == fam.ambient.cross))
        raise(IssueCode::BaseMismatch, "family ambient must carry the representative");
    family = std::move(fam);
    return *this;
}

SemigroupElement SemigroupElement::composed_with(const SemigroupElement& inner) const {
    SemigroupElement out = make(compose(rep, inner.rep));
    out.provenance = inner.provenance;
    out.provenance.insert(out.provenance.end(), provenance.begin(), provenance.end());
    out.provenance.push_back("compose");
    return out;
}

SemigroupElement SemigroupElement::adjoint_element() const {
    SemigroupElement out = make(adjoint(rep));
    out.provenance = provenance;
    out.provenance.push_back("adjoint");
    return out;
}

} // namespace coarse
