#include "coarse/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coarse/errors.hpp"
#include "coarse/util.hpp"

namespace coarse {

const std::vector<double> kDefaultCGrid = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};

const char* ComparisonVerdict::kind_name(Kind k) {
    switch (k) {
        case Kind::Dominated: return "dominated";
        case Kind::NotDominated: return "not-dominated";
        case Kind::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* ClassLabel::label_name(Label l) {
    switch (l) {
        case Label::Unit: return "Unit";
        case Label::Zero: return "Zero";
        case Label::ProperIdempotent: return "ProperIdempotent";
        case Label::SelfadjointNonIdempotent: return "SelfadjointNonIdempotent";
        case Label::General: return "General";
    }
    return "?";
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct CutAcc {
    double max_a = kNegInf;
    long long id = -1;
    double a_at = 0.0;
    double b_at = 0.0;
    std::size_t count = 0;
};

struct LevelAcc {
    double param = 0.0;
    double shift = kNegInf; // max(a - b) over the level
    std::size_t count = 0;
    std::vector<CutAcc> cuts;
};

using Emit = std::function<void(long long, double, double)>;
using Visit = std::function<void(int, const Emit&)>;

// One pass per level accumulates everything the verdict logic needs: the
// pointwise shift max(a-b) and, per cutoff C, the largest a over {b <= C}.
ComparisonVerdict dominates_core(const std::vector<double>& params, const Visit& visit,
                                 const std::vector<double>& grid) {
    if (grid.empty()) raise(IssueCode::GridEmpty, "domination test needs a cutoff grid");
    if (params.size() < 3)
        raise(IssueCode::LevelsTooFew, "domination test needs >= 3 levels, got " +
                                           std::to_string(params.size()));
    std::vector<double> cuts = grid;
    std::sort(cuts.begin(), cuts.end());

    const int L = static_cast<int>(params.size());
    std::vector<LevelAcc> acc(static_cast<size_t>(L));
    for (int l = 0; l < L; ++l) {
        LevelAcc& la = acc[static_cast<size_t>(l)];
        la.param = params[static_cast<size_t>(l)];
        la.cuts.assign(cuts.size(), CutAcc{});
        visit(l, [&](long long id, double a, double b) {
            la.count++;
            if (a - b > la.shift) la.shift = a - b;
            for (size_t c = 0; c < cuts.size(); ++c) {
                if (b <= cuts[c]) {
                    CutAcc& ca = la.cuts[c];
                    ca.count++;
                    if (a > ca.max_a) {
                        ca.max_a = a;
                        ca.id = id;
                        ca.a_at = a;
                        ca.b_at = b;
                    }
                }
            }
        });
    }

    ComparisonVerdict v;
    for (int l = 0; l < L; ++l)
        for (size_t c = 0; c < cuts.size(); ++c)
            if (acc[static_cast<size_t>(l)].cuts[c].count > 0)
                v.table.push_back({acc[static_cast<size_t>(l)].param, cuts[c],
                                   acc[static_cast<size_t>(l)].cuts[c].max_a});

    // Bounded shift: a <= b + S pointwise with S stabilized is domination with
    // the reparametrization t -> t + S.
    double s_last = acc[static_cast<size_t>(L - 1)].shift;
    double s_prev = acc[static_cast<size_t>(L - 2)].shift;
    if (std::isfinite(s_last) && std::isfinite(s_prev) && std::fabs(s_last - s_prev) <= kLevelSlack) {
        v.kind = ComparisonVerdict::Kind::Dominated;
        v.reason = "bounded shift: max(a-b) stabilizes at " + format_double(s_last);
        return v;
    }

    // Escape: some cutoff whose table grows by more than the slack at every
    // step over >= 3 consecutive levels.
    for (size_t c = 0; c < cuts.size(); ++c) {
        for (int start = 0; start + 2 < L; ++start) {
            int run = 0;
            for (int l = start; l < L; ++l) {
                const CutAcc& ca = acc[static_cast<size_t>(l)].cuts[c];
                if (ca.count == 0) break;
                if (l > start) {
                    const CutAcc& prev = acc[static_cast<size_t>(l - 1)].cuts[c];
                    if (!(ca.max_a > prev.max_a + kLevelSlack)) break;
                }
                run = l - start + 1;
            }
            if (run >= 3) {
                v.kind = ComparisonVerdict::Kind::NotDominated;
                v.witness_C = cuts[c];
                for (int l = start; l < start + run; ++l) {
                    const CutAcc& ca = acc[static_cast<size_t>(l)].cuts[c];
                    v.witness.push_back({acc[static_cast<size_t>(l)].param, ca.id, "", ca.a_at, ca.b_at});
                }
                v.reason = "a escapes on {b <= " + format_double(cuts[c]) + "}";
                return v;
            }
        }
    }

    // Stability: every cutoff active at the last two levels has settled.
    bool any_active = false;
    bool all_stable = true;
    for (size_t c = 0; c < cuts.size(); ++c) {
        const CutAcc& last = acc[static_cast<size_t>(L - 1)].cuts[c];
        const CutAcc& prev = acc[static_cast<size_t>(L - 2)].cuts[c];
        if (last.count == 0 || prev.count == 0) continue;
        any_active = true;
        if (std::fabs(last.max_a - prev.max_a) > kLevelSlack) all_stable = false;
    }
    if (any_active && all_stable) {
        v.kind = ComparisonVerdict::Kind::Dominated;
        v.reason = "per-cutoff maxima stabilize";
        return v;
    }
    v.kind = ComparisonVerdict::Kind::Inconclusive;
    v.reason = any_active ? "maxima neither stabilize nor escape at the sampled levels"
                          : "no cutoff in the grid reaches the sampled b values";
    return v;
}

std::vector<double> check_alignment(const SampledFunction& a, const SampledFunction& b) {
    if (a.levels.size() != b.levels.size())
        raise(IssueCode::ParamOutOfRange, "sampled functions disagree on level count");
    std::vector<double> params;
    for (size_t l = 0; l < a.levels.size(); ++l) {
        const auto& la = a.levels[l];
        const auto& lb = b.levels[l];
        if (la.ids != lb.ids || la.param != lb.param)
            raise(IssueCode::ParamOutOfRange, "sampled functions must share index sets per level");
        if (la.ids.size() != la.values.size() || lb.ids.size() != lb.values.size())
            raise(IssueCode::ParamOutOfRange, "sample ids/values size mismatch");
        params.push_back(la.param);
    }
    return params;
}

} // namespace

ComparisonVerdict dominates(const SampledFunction& a, const SampledFunction& b,
                            const std::vector<double>& c_grid) {
    std::vector<double> params = check_alignment(a, b);
    return dominates_core(
        params,
        [&](int l, const Emit& emit) {
            const auto& la = a.levels[static_cast<size_t>(l)];
            const auto& lb = b.levels[static_cast<size_t>(l)];
            for (size_t i = 0; i < la.ids.size(); ++i) emit(la.ids[i], la.values[i], lb.values[i]);
        },
        c_grid);
}

std::string pair_id_label(const DoubleMetric& d, long long id) {
    const int n = d.size();
    int i = static_cast<int>(id / n);
    int j = static_cast<int>(id % n);
    if (i < 0 || i >= n) return "?";
    return d.base.points[static_cast<size_t>(i)].str() + "|" +
           d.base.points[static_cast<size_t>(j)].str() + "'";
}

namespace {

// Mutual domination of two cross matrices over the family's level pairs.
// Works on raw matrices so callers can compare against transposes or formula
// fields without wrapping them in a full double.
ComparisonVerdict coarse_equal_matrices(const SquareMatrix& A, const SquareMatrix& B,
                                        const ScaleFamily& family, const DoubleMetric& label_src,
                                        const std::vector<double>& c_grid) {
    const int n = A.n;
    auto pair_visit = [&](const SquareMatrix& X, const SquareMatrix& Y) {
        return [&X, &Y, &family, n](int l, const Emit& emit) {
            const std::vector<int>& lv = family.levels[static_cast<size_t>(l)];
            for (int i : lv) {
                const double* rx = X.row(i);
                const double* ry = Y.row(i);
                const long long base_id = static_cast<long long>(i) * n;
                for (int j : lv) emit(base_id + j, rx[j], ry[j]);
            }
        };
    };

    ComparisonVerdict fwd = dominates_core(family.params, pair_visit(A, B), c_grid);
    ComparisonVerdict bwd = dominates_core(family.params, pair_visit(B, A), c_grid);

    auto fill_points = [&](ComparisonVerdict& v) {
        for (auto& w : v.witness) w.point = pair_id_label(label_src, w.id);
    };

    if (fwd.dominated() && bwd.dominated()) {
        ComparisonVerdict v = fwd;
        v.direction = "mutual";
        v.reason = "coarsely equal (" + fwd.reason + " / " + bwd.reason + ")";
        return v;
    }
    if (fwd.not_dominated()) {
        fill_points(fwd);
        fwd.direction = "left-not-dominated-by-right";
        return fwd;
    }
    if (bwd.not_dominated()) {
        fill_points(bwd);
        bwd.direction = "right-not-dominated-by-left";
        return bwd;
    }
    ComparisonVerdict v;
    v.kind = ComparisonVerdict::Kind::Inconclusive;
    v.reason = "forward: " + fwd.reason + "; backward: " + bwd.reason;
    v.table = fwd.table;
    return v;
}

} // namespace

ComparisonVerdict coarse_equal(const DoubleMetric& d, const DoubleMetric& rho,
                               const ScaleFamily& family, const std::vector<double>& c_grid) {
    if (!d.base.same_space(rho.base) || !d.base.same_space(family.ambient.base))
        raise(IssueCode::BaseMismatch, "coarse_equal needs identical bases");
    return coarse_equal_matrices(d.cross, rho.cross, family, d, c_grid);
}

ComparisonVerdict is_selfadjoint(const DoubleMetric& d, const ScaleFamily& family) {
    ComparisonVerdict v = coarse_equal_matrices(d.cross, transposed(d.cross), family, d,
                                                kDefaultCGrid);
    if (v.direction.empty() || v.direction == "mutual") v.direction = "d vs d*";
    return v;
}

SampledFunction profile_samples(const DoubleMetric& ambient, const ScaleFamily& family,
                                ProfileKind which) {
    DiagProfile prof = diag_profile(ambient);
    const std::vector<double>* src = nullptr;
    switch (which) {
        case ProfileKind::NearestCross: src = &prof.a; break;
        case ProfileKind::Diagonal: src = &prof.b; break;
        case ProfileKind::NearestCrossReverse: src = &prof.c; break;
    }
    SampledFunction f;
    for (size_t l = 0; l < family.levels.size(); ++l) {
        SampledFunction::Level lev;
        lev.param = family.params[l];
        for (int i : family.levels[l]) {
            lev.ids.push_back(i);
            lev.values.push_back((*src)[static_cast<size_t>(i)]);
        }
        f.levels.push_back(std::move(lev));
    }
    return f;
}

ComparisonVerdict is_idempotent(const DoubleMetric& d, const ScaleFamily& family) {
    ComparisonVerdict sa = is_selfadjoint(d, family);
    if (!sa.dominated()) {
        Issue is;
        is.code = IssueCode::NotSelfadjoint;
        is.detail = "idempotency criterion needs selfadjoint input: " + sa.reason;
        raise(is);
    }
    SampledFunction diag = profile_samples(d, family, ProfileKind::Diagonal);
    SampledFunction nearest = profile_samples(d, family, ProfileKind::NearestCross);
    ComparisonVerdict v = dominates(diag, nearest);
    for (auto& w : v.witness)
        w.point = d.base.points[static_cast<size_t>(w.id)].str();
    v.direction = "diagonal profile vs nearest-cross profile";
    return v;
}

ComparisonVerdict stabilization_verdict(const std::vector<LevelMax>& rows, double slack) {
    ComparisonVerdict v;
    for (const LevelMax& r : rows) v.table.push_back({r.param, 0.0, r.value});
    if (rows.size() < 2) {
        v.kind = ComparisonVerdict::Kind::Inconclusive;
        v.reason = "not enough levels";
        return v;
    }
    const size_t m = rows.size();
    if (std::fabs(rows[m - 1].value - rows[m - 2].value) <= slack) {
        v.kind = ComparisonVerdict::Kind::Dominated;
        v.reason = "bound stabilizes at " + format_double(rows[m - 1].value);
        return v;
    }
    if (m >= 3 && rows[m - 1].value > rows[m - 2].value + slack &&
        rows[m - 2].value > rows[m - 3].value + slack) {
        v.kind = ComparisonVerdict::Kind::NotDominated;
        for (size_t i = m - 3; i < m; ++i)
            v.witness.push_back({rows[i].param, rows[i].id, "", rows[i].value, 0.0});
        v.reason = "bound escapes across levels";
        return v;
    }
    v.kind = ComparisonVerdict::Kind::Inconclusive;
    v.reason = "bound neither stabilizes nor escapes";
    return v;
}

ClassLabel classify(const DoubleMetric& d, const ScaleFamily& family) {
    if (family.level_count() < 3)
        raise(IssueCode::LevelsTooFew, "classification needs >= 3 levels");
    ClassLabel out;
    const int n = d.size();

    // Unit test: the diagonal profile controls the whole cross within one base
    // distance each way, so [d] = 1 exactly when the diagonal stays bounded.
    std::vector<LevelMax> diag_rows;
    for (size_t l = 0; l < family.levels.size(); ++l) {
        LevelMax r;
        r.param = family.params[l];
        r.value = kNegInf;
        for (int i : family.levels[l]) {
            double b = d.cross.at(i, i);
            if (b > r.value) {
                r.value = b;
                r.id = i;
            }
        }
        diag_rows.push_back(r);
    }
    ComparisonVerdict unit_v = stabilization_verdict(diag_rows);
    unit_v.direction = "diagonal bound";
    for (auto& w : unit_v.witness) w.point = d.base.points[static_cast<size_t>(w.id)].str();
    bool is_unit = unit_v.dominated();
    out.evidence.push_back({"unit-diagonal", unit_v});
    if (is_unit) {
        out.label = ClassLabel::Label::Unit;
        return out;
    }

    // Basepoint-sum field, built directly; the zero comparison only needs the
    // matrix.
    SquareMatrix zero_cross(n);
    {
        const double* row0 = d.base.dist.row(0);
        for (int i = 0; i < n; ++i) {
            const double left = row0[i] + 1.0;
            double* zi = zero_cross.row(i);
            for (int j = 0; j < n; ++j) zi[j] = left + row0[j];
        }
    }
    ComparisonVerdict zero_v = coarse_equal_matrices(d.cross, zero_cross, family, d, kDefaultCGrid);
    bool is_zero = zero_v.dominated();
    out.evidence.push_back({"zero-comparison", zero_v});
    if (is_zero) {
        out.label = ClassLabel::Label::Zero;
        return out;
    }

    ComparisonVerdict sa = is_selfadjoint(d, family);
    out.evidence.push_back({"selfadjoint", sa});
    if (sa.dominated()) {
        SampledFunction diag = profile_samples(d, family, ProfileKind::Diagonal);
        SampledFunction nearest = profile_samples(d, family, ProfileKind::NearestCross);
        ComparisonVerdict idem = dominates(diag, nearest);
        idem.direction = "diagonal profile vs nearest-cross profile";
        for (auto& w : idem.witness)
            w.point = d.base.points[static_cast<size_t>(w.id)].str();
        out.evidence.push_back({"idempotent", idem});
        out.label = idem.dominated() ? ClassLabel::Label::ProperIdempotent
                                     : ClassLabel::Label::SelfadjointNonIdempotent;
        return out;
    }
    out.label = ClassLabel::Label::General;
    return out;
}

ComparisonVerdict r_space_probe(const ScaleFamily& family, const std::vector<int>& xs,
                                const std::vector<int>& ys, double C) {
    if (xs.size() != ys.size())
        raise(IssueCode::ParamOutOfRange, "probe sequences must have equal length");
    if (C <= 0.0) raise(IssueCode::ParamOutOfRange, "C must be positive");
    if (family.level_count() < 3) raise(IssueCode::LevelsTooFew, "probe needs >= 3 levels");
    const FiniteMetricSpace& X = family.ambient.base;
    const int n = X.size();
    for (size_t i = 0; i < xs.size(); ++i)
        if (xs[i] < 0 || xs[i] >= n || ys[i] < 0 || ys[i] >= n)
            raise(IssueCode::ParamOutOfRange, "probe index out of range");

    for (size_t p = 0; p < xs.size(); ++p)
        for (size_t q = p + 1; q < xs.size(); ++q) {
            double diff = std::fabs(X.d(xs[p], xs[q]) - X.d(ys[p], ys[q]));
            if (!(diff < C)) {
                Issue is;
                is.code = IssueCode::NearConditionViolated;
                is.indices = {static_cast<int>(p), static_cast<int>(q), -1};
                is.slack = diff - C;
                is.detail = "mutual distances drift by " + format_double(diff);
                raise(is);
            }
        }

    std::vector<LevelMax> rows;
    for (size_t l = 0; l < family.levels.size(); ++l) {
        const std::vector<int>& lv = family.levels[l];
        auto contains = [&lv](int idx) {
            return std::binary_search(lv.begin(), lv.end(), idx);
        };
        LevelMax r;
        r.param = family.params[l];
        r.value = kNegInf;
        bool any = false;
        for (size_t i = 0; i < xs.size(); ++i) {
            if (!contains(xs[i]) || !contains(ys[i])) continue;
            any = true;
            double disp = X.d(xs[i], ys[i]);
            if (disp > r.value) {
                r.value = disp;
                r.id = static_cast<long long>(i);
            }
        }
        if (any) rows.push_back(r);
    }
    ComparisonVerdict v;
    if (rows.size() < 3) {
        v.kind = ComparisonVerdict::Kind::Inconclusive;
        v.reason = "fewer than 3 levels contain probe pairs";
    } else {
        v = stabilization_verdict(rows);
    }
    v.direction = "displacement bound";
    for (auto& w : v.witness)
        w.point = X.points[static_cast<size_t>(xs[static_cast<size_t>(w.id)])].str() + "~" +
                  X.points[static_cast<size_t>(ys[static_cast<size_t>(w.id)])].str();
    return v;
}

std::vector<DefectRow> almost_isometry_defect(const PointMap& f, const ScaleFamily& family) {
    const FiniteMetricSpace& X = family.ambient.base;
    if (f.size() != X.size()) raise(IssueCode::ParamOutOfRange, "map size mismatch");
    std::vector<DefectRow> out;
    for (size_t l = 0; l < family.levels.size(); ++l) {
        const std::vector<int>& lv = family.levels[l];
        std::vector<int> dom;
        for (int i : lv)
            if (f.in_domain(i)) dom.push_back(i);
        if (dom.empty()) raise(IssueCode::EmptySubset, "map domain misses a whole level");
        DefectRow row;
        row.param = family.params[l];
        for (size_t a = 0; a < dom.size(); ++a) {
            row.displacement = std::max(row.displacement, X.d(dom[a], f(dom[a])));
            for (size_t b = a + 1; b < dom.size(); ++b) {
                double diff = std::fabs(X.d(f(dom[a]), f(dom[b])) - X.d(dom[a], dom[b]));
                row.distortion = std::max(row.distortion, diff);
            }
        }
        for (int y : lv) {
            double nearest = std::numeric_limits<double>::infinity();
            for (int u : dom) nearest = std::min(nearest, X.d(y, f(u)));
            row.codensity = std::max(row.codensity, nearest);
        }
        out.push_back(row);
    }
    return out;
}

} // namespace coarse
