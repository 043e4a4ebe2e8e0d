#pragma once

#include <functional>

#include "coarse/double_metric.hpp"
#include "coarse/scale_family.hpp"
#include "coarse/tropical.hpp"
#include "coarse/verdict.hpp"

namespace coarse {

// Default cutoff grid for domination tests. All decisions treat 1.0 as the
// "same at this scale" slack: values within 1.0 across the last two levels
// count as stabilized, growth above 1.0 at every step counts as escape.
extern const std::vector<double> kDefaultCGrid;
inline constexpr double kLevelSlack = 1.0;

// Tests a ⪯ b on sampled functions: is a bounded by some reparametrization of
// b at the sampled scales? Dominated when a - b has a stabilized upper bound
// or every cutoff's table stabilizes; NotDominated extracts a witness sequence
// with b <= C and a escaping across >= 3 levels.
ComparisonVerdict dominates(const SampledFunction& a, const SampledFunction& b,
                            const std::vector<double>& c_grid = kDefaultCGrid);

// Mutual domination of the cross functions on X x X' along the family levels.
// Dominated = coarsely equal; NotDominated carries the failing direction.
ComparisonVerdict coarse_equal(const DoubleMetric& d, const DoubleMetric& rho,
                               const ScaleFamily& family,
                               const std::vector<double>& c_grid = kDefaultCGrid);

ComparisonVerdict is_selfadjoint(const DoubleMetric& d, const ScaleFamily& family);

// Idempotency criterion for selfadjoint classes: diagonal profile b(x)=d(x,x')
// dominated by a(x)=d(x,X'). Throws NotSelfadjoint unless is_selfadjoint
// returns equal-evidence.
ComparisonVerdict is_idempotent(const DoubleMetric& d, const ScaleFamily& family);

// Decision tree: Unit (diagonal profile stabilizes), else Zero (coarsely equal
// to the basepoint-sum representative), else ProperIdempotent /
// SelfadjointNonIdempotent / General. Inconclusive branches fall through and
// stay attached as evidence.
ClassLabel classify(const DoubleMetric& d, const ScaleFamily& family);

// Rigidity probe: sequences xs, ys (ambient point indices) must have uniformly
// close mutual distances (checked against C; NearConditionViolated otherwise).
// Dominated = displacement d(x_n, y_n) bounded across levels; NotDominated
// carries the divergent displacement witness.
ComparisonVerdict r_space_probe(const ScaleFamily& family, const std::vector<int>& xs,
                                const std::vector<int>& ys, double C);

// Almost-isometry defect measures per level: sup |d(fx,fy)-d(x,y)| over domain
// pairs, sup_y d(y, f(dom)), sup_x d(x, fx).
struct DefectRow {
    double param = 0.0;
    double distortion = 0.0;
    double codensity = 0.0;
    double displacement = 0.0;
};
std::vector<DefectRow> almost_isometry_defect(const PointMap& f, const ScaleFamily& family);

// Per-level maxima of a scalar diagnostic -> bounded / escaping / inconclusive.
// Shared by the Unit test and the displacement probe.
struct LevelMax {
    double param = 0.0;
    long long id = -1;
    double value = 0.0;
};
ComparisonVerdict stabilization_verdict(const std::vector<LevelMax>& rows, double slack = kLevelSlack);

// Profile of the ambient double sampled at each level's points.
enum class ProfileKind { NearestCross, Diagonal, NearestCrossReverse };
SampledFunction profile_samples(const DoubleMetric& ambient, const ScaleFamily& family,
                                ProfileKind which);

std::string pair_id_label(const DoubleMetric& d, long long id);

} // namespace coarse
