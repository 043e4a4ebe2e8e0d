#include <cmath>

#include "coarse/double_metric.hpp"
#include "coarse/errors.hpp"
#include "coarse/json_io.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/tropical.hpp"
#include "coarse/zoo.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace coarse;
using testing::check;
using testing::check_eq;
using testing::check_near;

namespace {

FiniteMetricSpace line_space(std::vector<double> xs) {
    const int n = static_cast<int>(xs.size());
    std::vector<PointLabel> labels;
    for (int i = 0; i < n; ++i) labels.push_back(PointLabel::anon(i));
    SquareMatrix d(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            d.at(i, j) = std::fabs(xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(j)]);
    return FiniteMetricSpace::validated("line", std::move(labels), std::move(d));
}

void validate_space_cases() {
    // three collinear reals
    check(!validate_space(line_space({0, 1, 2}).points, line_space({0, 1, 2}).dist).has_value(),
          "collinear points validate");

    // broken triangle: d(1,2)=5 against two short sides
    std::vector<PointLabel> labels = {PointLabel::anon(0), PointLabel::anon(1), PointLabel::anon(2)};
    SquareMatrix bad(3);
    bad.at(0, 1) = bad.at(1, 0) = 5;
    bad.at(0, 2) = bad.at(2, 0) = 1;
    bad.at(1, 2) = bad.at(2, 1) = 1;
    auto issue = validate_space(labels, bad);
    check(issue.has_value() && issue->code == IssueCode::TriangleViolation, "triangle violation found");
    if (issue) {
        check_near(issue->slack, 3.0, 1e-15, "triangle slack is 3");
        check(issue->indices == std::array<int, 3>{0, 2, 1}, "first violating triple in scan order");
    }

    SquareMatrix asym(2);
    asym.at(0, 1) = 1;
    asym.at(1, 0) = 2;
    auto is2 = validate_space({PointLabel::anon(0), PointLabel::anon(1)}, asym);
    check(is2 && is2->code == IssueCode::NotSymmetric, "asymmetry detected");

    SquareMatrix zero_off(2);
    auto is3 = validate_space({PointLabel::anon(0), PointLabel::anon(1)}, zero_off);
    check(is3 && is3->code == IssueCode::ZeroOffDiagonal, "zero off-diagonal detected");

    // word-metric ball radius 2: 17 points, brute-force all triples
    zoo::F2Ball ball = zoo::f2_ball(2);
    check(ball.space.size() == 17, "radius-2 ball has 17 points");
    check(oracle::triangle_ok(ball.space.dist, 0.0), "word metric passes the cubic oracle");
    check(!validate_space(ball.space.points, ball.space.dist).has_value(),
          "word metric passes the production validator");
}

void validate_double_cases() {
    // far base points with tiny cross: family (3) must trip
    FiniteMetricSpace far = line_space({0, 10});
    SquareMatrix tiny(2, 0.1);
    auto issue = validate_double(far, tiny);
    check(issue && issue->code == IssueCode::MixedTriangleViolation, "tiny cross rejected");
    if (issue) check(issue->kind == 3, "violated family is base <= cross + cross");

    // unit representative is always valid
    FiniteMetricSpace line = line_space({0, 1, 2, 3, 4});
    DoubleMetric unit = unit_rep(line, 1.0);
    check(!validate_double(unit.base, unit.cross).has_value(), "unit representative valid");
    check_eq(unit.floor_value, 1.0, "unit floor is the gap");

    // witness-routed metric on a lattice segment, checked by the brute oracle
    FiniteMetricSpace seg = zoo::zn_ball(1, zoo::LpNorm::L1, 50);
    auto index_of = [](long long v) {
        return v == 0 ? 0 : static_cast<int>(2 * std::llabs(v) - 1 + (v > 0 ? 1 : 0));
    };
    zoo::NonRWitness w;
    for (int k = 1; k <= 12; ++k) {
        w.xs.push_back(index_of(k));
        w.ys.push_back(index_of(-k));
    }
    w.C = 1.0;
    auto [d1, d2] = zoo::noncommuting_pair(seg, w);
    check(oracle::mixed_ok(d1.base, d1.cross, 0.0), "routed d1 passes the mixed oracle");
    check(oracle::mixed_ok(d2.base, d2.cross, 0.0), "routed d2 passes the mixed oracle");

    SquareMatrix nonpos(2, 1.0);
    nonpos.at(0, 0) = 0.0;
    auto is4 = validate_double(line_space({0, 1}), nonpos);
    check(is4 && is4->code == IssueCode::NonPositiveCross, "nonpositive cross rejected");
}

void restrict_cases() {
    FiniteMetricSpace line = line_space({0, 1, 2, 3, 4, 5});
    DoubleMetric unit = unit_rep(line, 1.0);

    DoubleMetric all = restrict_double(unit, {0, 1, 2, 3, 4, 5});
    check(all.cross == unit.cross && all.base.dist == unit.base.dist, "restrict to all is identity");

    DoubleMetric one = restrict_double(unit, {2});
    check(one.size() == 1 && one.cross.at(0, 0) == 1.0, "unit restricted to a point is [gap]");

    DoubleMetric ab = restrict_double(restrict_double(unit, {0, 1, 2, 3}), {1, 2});
    DoubleMetric direct = restrict_double(unit, {1, 2});
    check(ab.cross == direct.cross && ab.base.dist == direct.base.dist,
          "nested restriction equals restriction of the intersection");

    check(testing::throws_with([&] { restrict_double(unit, {}); }, "EmptySubset"),
          "empty restriction rejected");

    // graph-metric minima shrink under regeneration at a smaller radius
    zoo::F2Ball b3 = zoo::f2_ball(3);
    zoo::F2Ball b2 = zoo::f2_ball(2);
    DoubleMetric g3 = graph_metric(b3.space, b3.data.f, 3.0);
    DoubleMetric g2 = graph_metric(b2.space, b2.data.f, 3.0);
    std::vector<int> keep;
    for (int i = 0; i < b3.space.size(); ++i)
        if (b3.space.points[static_cast<size_t>(i)].word.size() <= 2) keep.push_back(i);
    DoubleMetric g3r = restrict_double(g3, keep);
    check(g3r.base.points == b2.space.points, "restriction keeps the smaller ball's points");
    bool some_differ = false;
    for (int i = 0; i < g2.size(); ++i)
        for (int j = 0; j < g2.size(); ++j)
            if (g3r.cross.at(i, j) != g2.cross.at(i, j)) some_differ = true;
    check(some_differ, "regenerated smaller ball differs from the restriction");
    for (int i = 0; i < g2.size(); ++i)
        for (int j = 0; j < g2.size(); ++j)
            if (g3r.cross.at(i, j) > g2.cross.at(i, j) + 1e-15) some_differ = false;
    check(some_differ, "restriction only lowers the routed minima");
}

void diag_profile_cases() {
    FiniteMetricSpace line = line_space({0, 1, 2, 3});
    DoubleMetric unit = unit_rep(line, 1.0);
    DiagProfile p = diag_profile(unit);
    for (int i = 0; i < 4; ++i) {
        check_eq(p.a[static_cast<size_t>(i)], 1.0, "unit a = gap");
        check_eq(p.b[static_cast<size_t>(i)], 1.0, "unit b = gap");
        check_eq(p.c[static_cast<size_t>(i)], 1.0, "unit c = gap");
    }

    // bouquet: every non-origin point off the last ray sees the next ray at 1
    zoo::RayBouquet rb = zoo::ray_bouquet(4, {1, 2, 3, 4, 5});
    DiagProfile rp = diag_profile(rb.d);
    for (int i = 0; i < rb.space.size(); ++i) {
        const PointLabel& pl = rb.space.points[static_cast<size_t>(i)];
        if (pl.ray == 0 || pl.ray == 4) continue;
        check_eq(rp.a[static_cast<size_t>(i)], 1.0, "bouquet a = 1 at " + pl.str());
    }

    // log sequence: odd index 3 sits at log 3, even index 4 within log 2
    zoo::LogSequence ls = zoo::log_sequence_double(12, 24);
    DiagProfile lp = diag_profile(ls.family.ambient);
    check_near(lp.a[2], std::log(3.0), 1e-12, "a(x3) = log 3");
    check(lp.a[3] <= std::log(2.0) + 1e-12, "a(x4) <= log 2");

    // profile laws on a zoo double: a <= b and a is 1-Lipschitz
    zoo::ExpSpaces ex = zoo::exp_spaces(12);
    DiagProfile ep = diag_profile(ex.involution);
    const int n = ex.involution.size();
    bool a_le_b = true, lipschitz = true;
    for (int i = 0; i < n; ++i) {
        if (ep.a[static_cast<size_t>(i)] > ep.b[static_cast<size_t>(i)] + 1e-15) a_le_b = false;
        for (int j = 0; j < n; ++j)
            if (std::fabs(ep.a[static_cast<size_t>(i)] - ep.a[static_cast<size_t>(j)]) >
                ex.involution.base.d(i, j) + 1e-12)
                lipschitz = false;
    }
    check(a_le_b, "a <= b pointwise");
    check(lipschitz, "a is 1-Lipschitz");
}

void family_cases() {
    zoo::LogSequence ls = zoo::log_sequence_double(16, 32);
    const ScaleFamily& fam = ls.family;
    check(fam.level_count() == 3, "generator family has three levels");
    for (int l = 0; l + 1 < fam.level_count(); ++l) {
        const auto& small = fam.levels[static_cast<size_t>(l)];
        const auto& big = fam.levels[static_cast<size_t>(l + 1)];
        check(std::includes(big.begin(), big.end(), small.begin(), small.end()),
              "levels nested");
    }
    DoubleMetric snap = fam.snapshot(0);
    bool coherent = true;
    for (int i = 0; i < snap.size(); ++i)
        for (int j = 0; j < snap.size(); ++j) {
            int gi = fam.levels[0][static_cast<size_t>(i)];
            int gj = fam.levels[0][static_cast<size_t>(j)];
            if (snap.cross.at(i, j) != fam.ambient.cross.at(gi, gj)) coherent = false;
            if (snap.base.dist.at(i, j) != fam.ambient.base.dist.at(gi, gj)) coherent = false;
        }
    check(coherent, "snapshot values agree with the ambient exactly");

    check(testing::throws_with(
              [&] {
                  ScaleFamily::from_subsets(fam.ambient, {1.0, 2.0}, {{0, 1, 2}, {0, 1}});
              },
              "nested"),
          "non-nested levels rejected");
}

void json_cases() {
    zoo::RayBouquet rb = zoo::ray_bouquet(3, {1, 2, 3});
    std::string doc = double_to_json(rb.d, {"step one", "step two"});
    DoubleMetric back = double_from_json(doc);
    check(back.cross == rb.d.cross && back.base.dist == rb.d.base.dist &&
              back.base.points == rb.d.base.points,
          "double JSON round-trips bitwise");

    zoo::F2Ball ball = zoo::f2_ball(2);
    FiniteMetricSpace s2 = space_from_json(space_to_json(ball.space));
    check(s2.points == ball.space.points && s2.dist == ball.space.dist,
          "space JSON round-trips bitwise");

    check(json_has_cross(doc), "cross member detected");
    check(!json_has_cross(space_to_json(ball.space)), "space document has no cross");

    // label kinds survive
    zoo::ExpSpaces ex = zoo::exp_spaces(6);
    FiniteMetricSpace s3 = space_from_json(space_to_json(ex.d_space));
    check(s3.points == ex.d_space.points, "planar labels survive");

    check(testing::throws_with([&] { space_from_json("{not json"); }, "ParseError"),
          "malformed JSON rejected");
    check(testing::throws_with([&] { double_from_json(space_to_json(ball.space)); }, "cross"),
          "double parse requires a cross member");

    DiagProfile p = diag_profile(rb.d);
    std::string csv = diag_profile_csv(rb.space, p);
    check(csv.rfind("point,a,b,c\n", 0) == 0, "profile CSV header");
    size_t rows = static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n'));
    check(rows == static_cast<size_t>(rb.space.size()) + 1, "profile CSV row count");
}

void round_trip_validators() {
    // every constructor output passes its own validator
    zoo::RayBouquet rb = zoo::ray_bouquet(4, {0.5, 1, 1.5, 2});
    for (const DoubleMetric* d : {&rb.d, &rb.e, &rb.f})
        check(!validate_double(d->base, d->cross).has_value(), "bouquet metric revalidates");
    zoo::ExpSpaces ex = zoo::exp_spaces(10);
    for (const DoubleMetric* d : {&ex.involution, &ex.e_plus, &ex.f_minus})
        check(!validate_double(d->base, d->cross).has_value(), "exp metric revalidates");
}

} // namespace

int main() {
    validate_space_cases();
    validate_double_cases();
    restrict_cases();
    diag_profile_cases();
    family_cases();
    json_cases();
    round_trip_validators();
    return testing::summary("metric_core_tests");
}
