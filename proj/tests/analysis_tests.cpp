#include <cmath>

#include "coarse/analysis.hpp"
#include "coarse/errors.hpp"
#include "coarse/zoo.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace coarse;
using testing::check;
using testing::check_eq;

namespace {

SampledFunction constant_levels(const std::vector<int>& sizes, double value) {
    SampledFunction f;
    for (int s : sizes) {
        SampledFunction::Level lev;
        lev.param = s;
        for (int i = 0; i < s; ++i) {
            lev.ids.push_back(i);
            lev.values.push_back(value);
        }
        f.levels.push_back(std::move(lev));
    }
    return f;
}

SampledFunction linear_levels(const std::vector<int>& sizes) {
    SampledFunction f;
    for (int s : sizes) {
        SampledFunction::Level lev;
        lev.param = s;
        for (int i = 0; i < s; ++i) {
            lev.ids.push_back(i);
            lev.values.push_back(i + 1.0);
        }
        f.levels.push_back(std::move(lev));
    }
    return f;
}

void dominates_cases() {
    std::vector<int> sizes = {10, 100, 1000};
    SampledFunction lin = linear_levels(sizes);

    ComparisonVerdict refl = dominates(lin, lin);
    check(refl.dominated(), "a function dominates itself");
    check(refl.reason.find("shift") != std::string::npos, "identity evidence is the zero shift");

    // textbook escape: a(t) = t against b = 1
    ComparisonVerdict esc = dominates(lin, constant_levels(sizes, 1.0));
    check(esc.not_dominated(), "linear growth over a flat function escapes");
    check_eq(esc.witness_C, 1.0, "escape already at the smallest cutoff");
    check(esc.witness.size() == 3, "witness has three levels");
    if (esc.witness.size() == 3) {
        check_eq(esc.witness[0].a, 10.0, "witness value at level 10");
        check_eq(esc.witness[1].a, 100.0, "witness value at level 100");
        check_eq(esc.witness[2].a, 1000.0, "witness value at level 1000");
    }
    bool monotone = true;
    for (size_t i = 0; i + 1 < esc.witness.size(); ++i)
        if (!(esc.witness[i + 1].a > esc.witness[i].a + 1.0)) monotone = false;
    check(monotone, "witness values escape past the slack at every step");

    check(testing::throws_with([&] { dominates(lin, lin, {}); }, "GridEmpty"),
          "empty cutoff grid rejected");
    SampledFunction two = constant_levels({4, 8}, 1.0);
    check(testing::throws_with([&] { dominates(two, two); }, "LevelsTooFew"),
          "two levels are not enough");

    SampledFunction misaligned = lin;
    misaligned.levels[0].ids[0] = 99;
    check(testing::throws_with([&] { dominates(lin, misaligned); }, "share index sets"),
          "misaligned samples rejected");

    // domination composes along chains built from bounded shifts
    SplitMix64 rng(5);
    SampledFunction c0, b0, a0;
    for (int s : sizes) {
        SampledFunction::Level lc, lb, la;
        lc.param = lb.param = la.param = s;
        for (int i = 0; i < s; ++i) {
            double base = rng.unit() * 50.0;
            lc.ids.push_back(i);
            lb.ids.push_back(i);
            la.ids.push_back(i);
            lc.values.push_back(base);
            lb.values.push_back(base + rng.unit() * 3.0);
            la.values.push_back(base + rng.unit() * 6.0);
        }
        c0.levels.push_back(std::move(lc));
        b0.levels.push_back(std::move(lb));
        a0.levels.push_back(std::move(la));
    }
    check(dominates(a0, b0).dominated() && dominates(b0, c0).dominated() &&
              dominates(a0, c0).dominated(),
          "bounded-shift domination is transitive");
}

void coarse_equal_cases() {
    zoo::RayBouquet rb = zoo::ray_bouquet(4, {1, 2, 3, 4, 5, 6, 7, 8});
    ScaleFamily fam = ScaleFamily::prefixes(rb.d, {0.5, 0.75, 1.0});
    check(coarse_equal(rb.d, rb.d, fam).dominated(), "every metric equals itself");

    DoubleMetric u1 = unit_rep(rb.space, 1.0);
    DoubleMetric u6 = unit_rep(rb.space, 6.0);
    ScaleFamily famu = ScaleFamily::prefixes(u1, {0.5, 0.75, 1.0});
    ComparisonVerdict v16 = coarse_equal(u1, u6, famu);
    ComparisonVerdict v61 = coarse_equal(u6, u1, famu);
    check(v16.dominated() && v61.dominated(), "constant shifts stay coarsely equal, both ways");

    // adding a constant to one side never changes equal-evidence
    SquareMatrix shifted = rb.d.cross;
    for (double& v : shifted.a) v += 7.0;
    DoubleMetric dshift = DoubleMetric::validated(rb.space, shifted);
    check(coarse_equal(rb.d, dshift, fam).dominated(), "constant cross shift is invisible");

    // log-sequence metric against its adjoint: genuinely one-sided
    zoo::LogSequence ls = zoo::log_sequence_double(200, 400);
    ScaleFamily lfam = ScaleFamily::from_subsets(
        ls.family.ambient, {20, 65, 200},
        {[] { std::vector<int> v; for (int i = 0; i < 20; ++i) v.push_back(i); return v; }(),
         [] { std::vector<int> v; for (int i = 0; i < 65; ++i) v.push_back(i); return v; }(),
         [] { std::vector<int> v; for (int i = 0; i < 200; ++i) v.push_back(i); return v; }()});
    ComparisonVerdict sa = is_selfadjoint(ls.family.ambient, lfam);
    check(sa.not_dominated(), "log-sequence metric is not selfadjoint");
    check(sa.witness.size() >= 3, "asymmetry witness has three levels");
    bool witness_ok = true;
    for (size_t i = 0; i < sa.witness.size(); ++i) {
        if (sa.witness[i].b > sa.witness_C) witness_ok = false;
        if (i && !(sa.witness[i].a > sa.witness[i - 1].a + 1.0)) witness_ok = false;
    }
    check(witness_ok, "asymmetry witness rows obey the escape shape");

    // the diagonal profile of the same metric escapes over its nearest-cross
    // profile: the log-sequence diagonal grows while even points hug the copy
    SampledFunction diag = profile_samples(ls.family.ambient, lfam, ProfileKind::Diagonal);
    SampledFunction nearest = profile_samples(ls.family.ambient, lfam, ProfileKind::NearestCross);
    ComparisonVerdict prof = dominates(diag, nearest);
    check(prof.not_dominated(), "log-sequence diagonal escapes its nearest-cross profile");
    check(prof.witness.size() >= 3, "profile escape carries a witness");
}

void selfadjoint_idempotent_cases() {
    zoo::ExpSpaces ex = zoo::exp_spaces(20);
    ScaleFamily fam = ScaleFamily::prefixes(ex.e_plus, {0.5, 0.75, 1.0});
    check(is_selfadjoint(ex.e_plus, fam).dominated(), "link metrics are selfadjoint");
    ScaleFamily fami = ScaleFamily::prefixes(ex.involution, {0.5, 0.75, 1.0});
    check(is_selfadjoint(ex.involution, fami).dominated(), "planar involution is selfadjoint");

    check(is_idempotent(ex.e_plus, fam).dominated(), "link metric passes the idempotency criterion");

    zoo::RayBouquet rb = zoo::ray_bouquet(4, {1, 2, 3, 4, 5, 6});
    ScaleFamily famd = ScaleFamily::prefixes(rb.d, {0.5, 0.75, 1.0});
    check(testing::throws_with([&] { is_idempotent(rb.d, famd); }, "NotSelfadjoint"),
          "shift metric rejected by the idempotency precondition");

    // vn factor probed inside the shift interior (rays below the last one)
    auto [e, f] = vn_pair(rb.d);
    auto interior = [&](double t_cap) {
        std::vector<int> lv;
        for (int i = 0; i < rb.space.size(); ++i) {
            const PointLabel& pl = rb.space.points[static_cast<size_t>(i)];
            if (pl.ray != 4 && pl.t <= t_cap) lv.push_back(i);
        }
        return lv;
    };
    ScaleFamily fame = ScaleFamily::from_subsets(e, {1.5, 3.0, 6.0},
                                                 {interior(1.5), interior(3.0), interior(6.0)});
    check(is_idempotent(e, fame).dominated(), "vn factor passes the idempotency criterion");

    DoubleMetric u = unit_rep(ex.d_space, 1.0);
    ScaleFamily famu = ScaleFamily::prefixes(u, {0.5, 0.75, 1.0});
    check(is_idempotent(u, famu).dominated(), "unit is idempotent");
}

void classify_cases() {
    // unit and zero across several zoo spaces; radial chains keep the levels
    // metrically informative on spaces with growing spheres
    std::vector<FiniteMetricSpace> spaces;
    spaces.push_back(zoo::zn_ball(1, zoo::LpNorm::L1, 40));
    spaces.push_back(zoo::zn_ball(2, zoo::LpNorm::LInf, 4));
    spaces.push_back(zoo::f2_ball(3).space);
    spaces.push_back(zoo::exp_spaces(16).d_space);
    for (const FiniteMetricSpace& s : spaces) {
        double max_r = 0.0;
        for (int i = 0; i < s.size(); ++i) max_r = std::max(max_r, s.d(i, 0));
        std::vector<double> radii = {max_r / 4.0, max_r / 2.0, max_r};
        DoubleMetric u = unit_rep(s, 1.0);
        ClassLabel cu = classify(u, ScaleFamily::radial(u, 0, radii));
        check(cu.label == ClassLabel::Label::Unit, "unit classifies as Unit on " + s.name);
        DoubleMetric z = zero_rep(s, 0, 1.0);
        ClassLabel cz = classify(z, ScaleFamily::radial(z, 0, radii));
        check(cz.label == ClassLabel::Label::Zero, "zero classifies as Zero on " + s.name);
    }

    // identity law: composing with a unit preserves the class
    zoo::ExpSpaces ex = zoo::exp_spaces(16);
    DoubleMetric u = unit_rep(ex.d_space, 1.0);
    for (const DoubleMetric* rho : {&u, &ex.e_plus}) {
        DoubleMetric prod = compose(*rho, u);
        ClassLabel before = classify(*rho, ScaleFamily::prefixes(*rho, {0.5, 0.75, 1.0}));
        ClassLabel after = classify(prod, ScaleFamily::prefixes(prod, {0.5, 0.75, 1.0}));
        check(before.label == after.label, "unit composition preserves the class");
    }

    // proper idempotent: the cut vn factor on the bouquet. The top two levels
    // sit past the largest cutoff sublevel (t = 31), so per-cutoff maxima get
    // to saturate inside the chain.
    zoo::RayBouquet rb = zoo::ray_bouquet(6, [] {
        std::vector<double> g;
        for (int t = 1; t <= 40; ++t) g.push_back(t);
        return g;
    }());
    auto [e, f] = vn_pair(rb.d);
    auto interior = [&](double t_cap) {
        std::vector<int> lv;
        for (int i = 0; i < rb.space.size(); ++i) {
            const PointLabel& pl = rb.space.points[static_cast<size_t>(i)];
            if (pl.ray != 6 && pl.t <= t_cap + 1e-9) lv.push_back(i);
        }
        return lv;
    };
    std::vector<std::vector<int>> levels = {interior(10), interior(31), interior(40)};
    ClassLabel cf = classify(f, ScaleFamily::from_subsets(f, {10.0, 31.0, 40.0}, levels));
    check(cf.label == ClassLabel::Label::ProperIdempotent, "cut factor is a proper idempotent");
    ClassLabel ce = classify(e, ScaleFamily::from_subsets(e, {10.0, 31.0, 40.0}, levels));
    check(ce.label == ClassLabel::Label::Unit, "full factor is the unit");
}

void probe_cases() {
    FiniteMetricSpace seg = zoo::zn_ball(1, zoo::LpNorm::L1, 200);
    auto z_index = [](long long v) {
        return v == 0 ? 0 : static_cast<int>(2 * std::llabs(v) - 1 + (v > 0 ? 1 : 0));
    };
    DoubleMetric ambient = unit_rep(seg, 1.0);
    auto ball_level = [&](int radius) {
        std::vector<int> lv;
        for (int v = -radius; v <= radius; ++v) lv.push_back(z_index(v));
        return lv;
    };
    ScaleFamily fam = ScaleFamily::from_subsets(
        ambient, {50, 100, 200}, {ball_level(50), ball_level(100), ball_level(200)});

    std::vector<int> xs, ys;
    for (int k = 1; k <= 200; ++k) {
        xs.push_back(z_index(k));
        ys.push_back(z_index(k));
    }
    ComparisonVerdict same = r_space_probe(fam, xs, ys, 1.0);
    check(same.dominated(), "identical sequences have bounded displacement");

    ys.clear();
    for (int k = 1; k <= 200; ++k) ys.push_back(z_index(-k));
    ComparisonVerdict refl = r_space_probe(fam, xs, ys, 1.0);
    check(refl.not_dominated(), "reflection displacement escapes");
    if (!refl.witness.empty())
        check_eq(refl.witness.back().a, 400.0, "displacement witness reaches 2k at the top level");

    std::vector<int> bad = ys;
    bad[0] = z_index(100);
    check(testing::throws_with([&] { r_space_probe(fam, xs, bad, 1.0); }, "NearConditionViolated"),
          "drifting sequences rejected");

    // half-line samples always come back bounded
    FiniteMetricSpace squares = zoo::squares_space(60);
    DoubleMetric samb = unit_rep(squares, 1.0);
    std::vector<std::vector<int>> slv;
    std::vector<double> spar;
    for (int sz : {20, 40, 60}) {
        std::vector<int> lv;
        for (int i = 0; i < sz; ++i) lv.push_back(i);
        slv.push_back(std::move(lv));
        spar.push_back(sz);
    }
    ScaleFamily sfam = ScaleFamily::from_subsets(samb, spar, slv);
    std::vector<int> sx, sy;
    for (int i = 0; i < 60; ++i) {
        sx.push_back(i);
        sy.push_back(i);
    }
    // a few bounded swaps keep the drift small
    std::swap(sy[3], sy[4]);
    double drift = 0.0;
    for (size_t p = 0; p < sx.size(); ++p)
        for (size_t q = p + 1; q < sx.size(); ++q)
            drift = std::max(drift, std::fabs(squares.d(sx[p], sx[q]) - squares.d(sy[p], sy[q])));
    ComparisonVerdict half = r_space_probe(sfam, sx, sy, drift + 1.0);
    check(half.dominated(), "half-line probe stays bounded");
}

void defect_cases() {
    FiniteMetricSpace seg = zoo::zn_ball(1, zoo::LpNorm::L1, 60);
    auto z_index = [](long long v) {
        return v == 0 ? 0 : static_cast<int>(2 * std::llabs(v) - 1 + (v > 0 ? 1 : 0));
    };
    DoubleMetric ambient = unit_rep(seg, 1.0);
    ScaleFamily fam = ScaleFamily::prefixes(ambient, {0.5, 0.75, 1.0});

    std::vector<int> ident;
    for (int i = 0; i < seg.size(); ++i) ident.push_back(i);
    std::vector<DefectRow> id_rows = almost_isometry_defect(PointMap::total(seg.size(), ident), fam);
    for (const DefectRow& r : id_rows)
        check(r.distortion == 0.0 && r.codensity == 0.0 && r.displacement == 0.0,
              "identity has zero defect");

    std::vector<int> shift(static_cast<size_t>(seg.size()), -1);
    for (int v = -60; v <= 55; ++v) shift[static_cast<size_t>(z_index(v))] = z_index(v + 5);
    std::vector<DefectRow> tr = almost_isometry_defect(PointMap{shift}, fam);
    check(tr.back().distortion == 0.0, "translation has zero distortion");
    check(tr.back().displacement == 5.0, "translation displacement is 5");

    // piecewise multiplication on the free-group ball
    zoo::F2Ball ball = zoo::f2_ball(5);
    DoubleMetric amb = unit_rep(ball.space, 1.0);
    auto wlen = [&](int i) {
        return static_cast<int>(ball.space.points[static_cast<size_t>(i)].word.size());
    };
    std::vector<std::vector<int>> levels;
    for (int rad : {3, 4, 5}) {
        std::vector<int> lv;
        for (int i = 0; i < ball.space.size(); ++i)
            if (wlen(i) <= rad) lv.push_back(i);
        levels.push_back(std::move(lv));
    }
    ScaleFamily bfam = ScaleFamily::from_subsets(amb, {3, 4, 5}, levels);
    std::vector<DefectRow> fr = almost_isometry_defect(ball.data.f, bfam);
    check(fr.back().distortion == 2.0, "piecewise map distortion is exactly 2");
    // displacement at b^k is 2k+2; the domain reaches k = 3
    int idx_b3 = -1;
    for (int i = 0; i < ball.space.size(); ++i)
        if (ball.space.points[static_cast<size_t>(i)].word == "bbb") idx_b3 = i;
    check(ball.data.f.in_domain(idx_b3), "b^3 lies in the map domain");
    check_eq(ball.space.d(idx_b3, ball.data.f(idx_b3)), 8.0, "displacement at b^3 is 2k+2");
    check(fr.back().displacement >= 8.0, "defect table sees the growing displacement");
}

void stabilization_cases() {
    std::vector<LevelMax> flat = {{1, 0, 5.0}, {2, 1, 5.2}, {3, 2, 5.4}};
    check(stabilization_verdict(flat).dominated(), "flat maxima stabilize");
    std::vector<LevelMax> grow = {{1, 0, 5.0}, {2, 1, 8.0}, {3, 2, 12.0}};
    ComparisonVerdict g = stabilization_verdict(grow);
    check(g.not_dominated() && g.witness.size() == 3, "escaping maxima carry a witness");
    std::vector<LevelMax> mixed = {{1, 0, 5.0}, {2, 1, 8.0}, {3, 2, 8.5}};
    check(stabilization_verdict(mixed).dominated(), "late stabilization counts");
}

} // namespace

int main() {
    dominates_cases();
    coarse_equal_cases();
    selfadjoint_idempotent_cases();
    classify_cases();
    probe_cases();
    defect_cases();
    stabilization_cases();
    return testing::summary("analysis_tests");
}
