#include "coarse/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <json.hpp>

#include "coarse/analysis.hpp"
#include "coarse/errors.hpp"
#include "coarse/json_io.hpp"
#include "coarse/util.hpp"
#include "coarse/zoo.hpp"

namespace coarse {

namespace {

constexpr double kTightTol = 1e-12;

long long get_int(const ParamMap& params, const ParamMap& defaults, const std::string& key) {
    auto it = params.find(key);
    std::string raw = it != params.end() ? it->second : defaults.at(key);
    try {
        size_t pos = 0;
        long long v = std::stoll(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        raise(IssueCode::ParamOutOfRange, "parameter " + key + " expects an integer, got " + raw);
    }
}

void reject_unknown(const ParamMap& params, const ParamMap& defaults) {
    for (const auto& [k, v] : params)
        if (!defaults.count(k)) raise(IssueCode::ParamOutOfRange, "unknown parameter: " + k);
}

std::vector<std::pair<std::string, std::string>> used_params(const ParamMap& params,
                                                             const ParamMap& defaults) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, dv] : defaults) {
        auto it = params.find(k);
        out.emplace_back(k, it != params.end() ? it->second : dv);
    }
    return out;
}

CheckRow row(std::string claim, std::string anchor, std::string measured, std::string expected,
             bool pass) {
    return CheckRow{std::move(claim), std::move(anchor), std::move(measured), std::move(expected),
                    pass};
}

CheckRow max_dev_row(std::string claim, std::string anchor, double max_dev, double tol) {
    return row(std::move(claim), std::move(anchor), "max deviation " + format_double(max_dev),
               "<= " + format_double(tol), max_dev <= tol);
}

// ---------------------------------------------------------------------------
// rays-infinite-unit
// ---------------------------------------------------------------------------

ExperimentReport exp_rays(const ParamMap& params) {
    const ParamMap defaults = {{"rays", "20"}, {"t_max", "100"}};
    reject_unknown(params, defaults);
    ExperimentReport rep;
    rep.name = "rays-infinite-unit";
    rep.parameters = used_params(params, defaults);

    int rays = static_cast<int>(get_int(params, defaults, "rays"));
    int t_max = static_cast<int>(get_int(params, defaults, "t_max"));
    if (rays < 4 || rays > 64) raise(IssueCode::ParamOutOfRange, "rays must be in [4, 64]");
    // The halfway level must reach past the largest cutoff sublevel (t = 30)
    // or the per-cutoff maxima cannot saturate inside the chain.
    if (t_max < 60 || t_max > 512) raise(IssueCode::ParamOutOfRange, "t_max must be in [60, 512]");

    std::vector<double> grid;
    for (int t = 0; t <= t_max; ++t) grid.push_back(t);
    zoo::RayBouquet rb = zoo::ray_bouquet(rays, grid);
    auto [e_c, f_c] = vn_pair(rb.d);

    // The shift has no successor on the last ray, so diagnostics stay on rays
    // 1..rays-1 (plus the origin), where ambient minima equal the full values.
    auto ray_of = [&](int i) { return rb.space.points[static_cast<size_t>(i)].ray; };
    auto t_of = [&](int i) { return rb.space.points[static_cast<size_t>(i)].t; };
    const int n = rb.space.size();

    double dev_e = 0.0;
    for (int i = 0; i < n; ++i) {
        if (ray_of(i) == rays) continue;
        dev_e = std::max(dev_e, std::fabs(e_c.cross.at(i, i) - 2.0));
    }
    rep.checks.push_back(max_dev_row("s*s diagonal is 2 off the last ray", "vn-diagonal", dev_e,
                                     kTightTol));

    double dev_f = 0.0;
    for (int i = 0; i < n; ++i) {
        if (ray_of(i) != 1 && ray_of(i) != 0) continue;
        dev_f = std::max(dev_f, std::fabs(f_c.cross.at(i, i) - 2.0 * (t_of(i) + 1.0)));
    }
    rep.checks.push_back(max_dev_row("ss* diagonal on ray 1 is 2(t+1)", "vn-diagonal", dev_f,
                                     kTightTol));

    auto interior_levels = [&](double frac) {
        std::vector<int> lv;
        for (int i = 0; i < n; ++i)
            if (ray_of(i) != rays && t_of(i) <= frac * t_max + 1e-9) lv.push_back(i);
        return lv;
    };
    std::vector<std::vector<int>> levels = {interior_levels(0.25), interior_levels(0.5),
                                            interior_levels(1.0)};
    std::vector<double> lv_params = {0.25 * t_max, 0.5 * t_max, 1.0 * t_max};

    ClassLabel ce = classify(e_c, ScaleFamily::from_subsets(e_c, lv_params, levels));
    rep.checks.push_back(row("s*s classifies as the unit", "classify", ce.name(), "Unit",
                             ce.label == ClassLabel::Label::Unit));
    for (auto& ev : ce.evidence) rep.verdicts.emplace_back("s*s:" + ev.first, ev.second);

    ClassLabel cf = classify(f_c, ScaleFamily::from_subsets(f_c, lv_params, levels));
    rep.checks.push_back(row("ss* classifies as a proper idempotent", "classify", cf.name(),
                             "ProperIdempotent", cf.label == ClassLabel::Label::ProperIdempotent));
    for (auto& ev : cf.evidence) rep.verdicts.emplace_back("ss*:" + ev.first, ev.second);
    return rep;
}

// ---------------------------------------------------------------------------
// amenable-nonfinite
// ---------------------------------------------------------------------------

ExperimentReport exp_amenable(const ParamMap& params) {
    const ParamMap defaults = {{"n", "100"}, {"ambient", "200"}};
    reject_unknown(params, defaults);
    ExperimentReport rep;
    rep.name = "amenable-nonfinite";
    rep.parameters = used_params(params, defaults);

    int n = static_cast<int>(get_int(params, defaults, "n"));
    int ambient = static_cast<int>(get_int(params, defaults, "ambient"));
    if (n < 12 || ambient < 2 * n)
        raise(IssueCode::ParamOutOfRange, "need n >= 12 and ambient >= 2n");

    zoo::LogSequence ls = zoo::log_sequence_double(ambient, 2 * ambient);
    const DoubleMetric& d = ls.family.ambient;
    DiagProfile prof = diag_profile(d);

    double dev_even = 0.0;
    for (int k = 1; 2 * k <= n; ++k)
        dev_even = std::max(dev_even, prof.a[static_cast<size_t>(2 * k - 1)] - std::log(2.0));
    rep.checks.push_back(max_dev_row("even points stay within log 2 of the far copy",
                                     "nearest-cross", dev_even, kTightTol));

    double dev_odd = 0.0;
    for (int k = 2; 2 * k <= n; ++k)
        dev_odd = std::max(dev_odd, std::fabs(prof.a[static_cast<size_t>(2 * k - 2)] -
                                              std::log(k + 1.0)));
    rep.checks.push_back(max_dev_row("odd point n=2k-1 sits at exactly log(k+1)", "nearest-cross",
                                     dev_odd, kTightTol));

    // Neighborhood growth: N_r(F_m) \ F_m is empty once log(m+1) > r.
    const FiniteMetricSpace& X = d.base;
    long long excess_total = 0;
    for (double r : {std::log(2.0), std::log(5.0), std::log(17.0)}) {
        for (int m = 1; m <= n; ++m) {
            if (!(std::log(m + 1.0) > r)) continue;
            for (int j = m; j < ambient; ++j) {
                double nearest = std::numeric_limits<double>::infinity();
                for (int i = 0; i < m; ++i) nearest = std::min(nearest, X.d(j, i));
                if (nearest <= r) ++excess_total;
            }
        }
    }
    rep.checks.push_back(row("prefix sets absorb their r-neighborhoods", "folner",
                             std::to_string(excess_total) + " stray points", "0 stray points",
                             excess_total == 0));

    // Bounded geometry: balls are prefixes. B_{log m}(x_i) = {x_1..x_{m-1}}
    // for i <= m-1 and {x_i} alone otherwise.
    bool balls_ok = true;
    for (int m : {5, 17}) {
        double r = std::log(static_cast<double>(m));
        for (int i = 0; i < n && balls_ok; ++i) {
            for (int j = 0; j < ambient; ++j) {
                bool inside = X.d(i, j) <= r + kTightTol;
                bool expected = (i == j) || (i < m - 1 && j < m - 1);
                if (inside != expected) {
                    balls_ok = false;
                    break;
                }
            }
        }
    }
    rep.checks.push_back(row("metric balls are index prefixes of bounded size", "derived-oracle",
                             balls_ok ? "prefix structure" : "unexpected ball", "prefix structure",
                             balls_ok));

    // Closed form of the base distance: log(max(n,m)+1), not log(max(n,m)).
    double dev_form = 0.0, dev_wrong_form = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= ambient; ++i)
        for (int j = i + 1; j <= ambient; ++j) {
            dev_form = std::max(dev_form, std::fabs(X.d(i - 1, j - 1) - std::log(j + 1.0)));
            dev_wrong_form = std::min(dev_wrong_form,
                                      std::fabs(X.d(i - 1, j - 1) - std::log(static_cast<double>(j))));
        }
    rep.checks.push_back(max_dev_row("base distance closed form is log(max+1)", "derived-oracle",
                                     dev_form, kTightTol));
    rep.checks.push_back(row("closed form log(max) is off by a positive margin everywhere",
                             "derived-oracle", "min deviation " + format_double(dev_wrong_form),
                             "> 0", dev_wrong_form > 1e-6));

    // Classification of the two von Neumann factors on interior levels.
    auto [e_c, f_c] = vn_pair(d);
    std::vector<std::vector<int>> levels;
    std::vector<double> lv_params;
    for (int sz : {n / 4, n / 2, n}) {
        std::vector<int> lv(static_cast<size_t>(sz));
        for (int i = 0; i < sz; ++i) lv[static_cast<size_t>(i)] = i;
        levels.push_back(std::move(lv));
        lv_params.push_back(sz);
    }
    ClassLabel ce = classify(e_c, ScaleFamily::from_subsets(e_c, lv_params, levels));
    rep.checks.push_back(row("s*s classifies as a proper idempotent", "classify", ce.name(),
                             "ProperIdempotent", ce.label == ClassLabel::Label::ProperIdempotent));
    ClassLabel cf = classify(f_c, ScaleFamily::from_subsets(f_c, lv_params, levels));
    rep.checks.push_back(row("ss* classifies as the unit", "classify", cf.name(), "Unit",
                             cf.label == ClassLabel::Label::Unit));
    for (auto& ev : ce.evidence) rep.verdicts.emplace_back("s*s:" + ev.first, ev.second);
    for (auto& ev : cf.evidence) rep.verdicts.emplace_back("ss*:" + ev.first, ev.second);
    return rep;
}

// ---------------------------------------------------------------------------
// free-group-property-I
// ---------------------------------------------------------------------------

ExperimentReport exp_free_group(const ParamMap& params) {
    const ParamMap defaults = {{"r", "5"}, {"c", "3"}};
    reject_unknown(params, defaults);
    ExperimentReport rep;
    rep.name = "free-group-property-I";
    rep.parameters = used_params(params, defaults);

    int r = static_cast<int>(get_int(params, defaults, "r"));
    int C = static_cast<int>(get_int(params, defaults, "c"));
    if (r < 4 || r > 6) raise(IssueCode::ParamOutOfRange, "r must be in [4, 6]");
    if (C <= 2) raise(IssueCode::ParamOutOfRange, "c must exceed the distortion 2");

    zoo::F2Ball ball = zoo::f2_ball(r);
    const FiniteMetricSpace& X = ball.space;
    const int inner = r - 3;
    auto wlen = [&](int i) { return static_cast<int>(X.points[static_cast<size_t>(i)].word.size()); };

    // Distortion identity on the inner ball: moving a Y-word and a Z-word by
    // their respective multipliers stretches their distance by exactly 2.
    double dev_shift = 0.0;
    for (int y : ball.data.Y)
        for (int z : ball.data.Z) {
            if (wlen(y) > inner || wlen(z) > inner) continue;
            double got = X.d(ball.data.f(y), ball.data.f(z)) - X.d(y, z);
            dev_shift = std::max(dev_shift, std::fabs(got - 2.0));
        }
    rep.checks.push_back(max_dev_row("distance gain under the piecewise map is exactly 2",
                                     "map-distortion", dev_shift, 0.0));

    DoubleMetric d = graph_metric(X, ball.data.f, C);
    auto [e_c, f_c] = vn_pair(d);

    double dev_ss = 0.0;
    for (int i = 0; i < X.size(); ++i) {
        if (wlen(i) > inner) continue;
        dev_ss = std::max(dev_ss, std::fabs(e_c.cross.at(i, i) - 2.0 * C));
    }
    rep.checks.push_back(max_dev_row("s*s diagonal is 2C on the inner ball", "vn-diagonal", dev_ss,
                                     0.0));

    for (int k = 1; k <= 2; ++k) {
        std::string bk(static_cast<size_t>(k), 'b');
        int idx = -1;
        for (int i = 0; i < X.size(); ++i)
            if (X.points[static_cast<size_t>(i)].word == bk) idx = i;
        double got = f_c.cross.at(idx, idx);
        double want = 2.0 * k + 2.0 * C + 4.0;
        rep.checks.push_back(row("ss* diagonal at b^" + std::to_string(k), "vn-diagonal",
                                 format_double(got), format_double(want), got == want));
    }

    // Defect table of the map itself: distortion 2, displacement 2k+2 at b^k.
    std::vector<std::vector<int>> levels;
    std::vector<double> lv_params;
    for (int rad = r - 4; rad <= r - 2; ++rad) {
        std::vector<int> lv;
        for (int i = 0; i < X.size(); ++i)
            if (wlen(i) <= rad) lv.push_back(i);
        levels.push_back(std::move(lv));
        lv_params.push_back(rad);
    }
    ScaleFamily fam = ScaleFamily::from_subsets(d, lv_params, levels);
    std::vector<DefectRow> defects = almost_isometry_defect(ball.data.f, fam);
    rep.checks.push_back(row("map distortion over the domain", "map-distortion",
                             format_double(defects.back().distortion), "2",
                             defects.back().distortion == 2.0));

    ClassLabel ce = classify(e_c, ScaleFamily::from_subsets(e_c, lv_params, levels));
    rep.checks.push_back(row("s*s classifies as the unit", "classify", ce.name(), "Unit",
                             ce.label == ClassLabel::Label::Unit));
    ClassLabel cf = classify(f_c, ScaleFamily::from_subsets(f_c, lv_params, levels));
    rep.checks.push_back(row("ss* classifies as a proper idempotent", "classify", cf.name(),
                             "ProperIdempotent", cf.label == ClassLabel::Label::ProperIdempotent));
    for (auto& ev : cf.evidence) rep.verdicts.emplace_back("ss*:" + ev.first, ev.second);
    return rep;
}

// ---------------------------------------------------------------------------
// qi-noninvariance
// ---------------------------------------------------------------------------

ExperimentReport exp_qi(const ParamMap& params) {
    const ParamMap defaults = {{"n_ratio", "40"}, {"n_comp", "25"}};
    reject_unknown(params, defaults);
    ExperimentReport rep;
    rep.name = "qi-noninvariance";
    rep.parameters = used_params(params, defaults);

    int n_ratio = static_cast<int>(get_int(params, defaults, "n_ratio"));
    int n_comp = static_cast<int>(get_int(params, defaults, "n_comp"));
    if (n_ratio < 8 || n_ratio > 40 || n_comp < 13 || n_comp > 40)
        raise(IssueCode::ParamOutOfRange, "need 8 <= n_ratio <= 40 and 13 <= n_comp <= 40");
    // The top index must carry a positive value whose negative sits below it,
    // otherwise the squared involution picks up a truncation artifact.
    if (n_comp % 4 != 1)
        raise(IssueCode::ParamOutOfRange, "n_comp must be 1 mod 4 so the flip closes up");

    zoo::ExpSpaces big = zoo::exp_spaces(n_ratio);
    double min_ratio = std::numeric_limits<double>::infinity();
    double max_ratio = 0.0;
    int arg_n = 0, arg_m = 0;
    for (int i = 0; i < n_ratio; ++i)
        for (int j = i + 1; j < n_ratio; ++j) {
            double ratio = big.d_space.d(i, j) / big.b_space.d(i, j);
            if (ratio < min_ratio) {
                min_ratio = ratio;
                arg_n = i + 1;
                arg_m = j + 1;
            }
            max_ratio = std::max(max_ratio, ratio);
        }
    rep.checks.push_back(row("smallest distance ratio across the pair of metrics",
                             "derived-oracle",
                             format_double(min_ratio) + " at (" + std::to_string(arg_n) + "," +
                                 std::to_string(arg_m) + ")",
                             format_double(3.0 / 7.0) + " at (2,5)",
                             min_ratio == 3.0 / 7.0 && arg_n == 2 && arg_m == 5));
    rep.checks.push_back(row("largest distance ratio stays within the bound", "ratio-bound",
                             format_double(max_ratio), "<= 12", max_ratio <= 12.0));

    zoo::ExpSpaces ex = zoo::exp_spaces(n_comp);
    bool symmetric = true;
    for (int i = 0; i < n_comp && symmetric; ++i)
        for (int j = 0; j < n_comp; ++j)
            if (ex.involution.cross.at(i, j) != ex.involution.cross.at(j, i)) {
                symmetric = false;
                break;
            }
    rep.checks.push_back(row("involution cross matrix is symmetric to the bit", "selfadjoint",
                             symmetric ? "symmetric" : "asymmetric", "symmetric", symmetric));

    DoubleMetric ss = compose(ex.involution, ex.involution);
    double max_diag = 0.0;
    for (int i = 0; i < n_comp; ++i) max_diag = std::max(max_diag, ss.cross.at(i, i));
    double bound = 2.0 * std::sqrt(5.0) + 1e-9;
    rep.checks.push_back(row("squared involution diagonal stays within 2*sqrt(5)", "vn-diagonal",
                             format_double(max_diag), "<= " + format_double(bound),
                             max_diag <= bound));

    std::vector<std::vector<int>> levels;
    std::vector<double> lv_params;
    for (int sz : {n_comp / 2, (3 * n_comp) / 4, n_comp}) {
        std::vector<int> lv(static_cast<size_t>(sz));
        for (int i = 0; i < sz; ++i) lv[static_cast<size_t>(i)] = i;
        levels.push_back(std::move(lv));
        lv_params.push_back(sz);
    }

    DoubleMetric es = compose(ex.e_plus, ex.involution);
    DoubleMetric se = compose(ex.involution, ex.e_plus);

    ClassLabel ces = classify(es, ScaleFamily::from_subsets(es, lv_params, levels));
    rep.checks.push_back(row("product e s classifies as the zero class", "classify", ces.name(),
                             "Zero", ces.label == ClassLabel::Label::Zero));
    for (auto& ev : ces.evidence) rep.verdicts.emplace_back("es:" + ev.first, ev.second);

    ComparisonVerdict sef = coarse_equal(se, ex.f_minus,
                                         ScaleFamily::from_subsets(se, lv_params, levels));
    rep.checks.push_back(row("product s e is coarsely the negative-side idempotent", "classify",
                             ComparisonVerdict::kind_name(sef.kind), "dominated",
                             sef.dominated()));
    rep.verdicts.emplace_back("se-vs-f", sef);

    ComparisonVerdict noncomm = coarse_equal(es, se,
                                             ScaleFamily::from_subsets(es, lv_params, levels));
    rep.checks.push_back(row("the two products are coarsely distinct", "noncommuting",
                             ComparisonVerdict::kind_name(noncomm.kind), "not-dominated",
                             noncomm.not_dominated()));
    rep.verdicts.emplace_back("es-vs-se", noncomm);

    ClassLabel css = classify(ss, ScaleFamily::from_subsets(ss, lv_params, levels));
    rep.checks.push_back(row("squared involution classifies as the unit", "classify", css.name(),
                             "Unit", css.label == ClassLabel::Label::Unit));

    // What the products actually are: one-sided restrictions of the flip,
    // adjoint to each other, squaring to zero, and implementing a von Neumann
    // equivalence between the two link idempotents.
    rep.checks.push_back(row("one-sided products are adjoint to the bit", "noncommuting",
                             adjoint(se).cross == es.cross ? "transpose" : "mismatch", "transpose",
                             adjoint(se).cross == es.cross));

    DoubleMetric sese = compose(se, se);
    ClassLabel c2 = classify(sese, ScaleFamily::from_subsets(sese, lv_params, levels));
    rep.checks.push_back(row("squared one-sided product classifies as the zero class", "classify",
                             c2.name(), "Zero", c2.label == ClassLabel::Label::Zero));

    auto [src, rng] = vn_pair(se);
    ComparisonVerdict v_src = coarse_equal(src, ex.e_plus,
                                           ScaleFamily::from_subsets(src, lv_params, levels));
    ComparisonVerdict v_rng = coarse_equal(rng, ex.f_minus,
                                           ScaleFamily::from_subsets(rng, lv_params, levels));
    rep.checks.push_back(row("vn pair of s e connects the two link idempotents", "vn-diagonal",
                             std::string(ComparisonVerdict::kind_name(v_src.kind)) + "/" +
                                 ComparisonVerdict::kind_name(v_rng.kind),
                             "dominated/dominated", v_src.dominated() && v_rng.dominated()));
    return rep;
}

// ---------------------------------------------------------------------------
// coarse-noninvariance
// ---------------------------------------------------------------------------

ExperimentReport exp_coarse(const ParamMap& params) {
    const ParamMap defaults = {{"n", "50"}};
    reject_unknown(params, defaults);
    ExperimentReport rep;
    rep.name = "coarse-noninvariance";
    rep.parameters = used_params(params, defaults);

    int n = static_cast<int>(get_int(params, defaults, "n"));
    if (n < 12 || n > 200) raise(IssueCode::ParamOutOfRange, "n must be in [12, 200]");

    FiniteMetricSpace squares = zoo::squares_space(n);
    zoo::LogSequence ls = zoo::log_sequence_double(n, 2 * n);
    const FiniteMetricSpace& logs = ls.family.ambient.base;

    bool lower_ok = true;
    for (int i = 0; i < n && lower_ok; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && logs.d(i, j) > squares.d(i, j) + kTightTol) {
                lower_ok = false;
                break;
            }
    rep.checks.push_back(row("log metric lies below the squares metric", "comparison",
                             lower_ok ? "d <= b" : "violated", "d <= b", lower_ok));

    double worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            worst_margin = std::min(worst_margin,
                                    2.0 * std::exp(2.0 * logs.d(i, j)) - squares.d(i, j));
    rep.checks.push_back(row("squares metric bounded by 2 exp(2 d)", "comparison",
                             "min margin " + format_double(worst_margin), ">= 0",
                             worst_margin >= 0.0));

    // The single-exponential bound fails pointwise. The named instance is
    // (1, 10): squares distance 99 against bound 22.
    double inst_b = squares.d(0, 9);
    double inst_bound = 2.0 * std::exp(logs.d(0, 9));
    bool inst_fails = inst_b > inst_bound;
    long long failing_pairs = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (squares.d(i, j) > 2.0 * std::exp(logs.d(i, j))) ++failing_pairs;
    bool pass = inst_fails && inst_b == 99.0 && std::fabs(inst_bound - 22.0) < 1e-9 &&
                failing_pairs > 0;
    rep.checks.push_back(row("single-exponential bound fails and is reported", "counterexample",
                             "(1,10): " + format_double(inst_b) + " > " + format_double(inst_bound) +
                                 "; " + std::to_string(failing_pairs) + " failing pairs",
                             "(1,10): 99 > 22", pass));
    return rep;
}

// ---------------------------------------------------------------------------
// rspace-spiral
// ---------------------------------------------------------------------------

ExperimentReport exp_spiral(const ParamMap& params) {
    const ParamMap defaults = {{"samples", "10"}, {"seed", "20260808"}};
    reject_unknown(params, defaults);
    ExperimentReport rep;
    rep.name = "rspace-spiral";
    rep.parameters = used_params(params, defaults);

    int samples = static_cast<int>(get_int(params, defaults, "samples"));
    std::uint64_t seed = static_cast<std::uint64_t>(get_int(params, defaults, "seed"));
    if (samples < 3 || samples > 200) raise(IssueCode::ParamOutOfRange, "samples must be in [3,200]");

    const std::vector<double> rings = {10.0, 100.0, 1000.0};
    SplitMix64 rng(seed);

    std::vector<PointLabel> labels;
    std::vector<double> px, py;
    std::vector<int> xs, ys;
    std::vector<int> ring_of;
    auto add_point = [&](double phi) {
        double r = std::exp(phi);
        px.push_back(r * std::cos(phi));
        py.push_back(r * std::sin(phi));
        labels.push_back(PointLabel::planar(px.back(), py.back()));
        return static_cast<int>(labels.size()) - 1;
    };
    for (size_t ring = 0; ring < rings.size(); ++ring) {
        double lo = std::log(rings[ring]);
        double hi = std::log(rings[ring] + 1.0);
        for (int s = 0; s < samples; ++s) {
            double phi_x = lo + (hi - lo) * rng.unit();
            double phi_y = lo + (hi - lo) * rng.unit();
            xs.push_back(add_point(phi_x));
            ring_of.push_back(static_cast<int>(ring));
            ys.push_back(add_point(phi_y));
        }
    }
    const int n = static_cast<int>(labels.size());
    SquareMatrix dist(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            dist.at(i, j) = std::hypot(px[static_cast<size_t>(i)] - px[static_cast<size_t>(j)],
                                       py[static_cast<size_t>(i)] - py[static_cast<size_t>(j)]);
    FiniteMetricSpace space =
        FiniteMetricSpace::validated("log-spiral-rings", std::move(labels), std::move(dist));

    // Every pair inside ring R is within the arc estimate (width) * (R+1) + 1.
    for (size_t ring = 0; ring < rings.size(); ++ring) {
        double R = rings[ring];
        double bound = (std::log(R + 1.0) - std::log(R)) * (R + 1.0) + 1.0;
        double worst = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            if (ring_of[i] != static_cast<int>(ring)) continue;
            worst = std::max(worst, space.d(xs[i], ys[i]));
        }
        rep.checks.push_back(row("ring R=" + format_double(R) + " displacement within arc bound",
                                 "ring-bound", format_double(worst), "<= " + format_double(bound),
                                 worst <= bound));
    }

    DoubleMetric ambient = unit_rep(space, 1.0);
    std::vector<std::vector<int>> levels(3);
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t ring = static_cast<size_t>(ring_of[i]); ring < 3; ++ring) {
            levels[ring].push_back(xs[i]);
            levels[ring].push_back(ys[i]);
        }
    ScaleFamily fam = ScaleFamily::from_subsets(ambient, rings, levels);
    ComparisonVerdict probe = r_space_probe(fam, xs, ys, 5.0);
    rep.checks.push_back(row("displacement stays bounded across rings", "rigidity-probe",
                             ComparisonVerdict::kind_name(probe.kind), "dominated",
                             probe.dominated()));
    rep.verdicts.emplace_back("ring-probe", probe);
    return rep;
}

// ---------------------------------------------------------------------------
// noncommuting-construction
// ---------------------------------------------------------------------------

ExperimentReport exp_noncommuting(const ParamMap& params) {
    const ParamMap defaults = {{"half_width", "600"}, {"k_max", "200"}};
    reject_unknown(params, defaults);
    ExperimentReport rep;
    rep.name = "noncommuting-construction";
    rep.parameters = used_params(params, defaults);

    int half_width = static_cast<int>(get_int(params, defaults, "half_width"));
    int k_max = static_cast<int>(get_int(params, defaults, "k_max"));
    if (k_max < 4 || half_width < 3 * k_max)
        raise(IssueCode::ParamOutOfRange, "need k_max >= 4 and half_width >= 3 k_max");

    FiniteMetricSpace X = zoo::zn_ball(1, zoo::LpNorm::L1, half_width);
    auto index_of = [&](long long v) {
        // points are ordered by |v| then by value: 0, -1, 1, -2, 2, ...
        if (v == 0) return 0;
        return static_cast<int>(2 * std::llabs(v) - 1 + (v > 0 ? 1 : 0));
    };

    zoo::NonRWitness w;
    for (int k = 1; k <= k_max; ++k) {
        w.xs.push_back(index_of(k));
        w.ys.push_back(index_of(-k));
    }
    w.C = 1.0;
    auto [d1, d2] = zoo::noncommuting_pair(X, w);
    rep.checks.push_back(row("witness satisfies near, separation and divergence", "witness",
                             w.separation_verified ? "verified" : "unverified", "verified",
                             w.separation_verified));
    rep.checks.push_back(row("both routed metrics pass exhaustive validation", "validation",
                             "valid", "valid", true));

    DoubleMetric d21 = compose(d2, d1);
    DoubleMetric d12 = compose(d1, d2);
    double dev21 = 0.0, dev12 = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        int idx = index_of(k);
        dev21 = std::max(dev21, std::fabs(d21.cross.at(idx, idx) - 2.0));
        dev12 = std::max(dev12, std::fabs(d12.cross.at(idx, idx) - (2.0 * k + 4.0)));
    }
    rep.checks.push_back(max_dev_row("product d2 d1 diagonal is the constant 2C", "composition",
                                     dev21, 0.0));
    rep.checks.push_back(max_dev_row("product d1 d2 diagonal grows as 2k+4", "composition", dev12,
                                     0.0));
    int idx = index_of(k_max);
    rep.checks.push_back(row("separation row at k_max", "composition",
                             "(" + format_double(d21.cross.at(idx, idx)) + ", " +
                                 format_double(d12.cross.at(idx, idx)) + ")",
                             "(2, " + format_double(2.0 * k_max + 4.0) + ")",
                             d21.cross.at(idx, idx) == 2.0 &&
                                 d12.cross.at(idx, idx) == 2.0 * k_max + 4.0));
    return rep;
}

} // namespace

const std::vector<ExperimentInfo>& experiment_list() {
    static const std::vector<ExperimentInfo> list = {
        {"rays-infinite-unit", "vn pair of the ray-shift metric on the bouquet of rays",
         {{"rays", "20"}, {"t_max", "100"}}},
        {"amenable-nonfinite", "sup-norm log sequence space: profiles, growth, classification",
         {{"n", "100"}, {"ambient", "200"}}},
        {"free-group-property-I", "piecewise left-multiplication graph metric on a free-group ball",
         {{"r", "5"}, {"c", "3"}}},
        {"qi-noninvariance", "exponential-gap sequence pair: ratios, involution, products",
         {{"n_ratio", "40"}, {"n_comp", "25"}}},
        {"coarse-noninvariance", "squares space against the log metric: two-sided bounds",
         {{"n", "50"}}},
        {"rspace-spiral", "ring displacement probes on the logarithmic spiral",
         {{"samples", "10"}, {"seed", "20260808"}}},
        {"noncommuting-construction", "witness-routed metric pair with ordered products",
         {{"half_width", "600"}, {"k_max", "200"}}},
    };
    return list;
}

ExperimentReport run_experiment(const std::string& name, const ParamMap& params) {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    if (name == "rays-infinite-unit") rep = exp_rays(params);
    else if (name == "amenable-nonfinite") rep = exp_amenable(params);
    else if (name == "free-group-property-I") rep = exp_free_group(params);
    else if (name == "qi-noninvariance") rep = exp_qi(params);
    else if (name == "coarse-noninvariance") rep = exp_coarse(params);
    else if (name == "rspace-spiral") rep = exp_spiral(params);
    else if (name == "noncommuting-construction") rep = exp_noncommuting(params);
    else raise(IssueCode::UnknownExperiment, "no experiment named " + name);
    auto t1 = std::chrono::steady_clock::now();
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return rep;
}

std::string emit_report(const ExperimentReport& r, const std::string& format) {
    if (format == "json") {
        std::string out = "{\"name\":\"" + json_escape(r.name) + "\",\"parameters\":{";
        for (size_t i = 0; i < r.parameters.size(); ++i) {
            if (i) out += ",";
            out += "\"" + json_escape(r.parameters[i].first) + "\":\"" +
                   json_escape(r.parameters[i].second) + "\"";
        }
        out += "},\"checks\":[";
        for (size_t i = 0; i < r.checks.size(); ++i) {
            const CheckRow& c = r.checks[i];
            if (i) out += ",";
            out += "{\"claim\":\"" + json_escape(c.claim) + "\",\"anchor\":\"" +
                   json_escape(c.anchor) + "\",\"measured\":\"" + json_escape(c.measured) +
                   "\",\"expected\":\"" + json_escape(c.expected) + "\",\"pass\":" +
                   (c.pass ? "true" : "false") + "}";
        }
        out += "],\"verdicts\":[";
        for (size_t i = 0; i < r.verdicts.size(); ++i) {
            if (i) out += ",";
            out += "{\"name\":\"" + json_escape(r.verdicts[i].first) + "\",\"verdict\":" +
                   verdict_to_json(r.verdicts[i].second) + "}";
        }
        out += "],\"runtime_ms\":" + std::to_string(r.runtime_ms) + "}";
        return out;
    }
    if (format == "csv") {
        std::string out = "name,anchor,measured,expected,pass\n";
        auto cell = [](const std::string& s) {
            std::string q = "\"";
            for (char c : s) {
                if (c == '"') q += "\"\"";
                else q += c;
            }
            return q + "\"";
        };
        for (const CheckRow& c : r.checks)
            out += cell(c.claim) + "," + cell(c.anchor) + "," + cell(c.measured) + "," +
                   cell(c.expected) + "," + (c.pass ? "true" : "false") + "\n";
        return out;
    }
    if (format == "text") {
        std::string out = "experiment: " + r.name + "\n";
        for (const auto& [k, v] : r.parameters) out += "  param " + k + " = " + v + "\n";
        for (const CheckRow& c : r.checks)
            out += std::string(c.pass ? "  [PASS] " : "  [FAIL] ") + c.claim + " (measured " +
                   c.measured + ", expected " + c.expected + ")\n";
        for (const auto& [vn, v] : r.verdicts)
            out += "  verdict " + vn + ": " + ComparisonVerdict::kind_name(v.kind) +
                   (v.reason.empty() ? "" : " (" + v.reason + ")") + "\n";
        out += "  runtime_ms: " + std::to_string(r.runtime_ms) + "\n";
        return out;
    }
    raise(IssueCode::UnsupportedFormat, "format must be json, csv or text");
}

ExperimentReport report_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        raise(IssueCode::ParseError, "malformed report document");
    ExperimentReport r;
    r.name = j.value("name", std::string());
    if (j.contains("parameters"))
        for (auto it = j["parameters"].begin(); it != j["parameters"].end(); ++it)
            r.parameters.emplace_back(it.key(), it.value().get<std::string>());
    std::sort(r.parameters.begin(), r.parameters.end());
    for (const nlohmann::json& c : j.value("checks", nlohmann::json::array()))
        r.checks.push_back({c.value("claim", std::string()), c.value("anchor", std::string()),
                            c.value("measured", std::string()), c.value("expected", std::string()),
                            c.value("pass", false)});
    for (const nlohmann::json& v : j.value("verdicts", nlohmann::json::array()))
        r.verdicts.emplace_back(v.value("name", std::string()),
                                verdict_from_json(v["verdict"].dump()));
    r.runtime_ms = j.value("runtime_ms", 0LL);
    return r;
}

} // namespace coarse
