#include "coarse/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "coarse/errors.hpp"
#include "coarse/util.hpp"

namespace coarse::zoo {

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

F2Ball f2_ball(int radius) {
    if (radius < 1 || radius > 7)
        raise(IssueCode::RadiusTooLarge, "free-group ball radius must be in [1, 7]");
    const char letters[4] = {'a', 'A', 'b', 'B'};

    std::vector<std::string> ws;
    ws.emplace_back("");
    size_t shell_begin = 0;
    for (int len = 1; len <= radius; ++len) {
        size_t shell_end = ws.size();
        for (size_t i = shell_begin; i < shell_end; ++i) {
            for (char c : letters) {
                if (!ws[i].empty() && ws[i].back() == words::letter_inverse(c)) continue;
                ws.push_back(ws[i] + c);
            }
        }
        shell_begin = shell_end;
    }
    const int n = static_cast<int>(ws.size());

    std::vector<PointLabel> labels;
    labels.reserve(static_cast<size_t>(n));
    for (const auto& w : ws) labels.push_back(PointLabel::free_word(w));
    SquareMatrix dist(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dist.at(i, j) = words::distance(ws[static_cast<size_t>(i)], ws[static_cast<size_t>(j)]);

    F2Ball out;
    out.space = FiniteMetricSpace::validated("f2-ball-r" + std::to_string(radius),
                                             std::move(labels), std::move(dist));

    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i) index[ws[static_cast<size_t>(i)]] = i;

    PropertyIData data;
    for (int i = 0; i < n; ++i) {
        const std::string& w = ws[static_cast<size_t>(i)];
        bool in_y = !w.empty() && (w[0] == 'a' || w[0] == 'A');
        (in_y ? data.Y : data.Z).push_back(i);
    }
    data.f.image.assign(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        const std::string& w = ws[static_cast<size_t>(i)];
        if (static_cast<int>(w.size()) > radius - 2) continue;
        bool in_y = !w.empty() && (w[0] == 'a' || w[0] == 'A');
        std::string img = words::concat(in_y ? data.g : data.h, w);
        auto it = index.find(img);
        if (it == index.end()) raise(IssueCode::ValidationFailed, "map image missing: " + img);
        data.f.image[static_cast<size_t>(i)] = it->second;
    }
    out.data = std::move(data);
    return out;
}

FiniteMetricSpace zn_ball(int dim, LpNorm p, int radius) {
    if (dim < 1 || radius < 0) raise(IssueCode::ParamOutOfRange, "need dim >= 1, radius >= 0");
    double guard = static_cast<double>(dim) * std::pow(2.0 * radius + 1.0, dim);
    if (guard > 1e6) raise(IssueCode::TooManyPoints, "lattice ball too large");

    auto norm = [&](const std::vector<long long>& v) -> double {
        if (p == LpNorm::L1) {
            long long s = 0;
            for (long long c : v) s += std::llabs(c);
            return static_cast<double>(s);
        }
        if (p == LpNorm::LInf) {
            long long m = 0;
            for (long long c : v) m = std::max(m, std::llabs(c));
            return static_cast<double>(m);
        }
        double s = 0;
        for (long long c : v) s += static_cast<double>(c) * static_cast<double>(c);
        return std::sqrt(s);
    };

    std::vector<std::vector<long long>> pts;
    std::vector<long long> cur(static_cast<size_t>(dim), -radius);
    while (true) {
        if (norm(cur) <= static_cast<double>(radius) + 1e-12) pts.push_back(cur);
        int d = dim - 1;
        while (d >= 0 && cur[static_cast<size_t>(d)] == radius) {
            cur[static_cast<size_t>(d)] = -radius;
            --d;
        }
        if (d < 0) break;
        ++cur[static_cast<size_t>(d)];
    }
    std::stable_sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        double na = norm(a), nb = norm(b);
        if (na != nb) return na < nb;
        return a < b;
    });

    const int n = static_cast<int>(pts.size());
    std::vector<PointLabel> labels;
    labels.reserve(static_cast<size_t>(n));
    for (auto& v : pts) labels.push_back(PointLabel::lattice(v));
    SquareMatrix dist(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<long long> diff(static_cast<size_t>(dim));
            for (int k = 0; k < dim; ++k)
                diff[static_cast<size_t>(k)] =
                    pts[static_cast<size_t>(i)][static_cast<size_t>(k)] - pts[static_cast<size_t>(j)][static_cast<size_t>(k)];
            dist.at(i, j) = norm(diff);
        }
    std::string pname = p == LpNorm::L1 ? "l1" : (p == LpNorm::LInf ? "linf" : "l2");
    return FiniteMetricSpace::validated(
        "z" + std::to_string(dim) + "-" + pname + "-r" + std::to_string(radius), std::move(labels),
        std::move(dist));
}

RayBouquet ray_bouquet(int num_rays, const std::vector<double>& t_grid) {
    if (num_rays < 3) raise(IssueCode::ParamOutOfRange, "need at least 3 rays");
    std::vector<double> grid;
    for (double t : t_grid)
        if (t > 0.0) grid.push_back(t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.empty()) raise(IssueCode::ParamOutOfRange, "t grid has no positive entries");

    std::vector<PointLabel> labels;
    std::vector<int> ray_of;  // 0 = origin
    std::vector<double> t_of;
    labels.push_back(PointLabel::origin());
    ray_of.push_back(0);
    t_of.push_back(0.0);
    for (double t : grid)
        for (int r = 1; r <= num_rays; ++r) {
            labels.push_back(PointLabel::ray_param(r, t));
            ray_of.push_back(r);
            t_of.push_back(t);
        }
    const int n = static_cast<int>(labels.size());

    SquareMatrix dist(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                dist.at(i, j) = 0.0;
                continue;
            }
            if (ray_of[static_cast<size_t>(i)] == ray_of[static_cast<size_t>(j)] &&
                ray_of[static_cast<size_t>(i)] != 0)
                dist.at(i, j) = std::fabs(t_of[static_cast<size_t>(i)] - t_of[static_cast<size_t>(j)]);
            else
                dist.at(i, j) = t_of[static_cast<size_t>(i)] + t_of[static_cast<size_t>(j)];
        }

    RayBouquet out;
    out.space = FiniteMetricSpace::validated("ray-bouquet-n" + std::to_string(num_rays),
                                             std::move(labels), std::move(dist));

    // Case formulas; the origin belongs to every ray and both cases agree
    // there, giving t + s + 1 whenever either endpoint is the origin.
    auto build = [&](auto cheap_case, const char* tag) {
        SquareMatrix cross(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double t = t_of[static_cast<size_t>(i)], s = t_of[static_cast<size_t>(j)];
                int rn = ray_of[static_cast<size_t>(i)], rm = ray_of[static_cast<size_t>(j)];
                if (rn != 0 && rm != 0 && cheap_case(rn, rm))
                    cross.at(i, j) = std::fabs(s - t) + 1.0;
                else
                    cross.at(i, j) = s + t + 1.0;
            }
        (void)tag;
        return DoubleMetric::validated(out.space, std::move(cross));
    };

    out.d = build([](int rn, int rm) { return rm == rn + 1; }, "d");
    out.e = build([](int rn, int rm) { return rm == rn; }, "e");
    out.f = build([](int rn, int rm) { return rm == rn && rn >= 2; }, "f");
    return out;
}

LogSequence log_sequence_double(int N, int coord_cut) {
    if (N < 4) raise(IssueCode::ParamOutOfRange, "need N >= 4");
    if (coord_cut < 2 * N) raise(IssueCode::ParamOutOfRange, "coordinate cut must be >= 2N");

    // x_n(k) = log(k+1) for k <= n; doubled copy x'_m(k) = log(ceil(k/2)+1)
    // for k <= 2m. Indices are 1-based.
    auto plain = [](int n, int k) { return k <= n ? std::log(k + 1.0) : 0.0; };
    auto doubled = [](int m, int k) { return k <= 2 * m ? std::log((k + 1) / 2 + 1.0) : 0.0; };

    std::vector<PointLabel> labels;
    for (int i = 1; i <= N; ++i) labels.push_back(PointLabel::seq(i));
    SquareMatrix dist(N);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            double sup = 0.0;
            for (int k = 1; k <= coord_cut; ++k)
                sup = std::max(sup, std::fabs(plain(i, k) - plain(j, k)));
            dist.at(i - 1, j - 1) = sup;
        }
    FiniteMetricSpace base =
        FiniteMetricSpace::validated("log-sequence-n" + std::to_string(N), std::move(labels),
                                     std::move(dist));

    SquareMatrix cross(N);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            double sup = 0.0;
            for (int k = 1; k <= coord_cut; ++k)
                sup = std::max(sup, std::fabs(plain(i, k) - doubled(j, k)));
            cross.at(i - 1, j - 1) = sup;
        }
    DoubleMetric dbl = DoubleMetric::validated(std::move(base), std::move(cross));

    std::vector<double> lv_params;
    std::vector<std::vector<int>> lv_subsets;
    for (int sz : {N / 4, N / 2, N}) {
        std::vector<int> lv(static_cast<size_t>(sz));
        for (int i = 0; i < sz; ++i) lv[static_cast<size_t>(i)] = i;
        lv_params.push_back(sz);
        lv_subsets.push_back(std::move(lv));
    }
    LogSequence out{ScaleFamily::from_subsets(std::move(dbl), std::move(lv_params),
                                              std::move(lv_subsets))};
    return out;
}

static double exp_y(int n) {
    int sign_exp = (n - 1) / 2;
    double s = (sign_exp % 2 == 0) ? 1.0 : -1.0;
    return s * static_cast<double>(ipow(4, n / 2));
}

ExpSpaces exp_spaces(int N) {
    if (N < 3) raise(IssueCode::ParamOutOfRange, "need N >= 3 for both sign classes");
    if (N > 40) raise(IssueCode::IndexTooLarge, "N above 40 loses exactness of 4^(n/2)");

    ExpSpaces out;
    out.y.resize(static_cast<size_t>(N) + 1);
    for (int i = 1; i <= N; ++i) {
        out.y[static_cast<size_t>(i)] = exp_y(i);
        (out.y[static_cast<size_t>(i)] > 0 ? out.a_plus : out.a_minus).push_back(i - 1);
    }

    auto seq_labels = [N]() {
        std::vector<PointLabel> ls;
        for (int i = 1; i <= N; ++i) ls.push_back(PointLabel::seq(i));
        return ls;
    };

    SquareMatrix bdist(N);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            bdist.at(i - 1, j - 1) = std::fabs(ipow(2, i) - static_cast<double>(ipow(2, j)));
    out.b_space = FiniteMetricSpace::validated("exp-b-n" + std::to_string(N), seq_labels(),
                                               std::move(bdist));

    std::vector<PointLabel> dlabels;
    for (int i = 1; i <= N; ++i)
        dlabels.push_back(PointLabel::planar(out.y[static_cast<size_t>(i)], 0.0));
    SquareMatrix ddist(N);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            ddist.at(i - 1, j - 1) =
                std::fabs(out.y[static_cast<size_t>(i)] - out.y[static_cast<size_t>(j)]);
    out.d_space = FiniteMetricSpace::validated("exp-d-n" + std::to_string(N), std::move(dlabels),
                                               std::move(ddist));

    SquareMatrix cross(N);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            double s = out.y[static_cast<size_t>(i)] + out.y[static_cast<size_t>(j)];
            cross.at(i - 1, j - 1) = std::sqrt(s * s + 1.0);
        }
    out.involution = DoubleMetric::validated(out.d_space, std::move(cross));

    out.e_plus = link_metric(out.d_space, out.a_plus, 1.0);
    out.f_minus = link_metric(out.d_space, out.a_minus, 1.0);
    out.squares = squares_space(N);
    return out;
}

FiniteMetricSpace squares_space(int N) {
    if (N < 1) raise(IssueCode::ParamOutOfRange, "need N >= 1");
    std::vector<PointLabel> labels;
    for (int i = 1; i <= N; ++i) labels.push_back(PointLabel::seq(i));
    SquareMatrix dist(N);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            dist.at(i - 1, j - 1) = std::fabs(static_cast<double>(i) * i - static_cast<double>(j) * j);
    return FiniteMetricSpace::validated("squares-n" + std::to_string(N), std::move(labels),
                                        std::move(dist));
}

FiniteMetricSpace spiral_sample(SpiralKind kind, double phi_max, double step) {
    if (step <= 0.0 || phi_max <= 0.0) raise(IssueCode::ParamOutOfRange, "need step, phi_max > 0");
    if (phi_max / step > 20000.0) raise(IssueCode::TooManyPoints, "spiral grid too fine");
    std::vector<double> xs, ys;
    std::vector<PointLabel> labels;
    for (double phi = 0.0; phi <= phi_max + 1e-12; phi += step) {
        double r = kind == SpiralKind::Log ? std::exp(phi) : phi;
        double x = r * std::cos(phi), y = r * std::sin(phi);
        xs.push_back(x);
        ys.push_back(y);
        labels.push_back(PointLabel::planar(x, y));
    }
    const int n = static_cast<int>(xs.size());
    SquareMatrix dist(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            dist.at(i, j) = std::hypot(xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(j)],
                                       ys[static_cast<size_t>(i)] - ys[static_cast<size_t>(j)]);
    const char* tag = kind == SpiralKind::Log ? "log-spiral" : "archimedean-spiral";
    return FiniteMetricSpace::validated(tag, std::move(labels), std::move(dist));
}

void validate_witness(const FiniteMetricSpace& X, NonRWitness& w) {
    if (w.xs.size() != w.ys.size() || w.xs.empty())
        raise(IssueCode::WitnessInvalid, "sequences must be nonempty and equal length");
    const int n = X.size();
    for (size_t i = 0; i < w.xs.size(); ++i)
        if (w.xs[i] < 0 || w.xs[i] >= n || w.ys[i] < 0 || w.ys[i] >= n)
            raise(IssueCode::WitnessInvalid, "witness index out of range");
    // (near) mutual distances drift by less than C
    for (size_t p = 0; p < w.xs.size(); ++p)
        for (size_t q = p + 1; q < w.xs.size(); ++q) {
            double diff = std::fabs(X.d(w.xs[p], w.xs[q]) - X.d(w.ys[p], w.ys[q]));
            if (!(diff < w.C)) {
                Issue is;
                is.code = IssueCode::WitnessInvalid;
                is.indices = {static_cast<int>(p), static_cast<int>(q), -1};
                is.slack = diff - w.C;
                is.detail = "near condition fails";
                raise(is);
            }
        }
    // (separation) d(x_k, y_n) > k for all k, n (1-based rank)
    for (size_t k = 0; k < w.xs.size(); ++k)
        for (size_t m = 0; m < w.ys.size(); ++m)
            if (!(X.d(w.xs[k], w.ys[m]) > static_cast<double>(k + 1))) {
                Issue is;
                is.code = IssueCode::WitnessInvalid;
                is.indices = {static_cast<int>(k), static_cast<int>(m), -1};
                is.detail = "separation condition fails";
                raise(is);
            }
    // displacement strictly increasing
    for (size_t i = 0; i + 1 < w.xs.size(); ++i)
        if (!(X.d(w.xs[i + 1], w.ys[i + 1]) > X.d(w.xs[i], w.ys[i]))) {
            Issue is;
            is.code = IssueCode::WitnessInvalid;
            is.indices = {static_cast<int>(i), -1, -1};
            is.detail = "displacement not strictly increasing";
            raise(is);
        }
    w.separation_verified = true;
}

std::pair<DoubleMetric, DoubleMetric> noncommuting_pair(const FiniteMetricSpace& X, NonRWitness& w) {
    validate_witness(X, w);
    const int n = X.size();
    std::vector<int> fwd(static_cast<size_t>(n), -1), bwd(static_cast<size_t>(n), -1);
    for (size_t i = 0; i < w.xs.size(); ++i) {
        fwd[static_cast<size_t>(w.xs[i])] = w.ys[i];
        bwd[static_cast<size_t>(w.ys[i])] = w.xs[i];
    }
    PointMap f1{std::move(fwd)}, f2{std::move(bwd)};
    DoubleMetric d1 = graph_metric(X, f1, w.C);
    DoubleMetric d2 = graph_metric(X, f2, w.C);
    return {std::move(d1), std::move(d2)};
}

} // namespace coarse::zoo
