#pragma once

#include <utility>

#include "coarse/double_metric.hpp"
#include "coarse/scale_family.hpp"
#include "coarse/tropical.hpp"

namespace coarse::zoo {

// Free group ball with its property-(I) payload: the partition of reduced
// words by leading letter, the elements g = ab, h = a^2, and the piecewise
// left-multiplication map. The map's domain is the sub-ball of radius r-2 —
// both pieces lengthen a word by exactly two letters, so that is precisely
// where the image stays inside the truncation.
struct PropertyIData {
    std::vector<int> Y;     // words that begin with a or a^-1
    std::vector<int> Z;     // complement (empty word and b-words)
    std::string g = "ab";
    std::string h = "aa";
    PointMap f;
    double C_bound = 2.0;   // exact distortion of f, attained on Y x Z pairs
};

struct F2Ball {
    FiniteMetricSpace space;
    PropertyIData data;
};

// Ball of radius r in the free group on two generators, word-length metric,
// enumerated by length then by letter order a, a^-1, b, b^-1. 2*3^r - 1 points.
F2Ball f2_ball(int radius);

enum class LpNorm { L1 = 1, L2 = 2, LInf = 0 };

// Lattice l_p ball around the origin, ordered by norm then lexicographically.
FiniteMetricSpace zn_ball(int dim, LpNorm p, int radius);

// Bouquet of N rays glued at one origin, l^1 geometry: points (n, t) with
// d((n,t),(m,s)) = |t-s| on a common ray and t+s otherwise. The three cross
// metrics connect ray n to ray n+1 (d), ray n to itself (e), and ray n to
// itself except ray 1 (f); either endpoint at the origin takes the common
// value t+s+1 of the applicable case formulas. Point order is origin first,
// then t ascending, so point-order prefixes are t-sublevels.
struct RayBouquet {
    FiniteMetricSpace space;
    DoubleMetric d, e, f;
};
RayBouquet ray_bouquet(int num_rays, const std::vector<double>& t_grid);

// Sup-norm sequence space: x_n = (log 2, ..., log(n+1), 0, ...) against the
// coordinate-doubled copy x'_n. Distances are computed directly as sup over
// the first coord_cut coordinates (coord_cut >= 2N makes that exact).
// Family levels sit at N/4, N/2, N.
struct LogSequence {
    ScaleFamily family; // ambient double + prefix levels
};
LogSequence log_sequence_double(int N, int coord_cut);

// Exponential-gap sequence pair: b(n,m) = |2^n - 2^m| against d(n,m) =
// |y_n - y_m| with y_n = s(n) 4^{floor(n/2)}, s(n) = (-1)^{floor((n-1)/2)};
// the planar involution double cross(n,m) = sqrt((y_n + y_m)^2 + 1); link
// idempotents over the positive and negative index sets; and the squares
// space {n^2}. N is capped at 40 so every 4^{floor(n/2)} stays exact.
struct ExpSpaces {
    std::vector<double> y;
    FiniteMetricSpace b_space;
    FiniteMetricSpace d_space;
    FiniteMetricSpace squares;
    DoubleMetric involution;
    DoubleMetric e_plus;
    DoubleMetric f_minus;
    std::vector<int> a_plus;  // indices with y_n > 0
    std::vector<int> a_minus; // indices with y_n < 0
};
ExpSpaces exp_spaces(int N);

// {n^2 : 1 <= n <= N} with the line metric.
FiniteMetricSpace squares_space(int N);

enum class SpiralKind { Log, Archimedean };

// Planar spiral sample: points (r(phi) cos phi, r(phi) sin phi) on the phi
// grid {0, step, 2*step, ...} up to phi_max, chord metric.
FiniteMetricSpace spiral_sample(SpiralKind kind, double phi_max, double step);

// Sequence pair certifying the failure of rigidity: mutually near, unboundedly
// displaced, and separated (d(x_k, y_n) > k for all k, n).
struct NonRWitness {
    std::vector<int> xs, ys;
    double C = 1.0;
    bool separation_verified = false;
};

// Checks all three witness conditions on the given space; fills
// separation_verified. Throws WitnessInvalid naming the failed condition.
void validate_witness(const FiniteMetricSpace& X, NonRWitness& w);

// The pair of metrics routed through the witness sequences:
//   d1(x,y') = min_n [ d(x, x_n) + C + d(y_n, y) ]
//   d2(x,y') = min_n [ d(x, y_n) + C + d(x_n, y) ]
// Both are validated after construction.
std::pair<DoubleMetric, DoubleMetric> noncommuting_pair(const FiniteMetricSpace& X, NonRWitness& w);

} // namespace coarse::zoo
