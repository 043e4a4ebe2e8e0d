#pragma once

#include <optional>
#include <utility>

#include "coarse/double_metric.hpp"
#include "coarse/scale_family.hpp"

namespace coarse {

struct ComparisonVerdict; // verdict.hpp

// Semigroup product. compose(outer, inner) applies `inner` first:
//
//   cross(x, z) = min_u [ inner.cross(x, u) + outer.cross(u, z) ]
//
// so compose(rho, d) is the product "rho d" with d acting on the source side.
// All derived scripts (e s, s e, s s* t) read products in this order.
// The result is again a valid double; its floor is at least the sum of the
// factor floors. Min-plus accumulation is order-independent on doubles, so the
// parallel kernel is bit-identical to the sequential one.
DoubleMetric compose(const DoubleMetric& outer, const DoubleMetric& inner, int workers = 0);

// Raw kernel behind compose: out(x,z) = min_u A(x,u) + B(u,z).
SquareMatrix min_plus_product(const SquareMatrix& A, const SquareMatrix& B, int workers = 0);

SquareMatrix transposed(const SquareMatrix& m);

// Pseudo-inverse representative: cross transposed, base unchanged. Involution.
DoubleMetric adjoint(const DoubleMetric& d);

// Unit representative: cross = base + gap.
DoubleMetric unit_rep(const FiniteMetricSpace& space, double gap = 1.0);

// Zero representative: cross(x,y) = d(x,p) + gap + d(p,y) through a basepoint.
DoubleMetric zero_rep(const FiniteMetricSpace& space, int basepoint, double gap = 1.0);

// Selfadjoint idempotent supported on a subset:
//   cross(x,y) = min_{u in A} [ d(x,u) + gap + d(u,y) ].
DoubleMetric link_metric(const FiniteMetricSpace& space, const std::vector<int>& subset,
                         double gap);

// A partial self-map of a space, stored as target indices (-1 = outside the
// domain). Maps induced by truncations are typically partial near the
// boundary; constructions minimize over the domain only.
struct PointMap {
    std::vector<int> image;

    int size() const { return static_cast<int>(image.size()); }
    bool in_domain(int i) const { return image[static_cast<size_t>(i)] >= 0; }
    int operator()(int i) const { return image[static_cast<size_t>(i)]; }

    std::vector<int> domain() const;
    static PointMap total(int n, const std::vector<int>& targets);

    // sup |d(f u, f v) - d(u, v)| over domain pairs, with an attaining pair.
    double distortion(const FiniteMetricSpace& space, std::pair<int, int>* argmax = nullptr) const;
};

// Partial-isometry representative attached to a low-distortion map:
//   cross(x,y) = min_{u in dom f} [ d(x,u) + C + d(f(u), y) ].
// Requires C to strictly exceed the distortion of f; the result is validated
// after construction, and constructions too close to a truncation boundary
// surface as MixedTriangleViolation wrapped in ValidationFailed.
DoubleMetric graph_metric(const FiniteMetricSpace& space, const PointMap& f, double C);

// Von Neumann pair of s: (s* s, s s*). Both factors of the pair come out with
// exactly symmetric cross matrices.
std::pair<DoubleMetric, DoubleMetric> vn_pair(const DoubleMetric& s, int workers = 0);

// Partial-order test s <= t, decided at scale: builds the product with s
// applied first, then s*, then t, and compares it coarsely with s.
ComparisonVerdict leq(const DoubleMetric& s, const DoubleMetric& t, const ScaleFamily& family);

// A representative plus the scale data needed to reason coarsely about its
// class, with a record of the construction steps that produced it.
struct SemigroupElement {
    DoubleMetric rep;
    std::optional<ScaleFamily> family;
    std::vector<std::string> provenance;

    static SemigroupElement make(DoubleMetric rep, std::vector<std::string> provenance = {});

    // Attaches a family; the representative must agree with the family's
    // ambient on every snapshot point.
    SemigroupElement& with_family(ScaleFamily fam);

    SemigroupElement composed_with(const SemigroupElement& inner) const;
    SemigroupElement adjoint_element() const;
};

} // namespace coarse
