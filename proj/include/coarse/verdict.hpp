#pragma once

#include <string>
#include <vector>

namespace coarse {

// A function sampled along the levels of a scale family. Ids are opaque sample
// identifiers (point index, or encoded pair index for functions on X x X');
// two functions compared by `dominates` must carry identical ids per level.
struct SampledFunction {
    struct Level {
        double param = 0.0;
        std::vector<long long> ids;
        std::vector<double> values;
    };
    std::vector<Level> levels;
};

// Outcome of a coarse comparison, always evidence-carrying.
//
// Dominated      — the evidence table shows, per cutoff C and level, the
//                  largest a-value over the set {b <= C}; bounded-shift
//                  domination records the stabilized shift instead.
// NotDominated   — a witness: samples with b <= C whose a-values escape by
//                  more than the level slack at every step, three levels deep.
// Inconclusive   — neither pattern at the sampled scales; reason attached.
struct ComparisonVerdict {
    enum class Kind { Dominated, NotDominated, Inconclusive };

    struct WitnessRow {
        double level = 0.0;
        long long id = -1;
        std::string point;
        double a = 0.0;
        double b = 0.0;
    };
    struct EvidenceRow {
        double level = 0.0;
        double C = 0.0;
        double max_a = 0.0;
    };

    Kind kind = Kind::Inconclusive;
    double witness_C = 0.0;
    std::vector<WitnessRow> witness;
    std::vector<EvidenceRow> table;
    std::string reason;
    std::string direction;

    bool dominated() const { return kind == Kind::Dominated; }
    bool not_dominated() const { return kind == Kind::NotDominated; }

    static const char* kind_name(Kind k);
};

// Coarse class of a double metric, decided at scale with the evidence kept.
struct ClassLabel {
    enum class Label { Unit, Zero, ProperIdempotent, SelfadjointNonIdempotent, General };

    Label label = Label::General;
    std::vector<std::pair<std::string, ComparisonVerdict>> evidence;

    static const char* label_name(Label l);
    const char* name() const { return label_name(label); }
};

} // namespace coarse
