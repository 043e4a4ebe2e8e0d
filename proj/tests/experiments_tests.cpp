#include <algorithm>

#include "coarse/errors.hpp"
#include "coarse/experiments.hpp"
#include "test_util.hpp"

using namespace coarse;
using testing::check;

namespace {

std::string zero_runtime(std::string json) {
    auto pos = json.find("\"runtime_ms\":");
    if (pos == std::string::npos) return json;
    auto end = json.find_first_of(",}", pos + 13);
    return json.substr(0, pos + 13) + "0" + json.substr(end);
}

void registry_cases() {
    check(experiment_list().size() == 7, "seven experiments registered");
    check(testing::throws_with([] { run_experiment("no-such-thing"); }, "UnknownExperiment"),
          "unknown experiment rejected");
    check(testing::throws_with([] { run_experiment("coarse-noninvariance", {{"n", "3"}}); },
                               "ParamOutOfRange"),
          "out-of-range parameter rejected");
    check(testing::throws_with([] { run_experiment("coarse-noninvariance", {{"bogus", "1"}}); },
                               "ParamOutOfRange"),
          "unknown parameter rejected");
    check(testing::throws_with([] { run_experiment("coarse-noninvariance", {{"n", "abc"}}); },
                               "ParamOutOfRange"),
          "non-numeric parameter rejected");
}

void determinism_cases() {
    ParamMap p = {{"n", "20"}};
    ExperimentReport r1 = run_experiment("coarse-noninvariance", p);
    ExperimentReport r2 = run_experiment("coarse-noninvariance", p);
    check(zero_runtime(emit_report(r1, "json")) == zero_runtime(emit_report(r2, "json")),
          "reports are byte-identical up to runtime");

    ExperimentReport s1 = run_experiment("rspace-spiral", {{"samples", "5"}});
    ExperimentReport s2 = run_experiment("rspace-spiral", {{"samples", "5"}});
    check(zero_runtime(emit_report(s1, "json")) == zero_runtime(emit_report(s2, "json")),
          "seeded sampling is reproducible");
}

void emit_cases() {
    ExperimentReport empty;
    empty.name = "empty";
    std::string json = emit_report(empty, "json");
    check(json.find("\"checks\":[]") != std::string::npos, "empty checks serialize");
    std::string csv = emit_report(empty, "csv");
    check(csv == "name,anchor,measured,expected,pass\n", "empty CSV is just the header");

    ExperimentReport r;
    r.name = "sample";
    r.parameters = {{"k", "3"}};
    r.checks.push_back({"value, with comma", "derived-oracle", "1", "1", true});
    r.checks.push_back({"failing row", "slug", "2", "3", false});
    std::string c = emit_report(r, "csv");
    check(c.find("\"value, with comma\",\"derived-oracle\",\"1\",\"1\",true") != std::string::npos,
          "CSV quotes and rows");
    check(c.find("false") != std::string::npos, "CSV records failures");
    std::string t = emit_report(r, "text");
    check(t.find("[FAIL] failing row") != std::string::npos, "text format marks failures");
    check(!r.all_passed(), "report aggregates pass/fail");

    check(testing::throws_with([&] { emit_report(r, "yaml"); }, "UnsupportedFormat"),
          "unsupported format rejected");

    // emit -> parse -> emit is lossless
    ExperimentReport real = run_experiment("coarse-noninvariance", {{"n", "16"}});
    std::string once = emit_report(real, "json");
    ExperimentReport back = report_from_json(once);
    check(emit_report(back, "json") == once, "report JSON round-trips losslessly");
    check(back.verdicts.size() == real.verdicts.size() && back.checks.size() == real.checks.size(),
          "parsed report keeps all rows");
}

void scaled_down_runs() {
    // each experiment at reduced parameters; the qi run carries its two known
    // red rows, everything else passes
    ExperimentReport rays = run_experiment("rays-infinite-unit", {{"rays", "5"}, {"t_max", "64"}});
    check(rays.all_passed(), "rays experiment passes at small scale");

    ExperimentReport amen = run_experiment("amenable-nonfinite", {{"n", "24"}, {"ambient", "48"}});
    check(amen.all_passed(), "amenable experiment passes at small scale");

    ExperimentReport fg = run_experiment("free-group-property-I", {{"r", "4"}});
    check(fg.all_passed(), "free-group experiment passes at radius 4");

    ExperimentReport qi = run_experiment("qi-noninvariance", {{"n_ratio", "40"}, {"n_comp", "17"}});
    int failed_rows = 0;
    for (const CheckRow& c : qi.checks)
        if (!c.pass) ++failed_rows;
    check(failed_rows == 2, "qi run fails exactly the two product identities");
    for (const CheckRow& c : qi.checks) {
        bool product_row = c.claim.find("product e s") != std::string::npos ||
                           c.claim.find("product s e") != std::string::npos;
        check(c.pass != product_row, "qi row state: " + c.claim);
    }

    ExperimentReport coarse_run = run_experiment("coarse-noninvariance");
    check(coarse_run.all_passed(), "coarse-noninvariance passes");

    ExperimentReport spiral = run_experiment("rspace-spiral", {{"samples", "6"}});
    check(spiral.all_passed(), "spiral probes pass");

    ExperimentReport nc =
        run_experiment("noncommuting-construction", {{"half_width", "90"}, {"k_max", "30"}});
    check(nc.all_passed(), "noncommuting construction passes at small scale");
}

} // namespace

int main() {
    registry_cases();
    determinism_cases();
    emit_cases();
    scaled_down_runs();
    return testing::summary("experiments_tests");
}
