#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "coarse/json_io.hpp"
#include "coarse/tropical.hpp"
#include "coarse/util.hpp"
#include "coarse/zoo.hpp"
#include "test_util.hpp"

// Drives the built binary end to end through a shell: exit codes, output
// files, stderr diagnostics.

using namespace coarse;
using testing::check;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    fs::path tmp = fs::temp_directory_path() / "coarse_cli_out.txt";
    std::string cmd = std::string(COARSE_DOUBLE_BIN) + " " + args + " > " + tmp.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(tmp);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string tmp_path(const std::string& name) {
    return (fs::temp_directory_path() / name).string();
}

void list_and_usage() {
    RunResult r = run("list");
    check(r.exit_code == 0, "list exits 0");
    check(r.out.find("noncommuting-construction") != std::string::npos, "list names experiments");
    check(run("frobnicate").exit_code == 2, "unknown command exits 2");
    check(run("").exit_code == 2, "missing command exits 2");
    RunResult bad = run("run no-such-experiment");
    check(bad.exit_code == 2, "unknown experiment exits 2");
    check(bad.out.find("error:") != std::string::npos, "diagnostic goes to the error stream");
}

void generate_and_classify() {
    std::string unit_path = tmp_path("cli_e.json");
    RunResult gen = run("generate ray-bouquet --param rays=4 --param t_max=6 --member e --out " +
                        unit_path);
    check(gen.exit_code == 0, "generate exits 0");
    DoubleMetric e = double_from_json(read_file(unit_path));
    check(e.size() == 1 + 4 * 6, "generated double has the right size");

    RunResult cls = run("classify --in " + unit_path);
    check(cls.exit_code == 0, "classify exits 0");
    check(cls.out.find("\"label\":\"Unit\"") != std::string::npos, "classify prints Unit");

    RunResult missing = run("classify --in /nonexistent/path.json");
    check(missing.exit_code == 2, "missing input exits 2");
    check(missing.out.find("FileNotFound") != std::string::npos, "missing file named in error");
}

void compose_paths() {
    std::string d_path = tmp_path("cli_d.json");
    std::string e_path = tmp_path("cli_e2.json");
    std::string other = tmp_path("cli_other.json");
    std::string out = tmp_path("cli_prod.json");
    check(run("generate ray-bouquet --param rays=4 --param t_max=6 --member d --out " + d_path)
                  .exit_code == 0,
          "generate d");
    check(run("generate ray-bouquet --param rays=4 --param t_max=6 --member e --out " + e_path)
                  .exit_code == 0,
          "generate e");
    check(run("generate ray-bouquet --param rays=5 --param t_max=6 --member e --out " + other)
                  .exit_code == 0,
          "generate mismatched base");

    std::string before = read_file(d_path);
    RunResult ok = run("compose --outer " + e_path + " --inner " + d_path + " --out " + out);
    check(ok.exit_code == 0, "compose exits 0");
    DoubleMetric prod = double_from_json(read_file(out));
    DoubleMetric d = double_from_json(before);
    check(prod.cross.at(0, 0) == 2.0, "composed origin diagonal");
    check(read_file(d_path) == before, "inputs are never mutated");

    RunResult mismatch = run("compose --outer " + other + " --inner " + d_path + " --out " + out);
    check(mismatch.exit_code == 2, "mismatched bases exit 2");
    check(mismatch.out.find("BaseMismatch") != std::string::npos, "BaseMismatch named");

    RunResult adj = run("adjoint --in " + d_path + " --out " + out);
    check(adj.exit_code == 0, "adjoint exits 0");
    DoubleMetric a = double_from_json(read_file(out));
    check(a.cross.at(0, 1) == d.cross.at(1, 0), "adjoint file holds the transpose");

    RunResult cmp = run("compare --a " + d_path + " --b " + e_path);
    check(cmp.exit_code == 0, "compare exits 0");
    check(cmp.out.find("\"kind\":\"not-dominated\"") != std::string::npos,
          "shift and identity separate");
}

void run_experiments_via_cli() {
    RunResult csv = run("run noncommuting-construction --param half_width=90 --param k_max=30 "
                        "--format csv");
    check(csv.exit_code == 0, "experiment run exits 0");
    check(csv.out.rfind("name,anchor,measured,expected,pass", 0) == 0, "csv header first");
    check(csv.out.find("separation row") != std::string::npos, "csv carries the separation row");

    std::string rpt = tmp_path("cli_report.json");
    RunResult js = run("run coarse-noninvariance --param n=20 --format json --out " + rpt);
    check(js.exit_code == 0, "json report exits 0");
    check(read_file(rpt).find("\"name\":\"coarse-noninvariance\"") != std::string::npos,
          "json report written");

    // the qi run carries two known-red product rows: exit code 1
    RunResult qi = run("run qi-noninvariance --param n_ratio=13 --param n_comp=13 --format text");
    check(qi.exit_code == 1, "failing checks exit 1");
    check(qi.out.find("[FAIL]") != std::string::npos, "text format shows failing rows");
}

} // namespace

int main() {
    list_and_usage();
    generate_and_classify();
    compose_paths();
    run_experiments_via_cli();
    return testing::summary("cli_tests");
}
