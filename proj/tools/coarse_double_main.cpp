// coarse-double: command-line front end for the coarse-double library.
//
//   generate  build a named space or double and write it as JSON
//   compose   min-plus product of two doubles over the same base
//   adjoint   cross-transpose of a double
//   classify  coarse class of a double (with a synthesized prefix family)
//   compare   coarse comparison of two doubles
//   run       scripted experiment, report as json/csv/text
//   list      available experiments and generators
//
// Exit codes: 0 success, 1 experiment checks failed, 2 usage or input error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "coarse/analysis.hpp"
#include "coarse/errors.hpp"
#include "coarse/experiments.hpp"
#include "coarse/json_io.hpp"
#include "coarse/util.hpp"
#include "coarse/zoo.hpp"

namespace {

using namespace coarse;

struct Args {
    std::string command;
    std::string positional;
    std::map<std::string, std::string> flags;   // --name value
    ParamMap params;                            // repeated --param k=v
    bool exhaustive = false;
};

[[noreturn]] void usage_error(const std::string& msg) {
    raise(IssueCode::UsageError, msg);
}

Args parse_args(int argc, char** argv) {
    Args a;
    if (argc < 2) usage_error("no command; try 'coarse-double list'");
    a.command = argv[1];
    int i = 2;
    if (i < argc && argv[i][0] != '-') a.positional = argv[i++];
    for (; i < argc; ++i) {
        std::string flag = argv[i];
        if (flag.rfind("--", 0) != 0) usage_error("unexpected argument: " + flag);
        flag = flag.substr(2);
        if (flag == "exhaustive-validation") {
            a.exhaustive = true;
            continue;
        }
        if (i + 1 >= argc) usage_error("flag --" + flag + " needs a value");
        std::string value = argv[++i];
        if (flag == "param") {
            auto eq = value.find('=');
            if (eq == std::string::npos) usage_error("--param expects key=value");
            a.params[value.substr(0, eq)] = value.substr(eq + 1);
        } else {
            a.flags[flag] = value;
        }
    }
    return a;
}

std::string need_flag(const Args& a, const std::string& name) {
    auto it = a.flags.find(name);
    if (it == a.flags.end()) usage_error("missing required flag --" + name);
    return it->second;
}

void write_or_print(const Args& a, const std::string& content) {
    auto it = a.flags.find("out");
    if (it == a.flags.end()) {
        std::fputs(content.c_str(), stdout);
        if (!content.empty() && content.back() != '\n') std::fputc('\n', stdout);
    } else {
        atomic_write_file(it->second, content);
    }
}

long long param_int(const ParamMap& p, const std::string& key, long long dflt) {
    auto it = p.find(key);
    if (it == p.end()) return dflt;
    return std::stoll(it->second);
}

double param_num(const ParamMap& p, const std::string& key, double dflt) {
    auto it = p.find(key);
    if (it == p.end()) return dflt;
    return std::stod(it->second);
}

struct GeneratedDocs {
    // member name -> serialized JSON document
    std::vector<std::pair<std::string, std::string>> docs;
    std::string primary;
};

GeneratedDocs generate(const std::string& name, const ParamMap& p) {
    GeneratedDocs g;
    if (name == "f2-ball") {
        zoo::F2Ball b = zoo::f2_ball(static_cast<int>(param_int(p, "r", 3)));
        g.docs.emplace_back("space", space_to_json(b.space));
        g.primary = "space";
    } else if (name == "zn-ball") {
        long long pv = param_int(p, "p", 1);
        auto it = p.find("p");
        zoo::LpNorm norm = zoo::LpNorm::L1;
        if (it != p.end() && it->second == "inf") norm = zoo::LpNorm::LInf;
        else if (pv == 2) norm = zoo::LpNorm::L2;
        else if (pv == 1) norm = zoo::LpNorm::L1;
        else if (it != p.end()) raise(IssueCode::ParamOutOfRange, "p must be 1, 2 or inf");
        FiniteMetricSpace s = zoo::zn_ball(static_cast<int>(param_int(p, "dim", 1)), norm,
                                           static_cast<int>(param_int(p, "radius", 10)));
        g.docs.emplace_back("space", space_to_json(s));
        g.primary = "space";
    } else if (name == "ray-bouquet") {
        int rays = static_cast<int>(param_int(p, "rays", 5));
        double t_max = param_num(p, "t_max", 20.0);
        double step = param_num(p, "t_step", 1.0);
        std::vector<double> grid;
        for (double t = 0.0; t <= t_max + 1e-12; t += step) grid.push_back(t);
        zoo::RayBouquet rb = zoo::ray_bouquet(rays, grid);
        g.docs.emplace_back("space", space_to_json(rb.space));
        g.docs.emplace_back("d", double_to_json(rb.d, {"ray-bouquet d"}));
        g.docs.emplace_back("e", double_to_json(rb.e, {"ray-bouquet e"}));
        g.docs.emplace_back("f", double_to_json(rb.f, {"ray-bouquet f"}));
        g.primary = "d";
    } else if (name == "log-sequence") {
        int n = static_cast<int>(param_int(p, "n", 40));
        int cut = static_cast<int>(param_int(p, "coord_cut", 2 * n));
        zoo::LogSequence ls = zoo::log_sequence_double(n, cut);
        g.docs.emplace_back("space", space_to_json(ls.family.ambient.base));
        g.docs.emplace_back("double", double_to_json(ls.family.ambient, {"log-sequence double"}));
        g.primary = "double";
    } else if (name == "exp-spaces") {
        zoo::ExpSpaces ex = zoo::exp_spaces(static_cast<int>(param_int(p, "n", 25)));
        g.docs.emplace_back("b_space", space_to_json(ex.b_space));
        g.docs.emplace_back("d_space", space_to_json(ex.d_space));
        g.docs.emplace_back("squares", space_to_json(ex.squares));
        g.docs.emplace_back("involution", double_to_json(ex.involution, {"exp involution"}));
        g.docs.emplace_back("e_plus", double_to_json(ex.e_plus, {"link over positive values"}));
        g.docs.emplace_back("f_minus", double_to_json(ex.f_minus, {"link over negative values"}));
        g.primary = "involution";
    } else if (name == "squares") {
        FiniteMetricSpace s = zoo::squares_space(static_cast<int>(param_int(p, "n", 50)));
        g.docs.emplace_back("space", space_to_json(s));
        g.primary = "space";
    } else if (name == "spiral") {
        auto it = p.find("kind");
        zoo::SpiralKind kind = zoo::SpiralKind::Log;
        if (it != p.end()) {
            if (it->second == "archimedean") kind = zoo::SpiralKind::Archimedean;
            else if (it->second != "log")
                raise(IssueCode::ParamOutOfRange, "kind must be log or archimedean");
        }
        FiniteMetricSpace s =
            zoo::spiral_sample(kind, param_num(p, "phi_max", 6.0), param_num(p, "step", 0.1));
        g.docs.emplace_back("space", space_to_json(s));
        g.primary = "space";
    } else if (name == "noncommuting-pair") {
        int half_width = static_cast<int>(param_int(p, "half_width", 200));
        int k_max = static_cast<int>(param_int(p, "k_max", 50));
        double C = param_num(p, "c", 1.0);
        FiniteMetricSpace X = zoo::zn_ball(1, zoo::LpNorm::L1, half_width);
        auto index_of = [&](long long v) {
            return v == 0 ? 0 : static_cast<int>(2 * std::llabs(v) - 1 + (v > 0 ? 1 : 0));
        };
        zoo::NonRWitness w;
        for (int k = 1; k <= k_max; ++k) {
            w.xs.push_back(index_of(k));
            w.ys.push_back(index_of(-k));
        }
        w.C = C;
        auto [d1, d2] = zoo::noncommuting_pair(X, w);
        g.docs.emplace_back("d1", double_to_json(d1, {"witness-routed d1"}));
        g.docs.emplace_back("d2", double_to_json(d2, {"witness-routed d2"}));
        g.primary = "d1";
    } else {
        raise(IssueCode::UnknownExperiment, "no generator named " + name);
    }
    return g;
}

ScaleFamily synth_family(const DoubleMetric& d) {
    // Default three-level chain for ad-hoc inputs: point-order prefixes.
    return ScaleFamily::prefixes(d, {0.5, 0.75, 1.0});
}

int dispatch(int argc, char** argv) {
    Args a = parse_args(argc, argv);
    if (a.flags.count("threads")) setenv("COARSE_DOUBLE_THREADS", a.flags.at("threads").c_str(), 1);
    ValidateOptions vopts;
    vopts.exhaustive = a.exhaustive;

    if (a.command == "list") {
        std::string out = "experiments:\n";
        for (const auto& e : experiment_list()) {
            out += "  " + e.name + " - " + e.summary + " (defaults:";
            for (const auto& [k, v] : e.defaults) out += " " + k + "=" + v;
            out += ")\n";
        }
        out += "generators: f2-ball zn-ball ray-bouquet log-sequence exp-spaces squares spiral "
               "noncommuting-pair\n";
        std::fputs(out.c_str(), stdout);
        return 0;
    }

    if (a.command == "generate") {
        if (a.positional.empty()) usage_error("generate needs a generator name");
        GeneratedDocs g = generate(a.positional, a.params);
        std::string member = a.flags.count("member") ? a.flags.at("member") : g.primary;
        for (auto& [m, doc] : g.docs)
            if (m == member) {
                write_or_print(a, doc);
                return 0;
            }
        std::string available;
        for (auto& [m, _] : g.docs) available += " " + m;
        usage_error("unknown member " + member + "; available:" + available);
    }

    if (a.command == "compose") {
        DoubleMetric outer = double_from_json(read_file(need_flag(a, "outer")), vopts);
        DoubleMetric inner = double_from_json(read_file(need_flag(a, "inner")), vopts);
        DoubleMetric prod = compose(outer, inner);
        write_or_print(a, double_to_json(prod, {"compose(outer, inner)"}));
        return 0;
    }

    if (a.command == "adjoint") {
        DoubleMetric d = double_from_json(read_file(need_flag(a, "in")), vopts);
        write_or_print(a, double_to_json(adjoint(d), {"adjoint"}));
        return 0;
    }

    if (a.command == "classify") {
        DoubleMetric d = double_from_json(read_file(need_flag(a, "in")), vopts);
        ClassLabel c = classify(d, synth_family(d));
        write_or_print(a, class_label_to_json(c));
        return 0;
    }

    if (a.command == "compare") {
        DoubleMetric x = double_from_json(read_file(need_flag(a, "a")), vopts);
        DoubleMetric y = double_from_json(read_file(need_flag(a, "b")), vopts);
        ComparisonVerdict v = coarse_equal(x, y, synth_family(x));
        std::string format = a.flags.count("format") ? a.flags.at("format") : "json";
        if (format == "json") write_or_print(a, verdict_to_json(v));
        else if (format == "csv") write_or_print(a, evidence_csv(v));
        else usage_error("compare formats: json, csv");
        return 0;
    }

    if (a.command == "run") {
        if (a.positional.empty()) usage_error("run needs an experiment name");
        ParamMap params = a.params;
        if (a.flags.count("seed")) params["seed"] = a.flags.at("seed");
        ExperimentReport rep = run_experiment(a.positional, params);
        std::string format = a.flags.count("format") ? a.flags.at("format") : "text";
        write_or_print(a, emit_report(rep, format));
        return rep.all_passed() ? 0 : 1;
    }

    usage_error("unknown command: " + a.command);
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const CoarseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
