#include "coarse/json_io.hpp"

#include <json.hpp>

#include "coarse/errors.hpp"
#include "coarse/util.hpp"

namespace coarse {

using nlohmann::json;

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

namespace {

std::string quoted(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string matrix_to_json(const SquareMatrix& m) {
    std::string out = "[";
    for (int i = 0; i < m.n; ++i) {
        if (i) out += ",";
        out += "[";
        for (int j = 0; j < m.n; ++j) {
            if (j) out += ",";
            out += format_double(m.at(i, j));
        }
        out += "]";
    }
    return out + "]";
}

SquareMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) raise(IssueCode::ParseError, "matrix must be an array of rows");
    const int n = static_cast<int>(j.size());
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            raise(IssueCode::ParseError, "matrix row " + std::to_string(i) + " has wrong length");
        for (int k = 0; k < n; ++k) m.at(i, k) = row[static_cast<size_t>(k)].get<double>();
    }
    return m;
}

PointLabel label_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        raise(IssueCode::ParseError, "label must be an object with a kind");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "word") return PointLabel::free_word(j.at("value").get<std::string>());
    if (kind == "lattice") return PointLabel::lattice(j.at("value").get<std::vector<long long>>());
    if (kind == "origin") return PointLabel::origin();
    if (kind == "ray") return PointLabel::ray_param(j.at("ray").get<int>(), j.at("t").get<double>());
    if (kind == "seq") return PointLabel::seq(j.at("value").get<long long>());
    if (kind == "planar") return PointLabel::planar(j.at("x").get<double>(), j.at("y").get<double>());
    if (kind == "anon") return PointLabel::anon(j.at("value").get<long long>());
    raise(IssueCode::ParseError, "unknown label kind: " + kind);
}

json parse_or_raise(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) raise(IssueCode::ParseError, "malformed JSON document");
    return j;
}

} // namespace

std::string label_to_json(const PointLabel& p) {
    switch (p.kind) {
        case PointLabel::Kind::FreeWord:
            return "{\"kind\":\"word\",\"value\":" + quoted(p.word) + "}";
        case PointLabel::Kind::Lattice: {
            std::string s = "{\"kind\":\"lattice\",\"value\":[";
            for (size_t i = 0; i < p.coords.size(); ++i) {
                if (i) s += ",";
                s += format_int(p.coords[i]);
            }
            return s + "]}";
        }
        case PointLabel::Kind::RayParam:
            if (p.ray == 0) return "{\"kind\":\"origin\"}";
            return "{\"kind\":\"ray\",\"ray\":" + std::to_string(p.ray) +
                   ",\"t\":" + format_double(p.t) + "}";
        case PointLabel::Kind::SeqIndex:
            return "{\"kind\":\"seq\",\"value\":" + format_int(p.n) + "}";
        case PointLabel::Kind::Planar:
            return "{\"kind\":\"planar\",\"x\":" + format_double(p.x) +
                   ",\"y\":" + format_double(p.y) + "}";
        case PointLabel::Kind::Anon:
            return "{\"kind\":\"anon\",\"value\":" + format_int(p.n) + "}";
    }
    raise(IssueCode::ParseError, "bad label kind");
}

PointLabel label_from_json_text(const std::string& text) { return label_from_json(parse_or_raise(text)); }

namespace {

std::string header_json(const FiniteMetricSpace& s) {
    std::string out = "{\"name\":" + quoted(s.name) + ",\"points\":[";
    for (size_t i = 0; i < s.points.size(); ++i) {
        if (i) out += ",";
        out += label_to_json(s.points[i]);
    }
    out += "],\"dist\":" + matrix_to_json(s.dist);
    return out;
}

} // namespace

std::string space_to_json(const FiniteMetricSpace& s) { return header_json(s) + "}"; }

std::string double_to_json(const DoubleMetric& d, const std::vector<std::string>& provenance) {
    std::string out = header_json(d.base) + ",\"cross\":" + matrix_to_json(d.cross);
    if (!provenance.empty()) {
        out += ",\"provenance\":[";
        for (size_t i = 0; i < provenance.size(); ++i) {
            if (i) out += ",";
            out += quoted(provenance[i]);
        }
        out += "]";
    }
    return out + "}";
}

namespace {

std::pair<FiniteMetricSpace, json> base_from_json(const std::string& text,
                                                  const ValidateOptions& opts) {
    json j = parse_or_raise(text);
    if (!j.is_object()) raise(IssueCode::ParseError, "top-level JSON must be an object");
    FiniteMetricSpace s;
    s.name = j.value("name", std::string("unnamed"));
    if (!j.contains("points") || !j.contains("dist"))
        raise(IssueCode::ParseError, "document needs points and dist members");
    for (const json& lj : j["points"]) s.points.push_back(label_from_json(lj));
    s.dist = matrix_from_json(j["dist"]);
    if (auto is = validate_space(s.points, s.dist, opts)) raise(*is);
    return {std::move(s), std::move(j)};
}

} // namespace

FiniteMetricSpace space_from_json(const std::string& text, const ValidateOptions& opts) {
    return base_from_json(text, opts).first;
}

bool json_has_cross(const std::string& text) {
    json j = parse_or_raise(text);
    return j.is_object() && j.contains("cross");
}

DoubleMetric double_from_json(const std::string& text, const ValidateOptions& opts) {
    auto [base, j] = base_from_json(text, opts);
    if (!j.contains("cross")) raise(IssueCode::ParseError, "document has no cross matrix");
    SquareMatrix cross = matrix_from_json(j["cross"]);
    if (auto is = validate_double(base, cross, opts)) raise(*is);
    return DoubleMetric::trusted(std::move(base), std::move(cross));
}

std::string verdict_to_json(const ComparisonVerdict& v) {
    std::string out = "{\"kind\":" + quoted(ComparisonVerdict::kind_name(v.kind));
    out += ",\"C\":" + (v.not_dominated() ? format_double(v.witness_C) : std::string("null"));
    out += ",\"witness\":[";
    for (size_t i = 0; i < v.witness.size(); ++i) {
        const auto& w = v.witness[i];
        if (i) out += ",";
        out += "{\"level\":" + format_double(w.level) + ",\"point\":" + quoted(w.point) +
               ",\"a\":" + format_double(w.a) + ",\"b\":" + format_double(w.b) + "}";
    }
    out += "],\"evidence_table\":[";
    for (size_t i = 0; i < v.table.size(); ++i) {
        const auto& r = v.table[i];
        if (i) out += ",";
        out += "{\"level\":" + format_double(r.level) + ",\"C\":" + format_double(r.C) +
               ",\"max_a\":" + format_double(r.max_a) + "}";
    }
    out += "]";
    if (!v.reason.empty()) out += ",\"reason\":" + quoted(v.reason);
    if (!v.direction.empty()) out += ",\"direction\":" + quoted(v.direction);
    return out + "}";
}

ComparisonVerdict verdict_from_json(const std::string& text) {
    json j = parse_or_raise(text);
    ComparisonVerdict v;
    std::string kind = j.value("kind", std::string("inconclusive"));
    if (kind == "dominated") v.kind = ComparisonVerdict::Kind::Dominated;
    else if (kind == "not-dominated") v.kind = ComparisonVerdict::Kind::NotDominated;
    else v.kind = ComparisonVerdict::Kind::Inconclusive;
    if (j.contains("C") && !j["C"].is_null()) v.witness_C = j["C"].get<double>();
    for (const json& w : j.value("witness", json::array())) {
        ComparisonVerdict::WitnessRow row;
        row.level = w.value("level", 0.0);
        row.point = w.value("point", std::string());
        row.a = w.value("a", 0.0);
        row.b = w.value("b", 0.0);
        v.witness.push_back(std::move(row));
    }
    for (const json& r : j.value("evidence_table", json::array()))
        v.table.push_back({r.value("level", 0.0), r.value("C", 0.0), r.value("max_a", 0.0)});
    v.reason = j.value("reason", std::string());
    v.direction = j.value("direction", std::string());
    return v;
}

std::string class_label_to_json(const ClassLabel& c) {
    std::string out = "{\"label\":" + quoted(c.name()) + ",\"evidence\":[";
    for (size_t i = 0; i < c.evidence.size(); ++i) {
        if (i) out += ",";
        out += "{\"check\":" + quoted(c.evidence[i].first) +
               ",\"verdict\":" + verdict_to_json(c.evidence[i].second) + "}";
    }
    return out + "]}";
}

std::string diag_profile_csv(const FiniteMetricSpace& s, const DiagProfile& p) {
    std::string out = "point,a,b,c\n";
    for (size_t i = 0; i < p.a.size(); ++i) {
        out += s.points[i].str();
        out += "," + format_double(p.a[i]) + "," + format_double(p.b[i]) + "," +
               format_double(p.c[i]) + "\n";
    }
    return out;
}

std::string evidence_csv(const ComparisonVerdict& v) {
    std::string out = "level,C,max_a\n";
    for (const auto& r : v.table)
        out += format_double(r.level) + "," + format_double(r.C) + "," + format_double(r.max_a) +
               "\n";
    return out;
}

} // namespace coarse
