#include "coarse/point_label.hpp"

#include <algorithm>

#include "coarse/errors.hpp"
#include "coarse/util.hpp"

namespace coarse {
namespace words {

bool is_letter(char c) { return c == 'a' || c == 'A' || c == 'b' || c == 'B'; }

char letter_inverse(char c) {
    switch (c) {
        case 'a': return 'A';
        case 'A': return 'a';
        case 'b': return 'B';
        case 'B': return 'b';
    }
    raise(IssueCode::ParseError, std::string("bad generator letter '") + c + "'");
}

bool is_reduced(const std::string& w) {
    for (char c : w)
        if (!is_letter(c)) return false;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i + 1] == letter_inverse(w[i])) return false;
    return true;
}

std::string reduce(const std::string& w) {
    std::string out;
    out.reserve(w.size());
    for (char c : w) {
        if (!is_letter(c)) raise(IssueCode::ParseError, "bad letter in word: " + w);
        if (!out.empty() && out.back() == letter_inverse(c))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

std::string inverse(const std::string& w) {
    std::string out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(letter_inverse(*it));
    return out;
}

std::string concat(const std::string& u, const std::string& v) { return reduce(u + v); }

int distance(const std::string& u, const std::string& v) {
    size_t k = 0;
    while (k < u.size() && k < v.size() && u[k] == v[k]) ++k;
    return static_cast<int>(u.size() + v.size() - 2 * k);
}

} // namespace words

PointLabel PointLabel::free_word(std::string w) {
    if (!words::is_reduced(w)) raise(IssueCode::ParseError, "word is not reduced: " + w);
    PointLabel p;
    p.kind = Kind::FreeWord;
    p.word = std::move(w);
    return p;
}

PointLabel PointLabel::lattice(std::vector<long long> c) {
    PointLabel p;
    p.kind = Kind::Lattice;
    p.coords = std::move(c);
    return p;
}

PointLabel PointLabel::ray_param(int ray, double t) {
    if (ray < 1 || t <= 0.0)
        raise(IssueCode::ParamOutOfRange, "ray point needs ray >= 1 and t > 0");
    PointLabel p;
    p.kind = Kind::RayParam;
    p.ray = ray;
    p.t = t;
    return p;
}

PointLabel PointLabel::origin() {
    PointLabel p;
    p.kind = Kind::RayParam;
    p.ray = 0;
    p.t = 0.0;
    return p;
}

PointLabel PointLabel::seq(long long n) {
    if (n < 1) raise(IssueCode::ParamOutOfRange, "sequence index must be >= 1");
    PointLabel p;
    p.kind = Kind::SeqIndex;
    p.n = n;
    return p;
}

PointLabel PointLabel::planar(double x, double y) {
    PointLabel p;
    p.kind = Kind::Planar;
    p.x = x;
    p.y = y;
    return p;
}

PointLabel PointLabel::anon(long long id) {
    PointLabel p;
    p.kind = Kind::Anon;
    p.n = id;
    return p;
}

std::string PointLabel::str() const {
    switch (kind) {
        case Kind::FreeWord: return word.empty() ? "e" : word;
        case Kind::Lattice: {
            std::string s = "(";
            for (size_t i = 0; i < coords.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(coords[i]);
            }
            return s + ")";
        }
        case Kind::RayParam:
            if (ray == 0) return "O";
            return "r" + std::to_string(ray) + "@" + format_double(t);
        case Kind::SeqIndex: return "x" + std::to_string(n);
        case Kind::Planar: return "(" + format_double(x) + "," + format_double(y) + ")";
        case Kind::Anon: return "#" + std::to_string(n);
    }
    return "?";
}

} // namespace coarse
