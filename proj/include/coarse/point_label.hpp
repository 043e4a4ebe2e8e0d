#pragma once

#include <string>
#include <vector>

namespace coarse {

// Reduced words over {a, a^-1, b, b^-1}, encoded as strings over "aAbB"
// (uppercase = inverse letter).
namespace words {

bool is_letter(char c);
char letter_inverse(char c);
bool is_reduced(const std::string& w);

// Free reduction: repeatedly cancels adjacent inverse pairs.
std::string reduce(const std::string& w);

// Inverse of a reduced word (reverse, invert letters).
std::string inverse(const std::string& w);

// Reduced product uv.
std::string concat(const std::string& u, const std::string& v);

// Word distance |u^-1 v| for reduced u, v. Equals |u| + |v| - 2*lcp(u, v);
// the explicit concat-and-reduce route is kept in the tests as an oracle.
int distance(const std::string& u, const std::string& v);

} // namespace words

// A tagged point description. Generators attach these so that spaces stay
// self-describing through serialization; the math only ever reads distances.
struct PointLabel {
    enum class Kind { FreeWord, Lattice, RayParam, SeqIndex, Planar, Anon };

    Kind kind = Kind::Anon;
    std::string word;                    // FreeWord: reduced
    std::vector<long long> coords;       // Lattice
    int ray = 0;                         // RayParam: ray index >= 1, or 0 for the origin
    double t = 0.0;                      // RayParam: parameter > 0 unless origin
    long long n = 0;                     // SeqIndex (>= 1) / Anon id
    double x = 0.0, y = 0.0;             // Planar

    static PointLabel free_word(std::string w);
    static PointLabel lattice(std::vector<long long> c);
    static PointLabel ray_param(int ray, double t);
    static PointLabel origin();
    static PointLabel seq(long long n);
    static PointLabel planar(double x, double y);
    static PointLabel anon(long long id);

    bool is_origin() const { return kind == Kind::RayParam && ray == 0; }

    std::string str() const;
    bool operator==(const PointLabel& other) const = default;
};

} // namespace coarse
