#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace coarse {

// Additive tolerance for all triangle-type checks. Distances carry full double
// precision; the separations the analysis cares about are O(1) or divergent,
// far above this slack.
inline constexpr double kTriangleTol = 1e-9;

// Worker count: COARSE_DOUBLE_THREADS caps it, default is available parallelism.
int worker_count();

// Static-partition parallel loop over [0, n). Falls back to a plain loop for a
// single worker. Chunks are deterministic; callers must only write disjoint
// output cells so the result never depends on the partition.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body,
                  int workers = 0);

// splitmix64: small deterministic generator used for seeded sampling.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Number formatting shared by JSON/CSV writers: 17 significant digits, enough
// to round-trip any double.
std::string format_double(double v);

std::string format_int(long long v);

// Writes content to path atomically (temp file in the same directory, then rename).
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace coarse
