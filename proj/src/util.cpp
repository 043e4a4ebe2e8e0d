#include "coarse/util.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "coarse/errors.hpp"

namespace coarse {

const char* issue_code_name(IssueCode c) {
    switch (c) {
        case IssueCode::NotFinite: return "NotFinite";
        case IssueCode::NotSquare: return "NotSquare";
        case IssueCode::NotSymmetric: return "NotSymmetric";
        case IssueCode::ZeroOffDiagonal: return "ZeroOffDiagonal";
        case IssueCode::TriangleViolation: return "TriangleViolation";
        case IssueCode::NonPositiveCross: return "NonPositiveCross";
        case IssueCode::MixedTriangleViolation: return "MixedTriangleViolation";
        case IssueCode::EmptySubset: return "EmptySubset";
        case IssueCode::BaseMismatch: return "BaseMismatch";
        case IssueCode::DistortionExceedsC: return "DistortionExceedsC";
        case IssueCode::ValidationFailed: return "ValidationFailed";
        case IssueCode::GridEmpty: return "GridEmpty";
        case IssueCode::LevelsTooFew: return "LevelsTooFew";
        case IssueCode::NotSelfadjoint: return "NotSelfadjoint";
        case IssueCode::NearConditionViolated: return "NearConditionViolated";
        case IssueCode::WitnessInvalid: return "WitnessInvalid";
        case IssueCode::RadiusTooLarge: return "RadiusTooLarge";
        case IssueCode::TooManyPoints: return "TooManyPoints";
        case IssueCode::IndexTooLarge: return "IndexTooLarge";
        case IssueCode::UnknownExperiment: return "UnknownExperiment";
        case IssueCode::ParamOutOfRange: return "ParamOutOfRange";
        case IssueCode::UnsupportedFormat: return "UnsupportedFormat";
        case IssueCode::UsageError: return "UsageError";
        case IssueCode::FileNotFound: return "FileNotFound";
        case IssueCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

std::string Issue::str() const {
    std::string s = issue_code_name(code);
    if (indices[0] >= 0) {
        s += " at (";
        s += std::to_string(indices[0]);
        if (indices[1] >= 0) s += "," + std::to_string(indices[1]);
        if (indices[2] >= 0) s += "," + std::to_string(indices[2]);
        s += ")";
    }
    if (kind != 0) s += " kind " + std::to_string(kind);
    if (slack != 0.0) s += " slack " + format_double(slack);
    if (!detail.empty()) s += ": " + detail;
    return s;
}

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("COARSE_DOUBLE_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body,
                  int workers) {
    if (workers <= 0) workers = worker_count();
    if (n <= 0) return;
    if (workers == 1 || n == 1) {
        body(0, n);
        return;
    }
    if (workers > n) workers = static_cast<int>(n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    std::int64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::int64_t lo = w * chunk;
        std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_int(long long v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", v);
    return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(IssueCode::FileNotFound, "cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            raise(IssueCode::FileNotFound, "write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        raise(IssueCode::FileNotFound, "rename failed: " + path);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(IssueCode::FileNotFound, "no such file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace coarse
