#include "coarse/scale_family.hpp"

#include <algorithm>
#include <cmath>

#include "coarse/errors.hpp"

namespace coarse {

ScaleFamily ScaleFamily::from_subsets(DoubleMetric ambient, std::vector<double> params,
                                      std::vector<std::vector<int>> levels) {
    if (levels.size() < 2) raise(IssueCode::LevelsTooFew, "a scale family needs >= 2 levels");
    if (params.size() != levels.size())
        raise(IssueCode::ParamOutOfRange, "one parameter per level required");
    for (size_t i = 0; i + 1 < params.size(); ++i)
        if (!(params[i] < params[i + 1]))
            raise(IssueCode::ParamOutOfRange, "level parameters must increase");
    const int n = ambient.size();
    for (auto& lv : levels) {
        std::sort(lv.begin(), lv.end());
        lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
        if (lv.empty()) raise(IssueCode::EmptySubset, "empty level subset");
        if (lv.front() < 0 || lv.back() >= n)
            raise(IssueCode::ParamOutOfRange, "level index out of range");
    }
    for (size_t i = 0; i + 1 < levels.size(); ++i)
        if (!std::includes(levels[i + 1].begin(), levels[i + 1].end(), levels[i].begin(),
                           levels[i].end()))
            raise(IssueCode::ParamOutOfRange, "levels must be nested");
    ScaleFamily f;
    f.ambient = std::move(ambient);
    f.params = std::move(params);
    f.levels = std::move(levels);
    return f;
}

ScaleFamily ScaleFamily::prefixes(DoubleMetric ambient, const std::vector<double>& fractions) {
    const int n = ambient.size();
    std::vector<double> params;
    std::vector<std::vector<int>> levels;
    for (double f : fractions) {
        int m = std::max(1, static_cast<int>(std::lround(f * n)));
        m = std::min(m, n);
        std::vector<int> lv(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) lv[static_cast<size_t>(i)] = i;
        // fractions parameterize the chain; prefix counts can collide on
        // small spaces
        params.push_back(f);
        levels.push_back(std::move(lv));
    }
    return from_subsets(std::move(ambient), std::move(params), std::move(levels));
}

ScaleFamily ScaleFamily::radial(DoubleMetric ambient, int basepoint,
                                const std::vector<double>& radii) {
    const int n = ambient.size();
    if (basepoint < 0 || basepoint >= n)
        raise(IssueCode::ParamOutOfRange, "basepoint out of range");
    std::vector<std::vector<int>> levels;
    for (double r : radii) {
        std::vector<int> lv;
        for (int i = 0; i < n; ++i)
            if (ambient.base.d(i, basepoint) <= r) lv.push_back(i);
        levels.push_back(std::move(lv));
    }
    return from_subsets(std::move(ambient), radii, std::move(levels));
}

} // namespace coarse
