#ifndef LAXFORGE_HIERARCHY_CACHE_HPP
#define LAXFORGE_HIERARCHY_CACHE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>

#include <laxforge/riccati.hpp>

namespace laxforge
{

// Process-wide memo of Riccati solutions. Solving happens under the lock, so
// each (order, mode) is computed exactly once.
class RiccatiCache
{
public:
    static RiccatiCache &instance()
    {
        static RiccatiCache cache;
        return cache;
    }

    std::shared_ptr<const RiccatiSolution> w_z(int order, Mode mode)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto &slot = w_z_[{order, mode}];
        if (!slot) slot = std::make_shared<const RiccatiSolution>(solve_w_z(order, mode));
        return slot;
    }

    std::shared_ptr<const GammaSolution> gamma(int order, GammaKind which, Mode mode)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto &slot = gamma_[{order, which, mode}];
        if (!slot) slot = std::make_shared<const GammaSolution>(solve_gamma(order, which, mode));
        return slot;
    }

private:
    RiccatiCache() = default;

    std::mutex mutex_;
    std::map<std::pair<int, Mode>, std::shared_ptr<const RiccatiSolution>> w_z_;
    std::map<std::tuple<int, GammaKind, Mode>, std::shared_ptr<const GammaSolution>> gamma_;
};

} // namespace laxforge

#endif
