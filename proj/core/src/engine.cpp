#include "sweep1d/engine.hpp"

#include "sweep1d/detail/engines_impl.hpp"
#include "sweep1d/errors.hpp"

namespace sweep1d {

std::vector<double> gather_global(const std::vector<RankSlice>& slices, std::size_t n) {
    if (slices.empty()) {
        throw InvalidConfig("gather_global: no slices");
    }
    const long counter = slices.front().counter;
    const int vpp = slices.front().values_per_point;
    std::size_t covered = 0;
    for (const auto& s : slices) {
        if (s.counter != counter) {
            throw PhaseSkew("gather_global: slices at substep " + std::to_string(s.counter) +
                            " and " + std::to_string(counter));
        }
        covered += s.values.size() / static_cast<std::size_t>(vpp);
    }
    if (covered != n) {
        throw InvalidConfig("gather_global: slices cover " + std::to_string(covered) +
                            " points of " + std::to_string(n));
    }
    std::vector<double> out(n * static_cast<std::size_t>(vpp));
    for (const auto& s : slices) {
        const std::size_t points = s.values.size() / static_cast<std::size_t>(vpp);
        for (std::size_t i = 0; i < points; ++i) {
            const std::size_t g = (s.global_start + i) % n;
            for (int v = 0; v < vpp; ++v) {
                out[g * static_cast<std::size_t>(vpp) + static_cast<std::size_t>(v)] =
                    s.values[i * static_cast<std::size_t>(vpp) + static_cast<std::size_t>(v)];
            }
        }
    }
    return out;
}

RunResult run(const LaunchConfig& cfg, const RunOptions& opts, DebugSink* sink) {
    LaunchConfig local = cfg;
    local.finalize();
    return with_model(local.equation, local.method, [&](auto model) {
        using Model = decltype(model);
        return detail::run_decomposed<Model>(local, opts, sink);
    });
}

} // namespace sweep1d
