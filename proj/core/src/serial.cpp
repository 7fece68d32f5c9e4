#include "sweep1d/detail/engines_impl.hpp"

namespace sweep1d {

std::vector<double> run_serial(const LaunchConfig& cfg, const RunOptions& opts, DebugSink* sink) {
    LaunchConfig local = cfg;
    local.finalize(/*partitioned=*/false);
    return with_model(local.equation, local.method, [&](auto model) {
        using Model = decltype(model);
        return detail::serial_advance<Model>(local, opts, sink);
    });
}

} // namespace sweep1d
