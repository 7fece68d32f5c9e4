#include "sweep1d/perf.hpp"

#include <cmath>
#include <stdexcept>

#include "sweep1d/errors.hpp"

namespace sweep1d {

TimingRecord make_record(const LaunchConfig& cfg, const RunResult& result) {
    TimingRecord rec;
    rec.equation = cfg.equation;
    rec.method = cfg.method;
    rec.scheme = cfg.scheme;
    rec.grid_size = cfg.grid_size;
    rec.block_width = cfg.block_width;
    rec.work_factor = cfg.work_factor;
    rec.ranks = cfg.ranks;
    rec.steps = cfg.steps;
    rec.mode = cfg.mode;
    const double loop_seconds =
        cfg.mode == Mode::VirtualTime ? result.timing.virtual_seconds : result.timing.loop_seconds;
    rec.avg_us_per_step = cfg.steps > 0 ? loop_seconds * 1e6 / static_cast<double>(cfg.steps) : 0.0;
    rec.setup_us = result.timing.setup_seconds * 1e6;
    rec.stats = result.stats;
    return rec;
}

TimingRecord measure(const LaunchConfig& cfg) {
    const RunResult result = run(cfg);
    return make_record(cfg, result);
}

double speedup(double time_classic, double time_swept) {
    return time_classic / time_swept;
}

double flattening_speedup(double time_lengthening, double time_flattening) {
    return time_lengthening / time_flattening;
}

FitResult power_law_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) {
        throw std::invalid_argument("power_law_fit requires at least 3 points");
    }
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0)) {
            throw std::invalid_argument("power_law_fit requires positive samples");
        }
        sx += std::log(x);
        sy += std::log(y);
    }
    const double mx = sx / static_cast<double>(points.size());
    const double my = sy / static_cast<double>(points.size());
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mx;
        const double dy = std::log(y) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw DegenerateFit("power_law_fit: all grid sizes equal");
    }
    FitResult fit;
    fit.b = sxy / sxx;
    fit.A = std::exp(my - fit.b * mx);
    if (syy == 0.0) {
        fit.r_squared = 1.0; // constant data, exactly reproduced by b = 0
    } else {
        double ss_res = 0.0;
        for (const auto& [x, y] : points) {
            const double pred = (my - fit.b * mx) + fit.b * std::log(x);
            const double res = std::log(y) - pred;
            ss_res += res * res;
        }
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

const TimingRecord& best_config(const std::vector<TimingRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("best_config over an empty record set");
    }
    const TimingRecord* best = &records.front();
    for (const auto& r : records) {
        const bool better = r.avg_us_per_step < best->avg_us_per_step ||
                            (r.avg_us_per_step == best->avg_us_per_step &&
                             (r.block_width < best->block_width ||
                              (r.block_width == best->block_width && r.work_factor < best->work_factor)));
        if (better) best = &r;
    }
    return *best;
}

} // namespace sweep1d
