#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"
#include "engine.hpp"
#include "transport.hpp"

namespace sweep1d {

/// One timed engine run: config echo, average time per time step and the
/// communication counters. Setup cost is reported separately and never enters
/// the average.
struct TimingRecord {
    Equation equation = Equation::Heat;
    Method method = Method::Lengthening;
    Scheme scheme = Scheme::Classic;
    std::size_t grid_size = 0;
    std::size_t block_width = 0;
    int work_factor = 0;
    int ranks = 0;
    long steps = 0;
    Mode mode = Mode::VirtualTime;
    double avg_us_per_step = 0.0;
    double setup_us = 0.0;
    CommStats stats;
};

/// Power-law fit y = A * x^b of time against grid size.
struct FitResult {
    double A = 0.0;
    double b = 0.0;
    double r_squared = 0.0;
};

/// Run the configured engine and average its loop time (virtual clock in
/// virtual mode, wall time otherwise) over the time steps.
TimingRecord measure(const LaunchConfig& cfg);

/// Assemble a record from an already-completed run.
TimingRecord make_record(const LaunchConfig& cfg, const RunResult& result);

/// time_classic / time_swept.
double speedup(double time_classic, double time_swept);

/// time_lengthening / time_flattening.
double flattening_speedup(double time_lengthening, double time_flattening);

/// Least-squares fit of log(time) against log(n). Throws DegenerateFit when
/// all n coincide; requires at least 3 positive points.
FitResult power_law_fit(const std::vector<std::pair<double, double>>& points);

/// Minimum avg_us_per_step; ties broken by smaller block width, then smaller
/// work factor.
const TimingRecord& best_config(const std::vector<TimingRecord>& records);

} // namespace sweep1d
