#pragma once

#include <cstddef>
#include <string>

#include "types.hpp"

namespace sweep1d {

/// One engine launch: grid, decomposition, run length, physics and the
/// communication cost model.
struct LaunchConfig {
    Equation equation = Equation::Heat;
    Method method = Method::Lengthening;
    Scheme scheme = Scheme::Swept;
    std::size_t grid_size = 1024; // n
    std::size_t block_width = 32; // w, points per domain of dependence
    int ranks = 2;                // R
    int work_factor = 0;          // WF, blocks-per-share ratio of the fat rank
    long steps = 50;              // T
    std::string initial;          // empty = per-equation default
    Mode mode = Mode::VirtualTime;
    PhysParams phys;
    TransportParams transport;

    EquationSpec spec() const { return make_spec(equation, method); }
    std::string initial_or_default() const;

    /// Shares the total block count divides into: R - 1 + WF with a fat rank,
    /// R without one.
    int shares() const { return work_factor > 0 ? ranks - 1 + work_factor : ranks; }

    /// Throws InvalidConfig naming the violated constraint. The serial
    /// reference solver skips the decomposition constraints (`partitioned`
    /// false): it needs only a grid and physics.
    void validate(bool partitioned = true) const;

    /// Fills derived physics (Euler dt/dx from the CFL number at the initial
    /// condition). Call once before running engines.
    void finalize(bool partitioned = true);
};

/// Parse `key=value` lines (# comments, blank lines allowed) into `cfg`.
/// Unknown keys throw InvalidConfig.
void apply_config_file(LaunchConfig& cfg, const std::string& path);
void apply_config_entry(LaunchConfig& cfg, const std::string& key, const std::string& value);

} // namespace sweep1d
