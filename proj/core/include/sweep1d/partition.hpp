#pragma once

#include <cstddef>
#include <vector>

#include "config.hpp"
#include "types.hpp"

namespace sweep1d {

/// Block/rank assignment over the periodic ring. Rank 0 is the fat rank when
/// the work factor is positive.
struct Partition {
    std::size_t block_width = 0;
    std::vector<std::size_t> blocks;      // per-rank block count
    std::vector<std::size_t> start_index; // per-rank global start of its owned range
    std::vector<int> left;                // ring neighbors
    std::vector<int> right;

    int ranks() const { return static_cast<int>(blocks.size()); }
    std::size_t owned_points(int rank) const { return blocks[rank] * block_width; }
};

Partition make_partition(const LaunchConfig& cfg);

/// Working-array sizing for one rank. The array holds h ghost cells on the
/// left, the owned points, and a w/2 + h exchange region on the right; the
/// initialized prefix covers owned points plus one ghost depth per side.
struct ArrayExtents {
    std::size_t length = 0;      // total cells
    std::size_t initialized = 0; // prefix filled from the initial condition
    std::size_t ghost = 0;       // left ghost depth == stencil half-width
};
ArrayExtents working_array_extents(std::size_t n_blocks, std::size_t w, const EquationSpec& spec);

/// Edge-buffer cell count for one swept pass: w/2 + h.
std::size_t swept_buffer_cells(std::size_t w, const EquationSpec& spec);

/// Deterministic initial condition sampled on the global grid; returns
/// values_per_point doubles per point (1 for heat, 3 conserved for Euler).
/// Known ids: heat-sine, euler-sod-periodic, uniform. `gamma` converts the
/// Euler states' pressures to total energy.
std::vector<double> initial_condition(const std::string& id, std::size_t n, const EquationSpec& spec,
                                      double gamma = 1.4);

/// Largest |u| + c over an Euler initial state; used to fix dt/dx from the CFL number.
double max_signal_speed(const std::vector<double>& primaries, double gamma);

} // namespace sweep1d
