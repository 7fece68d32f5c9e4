#include "sweep1d/partition.hpp"

#include <cmath>

#include "sweep1d/errors.hpp"
#include "sweep1d/kernels.hpp"

namespace sweep1d {

Partition make_partition(const LaunchConfig& cfg) {
    cfg.validate();
    Partition p;
    p.block_width = cfg.block_width;
    const int r = cfg.ranks;
    const std::size_t total_blocks = cfg.grid_size / cfg.block_width;
    const std::size_t per_share = total_blocks / static_cast<std::size_t>(cfg.shares());

    p.blocks.assign(static_cast<std::size_t>(r), per_share);
    if (cfg.work_factor > 0) {
        p.blocks[0] = per_share * static_cast<std::size_t>(cfg.work_factor);
    }
    p.start_index.resize(static_cast<std::size_t>(r));
    std::size_t start = 0;
    for (int i = 0; i < r; ++i) {
        p.start_index[i] = start;
        start += p.blocks[i] * p.block_width;
    }
    p.left.resize(static_cast<std::size_t>(r));
    p.right.resize(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        p.left[i] = (i + r - 1) % r;
        p.right[i] = (i + 1) % r;
    }
    return p;
}

ArrayExtents working_array_extents(std::size_t n_blocks, std::size_t w, const EquationSpec& spec) {
    if (w < 4 || (w & 1)) {
        throw InvalidConfig("working array requires even block width >= 4");
    }
    const std::size_t h = static_cast<std::size_t>(spec.stencil_half_width);
    const std::size_t owned = n_blocks * w;
    return ArrayExtents{owned + w / 2 + 2 * h, owned + 2 * h, h};
}

std::size_t swept_buffer_cells(std::size_t w, const EquationSpec& spec) {
    return w / 2 + static_cast<std::size_t>(spec.stencil_half_width);
}

namespace {

// sin(2*pi*j/n) with quarter-wave folding so the grid's symmetry points come
// out exact (0 at 0 and n/2, +-1 at n/4 and 3n/4 when n is a multiple of 4).
double sine_sample(std::size_t j, std::size_t n) {
    std::size_t k = j % n;
    double sign = 1.0;
    if (2 * k >= n) {
        sign = -1.0;
        k -= n / 2;
    }
    const std::size_t folded = (4 * k > n) ? (n / 2 - k) : k;
    return sign * std::sin(2.0 * M_PI * static_cast<double>(folded) / static_cast<double>(n));
}

} // namespace

std::vector<double> initial_condition(const std::string& id, std::size_t n, const EquationSpec& spec,
                                      double gamma) {
    std::vector<double> out;
    if (spec.equation == Equation::Heat) {
        out.resize(n);
        if (id == "heat-sine") {
            for (std::size_t j = 0; j < n; ++j) out[j] = sine_sample(j, n);
        } else if (id == "uniform") {
            for (std::size_t j = 0; j < n; ++j) out[j] = 1.0;
        } else {
            throw UnknownInitialCondition("initial condition '" + id + "' unknown for heat");
        }
        return out;
    }

    out.resize(3 * n);
    auto fill = [&](std::size_t j, double rho, double u, double p) {
        out[3 * j] = rho;
        out[3 * j + 1] = rho * u;
        out[3 * j + 2] = p / (gamma - 1.0) + 0.5 * rho * u * u;
    };
    if (id == "euler-sod-periodic") {
        for (std::size_t j = 0; j < n; ++j) {
            if (2 * j < n) {
                fill(j, 1.0, 0.0, 1.0);
            } else {
                fill(j, 0.125, 0.0, 0.1);
            }
        }
    } else if (id == "uniform") {
        for (std::size_t j = 0; j < n; ++j) fill(j, 1.0, 0.0, 1.0);
    } else {
        throw UnknownInitialCondition("initial condition '" + id + "' unknown for euler");
    }
    return out;
}

double max_signal_speed(const std::vector<double>& primaries, double gamma) {
    double best = 0.0;
    for (std::size_t j = 0; j + 2 < primaries.size(); j += 3) {
        const Cons q{primaries[j], primaries[j + 1], primaries[j + 2]};
        const double p = pressure(q, gamma);
        const double u = q.mom / q.rho;
        best = std::max(best, std::abs(u) + std::sqrt(gamma * p / q.rho));
    }
    return best;
}

} // namespace sweep1d
