#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "cells.hpp"
#include "errors.hpp"
#include "types.hpp"

namespace sweep1d {

/// Forward-in-time, central-in-space update for the heat equation.
inline double heat_step(double left, double center, double right, double fo) {
    return center + fo * (left - 2.0 * center + right);
}

/// sign(a)*min(|a|,|b|) when a and b share a sign, otherwise 0.
/// NaN operands fall through the sign test and give 0.
inline double minmod(double a, double b) {
    if (a * b > 0.0) {
        return std::abs(a) < std::abs(b) ? a : b;
    }
    return 0.0;
}

/// Ideal-gas pressure from a conserved triple.
double pressure(const Cons& q, double gamma);

/// Ratio of adjacent pressure differences, (p_center - p_left) / (p_right - p_center).
/// A vanishing denominator returns the NaN sentinel, which zeroes any
/// minmod-limited slope built from it.
inline double pressure_ratio_value(double p_left, double p_center, double p_right) {
    const double den = p_right - p_center;
    const double scale = std::max(std::abs(p_center), std::abs(p_right));
    if (std::abs(den) <= 1e-14 * scale) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return (p_center - p_left) / den;
}

constexpr bool pressure_ratio_is_degenerate(double pr) { return pr != pr; }

/// Per-component minmod of an interface difference and its ratio-scaled image.
/// `scale` carries the pressure-ratio smoothness information, so a cell's
/// limited slope needs only the one state difference available in a
/// three-point window.
inline Cons limited_slope(const Cons& d, double scale) {
    return {minmod(d.rho, scale * d.rho),
            minmod(d.mom, scale * d.mom),
            minmod(d.ene, scale * d.ene)};
}

Cons physical_flux(const Cons& q, double p);

/// Roe-averaged |u| + c, the dissipation signal speed at an interface.
double roe_signal_speed(const Cons& ql, const Cons& qr, double gamma);

/// Reconstructed interface flux between a left and right cell. `pr_left` is
/// the left cell's stored pressure ratio (its slope scales the forward
/// difference), `pr_right` the right cell's (its slope scales the backward
/// difference, hence the reciprocal).
Cons interface_flux(const Cons& ql, const Cons& qr, double pr_left, double pr_right, double gamma);

/// One flux substep on a three-point window whose states and pressure ratios
/// are supplied explicitly. Returns base - factor_dtdx * (F_right - F_left).
struct EulerWindow {
    Cons qm1, q0, qp1;
    double pr_m1 = 0.0, pr_0 = 0.0, pr_p1 = 0.0;
};
Cons euler_flux_update(const EulerWindow& win, double gamma, double factor_dtdx, const Cons& base);

/// Which kernel a substep counter selects.
enum class SubstepKind { HeatStep, PressureRatio, Predictor, Corrector };

/// Dispatch by counter mod S. Counters are 1-based; odd Euler-lengthening
/// counters are pressure-ratio substeps, counters = 2 (mod 4) the half-step
/// predictor and = 0 (mod 4) the corrector that completes the time step.
SubstepKind classify_substep(const EquationSpec& spec, long counter);

// ---------------------------------------------------------------------------
// Record-level substeps. Each writes exactly one slot of the center cell and
// reads nothing outside the stencil half-width.
// ---------------------------------------------------------------------------

/// Store the pressure ratio of cells[i] computed from the `slot` states of its
/// three-point window.
void pressure_ratio_substep(EulerCell* cells, std::ptrdiff_t i, int slot, double gamma);

/// Flux substep of the lengthening pipeline at 1-based counter `c` (even).
void euler_flux_substep(EulerCell* cells, std::ptrdiff_t i, long counter, const PhysParams& phys);

/// Fused substep of the flattening pipeline: pressure ratios are recomputed
/// inline from the five-point window instead of being carried in the record.
/// `final_stage` false selects the predictor, true the corrector.
Cons flattened_euler_step(const FlatEulerCell* window_center, bool final_stage, const PhysParams& phys);
void flattened_euler_substep(FlatEulerCell* cells, std::ptrdiff_t i, long counter, const PhysParams& phys);

/// Heat substep: counter parity picks the slot pair.
void heat_substep(HeatCell* cells, std::ptrdiff_t i, long counter, const PhysParams& phys);

// ---------------------------------------------------------------------------
// Model policies binding a cell type to its update, initialization and
// extraction rules. The decomposition engines are written against these.
// ---------------------------------------------------------------------------

struct HeatModel {
    using Cell = HeatCell;
    static constexpr Equation equation = Equation::Heat;
    static constexpr int substeps = 1;
    static constexpr int half_width = 1;
    static constexpr int values_per_point = 1;
    static constexpr int shadow_lanes = 2; // T0, T1

    static void apply(Cell* cells, std::ptrdiff_t i, long counter, const PhysParams& phys) {
        heat_substep(cells, i, counter, phys);
    }
    static Cell make_cell(const double* v) { return Cell{{v[0], v[0]}}; }
    static void extract(const Cell& c, long final_counter, double* out) {
        out[0] = c.T[final_counter & 1];
    }
    static void perturb_one_ulp(Cell& c, long counter) {
        double& v = c.T[counter & 1];
        v = std::nextafter(v, std::numeric_limits<double>::infinity());
    }
};

struct EulerLenModel {
    using Cell = EulerCell;
    static constexpr Equation equation = Equation::Euler;
    static constexpr int substeps = 4;
    static constexpr int half_width = 1;
    static constexpr int values_per_point = 3;
    static constexpr int shadow_lanes = 3; // Q0, Q1, Pr

    static void apply(Cell* cells, std::ptrdiff_t i, long counter, const PhysParams& phys) {
        if (counter & 1) {
            pressure_ratio_substep(cells, i, (counter & 3) == 1 ? 0 : 1, phys.gamma);
        } else {
            euler_flux_substep(cells, i, counter, phys);
        }
    }
    static Cell make_cell(const double* v) {
        Cell c;
        c.Q[0] = c.Q[1] = Cons{v[0], v[1], v[2]};
        c.Pr = 0.0;
        return c;
    }
    static void extract(const Cell& c, long, double* out) {
        out[0] = c.Q[0].rho;
        out[1] = c.Q[0].mom;
        out[2] = c.Q[0].ene;
    }
    static void perturb_one_ulp(Cell& c, long counter) {
        double& v = (counter & 1) ? c.Pr : c.Q[(counter & 3) == 2 ? 1 : 0].rho;
        v = std::nextafter(v, std::numeric_limits<double>::infinity());
    }
};

struct EulerFlatModel {
    using Cell = FlatEulerCell;
    static constexpr Equation equation = Equation::Euler;
    static constexpr int substeps = 2;
    static constexpr int half_width = 2;
    static constexpr int values_per_point = 3;
    static constexpr int shadow_lanes = 2; // Q0, Q1

    static void apply(Cell* cells, std::ptrdiff_t i, long counter, const PhysParams& phys) {
        flattened_euler_substep(cells, i, counter, phys);
    }
    static Cell make_cell(const double* v) {
        Cell c;
        c.Q[0] = c.Q[1] = Cons{v[0], v[1], v[2]};
        return c;
    }
    static void extract(const Cell& c, long, double* out) {
        out[0] = c.Q[0].rho;
        out[1] = c.Q[0].mom;
        out[2] = c.Q[0].ene;
    }
    static void perturb_one_ulp(Cell& c, long counter) {
        double& v = c.Q[(counter & 1) ? 1 : 0].rho;
        v = std::nextafter(v, std::numeric_limits<double>::infinity());
    }
};

/// Invoke `fn` with the model type matching (equation, method).
template <class Fn> decltype(auto) with_model(Equation eq, Method method, Fn&& fn) {
    if (eq == Equation::Heat) {
        return fn(HeatModel{}); // both methods coincide for a single 3-point substep
    }
    if (method == Method::Lengthening) {
        return fn(EulerLenModel{});
    }
    return fn(EulerFlatModel{});
}

} // namespace sweep1d
