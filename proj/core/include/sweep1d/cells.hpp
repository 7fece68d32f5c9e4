#pragma once

#include <cstddef>

namespace sweep1d {

/// Conserved-variable triple: density, momentum density, total energy density.
struct Cons {
    double rho = 0.0;
    double mom = 0.0;
    double ene = 0.0;

    friend Cons operator+(Cons a, Cons b) { return {a.rho + b.rho, a.mom + b.mom, a.ene + b.ene}; }
    friend Cons operator-(Cons a, Cons b) { return {a.rho - b.rho, a.mom - b.mom, a.ene - b.ene}; }
    friend Cons operator*(double s, Cons q) { return {s * q.rho, s * q.mom, s * q.ene}; }
};

/// Heat-equation record: two temperature slots read/written alternately.
struct HeatCell {
    double T[2] = {0.0, 0.0};
};

/// Euler record for the lengthening (atomic) method: full-step and midpoint
/// conserved states plus the stored pressure ratio the limiter consumes.
struct EulerCell {
    Cons Q[2];
    double Pr = 0.0;
};

/// Euler record for the flattening method: the pressure ratio is folded into
/// the fused step, so only the two conserved states are carried.
struct FlatEulerCell {
    Cons Q[2];
};

static_assert(sizeof(HeatCell) == 2 * sizeof(double));
static_assert(sizeof(EulerCell) == 7 * sizeof(double));
static_assert(sizeof(FlatEulerCell) == 6 * sizeof(double));

} // namespace sweep1d
