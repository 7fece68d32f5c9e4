#pragma once

#include <cstdint>
#include <string>

namespace sweep1d {

enum class Equation { Heat, Euler };
enum class Method { Lengthening, Flattening };
enum class Scheme { Classic, Swept };
enum class Mode { WallClock, VirtualTime };

/// Governing-equation + discretization descriptor: substep count per time
/// step, stencil half-width, and how many doubles one grid point carries.
struct EquationSpec {
    Equation equation = Equation::Heat;
    Method method = Method::Lengthening;
    int substeps_per_step = 1;  // S
    int stencil_half_width = 1; // h
    int state_slots = 2;        // doubles stored per point
};

/// (S, h, slots) for each equation/method pairing. Heat is a single 3-point
/// substep either way, so both methods coincide for it.
EquationSpec make_spec(Equation eq, Method method);

struct PhysParams {
    double fourier = 0.4; // Fo = alpha*dt/dx^2, (0, 0.5]
    double gamma = 1.4;
    double dt_dx = 0.0;   // dt/dx used by the Euler flux substeps
    double cfl = 0.4;     // sets dt_dx from the initial condition
};

struct TransportParams {
    double alpha = 0.0;        // latency, seconds per message
    double beta = 0.0;         // inverse bandwidth, seconds per byte
    double compute_cost = 1e-8; // virtual seconds per point-substep
};

std::string to_string(Equation eq);
std::string to_string(Method m);
std::string to_string(Scheme s);
std::string to_string(Mode m);

Equation equation_from_string(const std::string& s);
Method method_from_string(const std::string& s);
Scheme scheme_from_string(const std::string& s);
Mode mode_from_string(const std::string& s);

} // namespace sweep1d
