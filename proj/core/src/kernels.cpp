#include "sweep1d/kernels.hpp"

#include <string>

namespace sweep1d {

EquationSpec make_spec(Equation eq, Method method) {
    EquationSpec s;
    s.equation = eq;
    s.method = method;
    if (eq == Equation::Heat) {
        s.substeps_per_step = 1;
        s.stencil_half_width = 1;
        s.state_slots = 2;
    } else if (method == Method::Lengthening) {
        s.substeps_per_step = 4;
        s.stencil_half_width = 1;
        s.state_slots = 7;
    } else {
        s.substeps_per_step = 2;
        s.stencil_half_width = 2;
        s.state_slots = 6;
    }
    return s;
}

double pressure(const Cons& q, double gamma) {
    if (!(q.rho > 0.0)) {
        throw NonPhysicalState("pressure: non-positive density " + std::to_string(q.rho));
    }
    const double p = (gamma - 1.0) * (q.ene - 0.5 * q.mom * q.mom / q.rho);
    if (!(p > 0.0)) {
        throw NonPhysicalState("pressure: non-positive pressure " + std::to_string(p));
    }
    return p;
}

Cons physical_flux(const Cons& q, double p) {
    const double u = q.mom / q.rho;
    return {q.mom, q.mom * u + p, (q.ene + p) * u};
}

double roe_signal_speed(const Cons& ql, const Cons& qr, double gamma) {
    const double srl = std::sqrt(ql.rho);
    const double srr = std::sqrt(qr.rho);
    const double inv = 1.0 / (srl + srr);
    const double u = (srl * (ql.mom / ql.rho) + srr * (qr.mom / qr.rho)) * inv;
    const double e = (srl * (ql.ene / ql.rho) + srr * (qr.ene / qr.rho)) * inv;
    const double p_over_rho = (gamma - 1.0) * (e - 0.5 * u * u);
    if (!(p_over_rho > 0.0)) {
        throw NonPhysicalState("roe_signal_speed: non-positive averaged pressure");
    }
    return std::abs(u) + std::sqrt(gamma * p_over_rho);
}

Cons interface_flux(const Cons& ql, const Cons& qr, double pr_left, double pr_right, double gamma) {
    const Cons d = qr - ql;
    const Cons sl = limited_slope(d, pr_left);
    const Cons sr = limited_slope(d, 1.0 / pr_right);
    const Cons recon_l = ql + 0.5 * sl;
    const Cons recon_r = qr - 0.5 * sr;
    const double pl = pressure(recon_l, gamma);
    const double pr = pressure(recon_r, gamma);
    const double lam = roe_signal_speed(recon_l, recon_r, gamma);
    const Cons favg = 0.5 * (physical_flux(recon_l, pl) + physical_flux(recon_r, pr));
    return favg - 0.5 * (lam * (recon_r - recon_l));
}

Cons euler_flux_update(const EulerWindow& win, double gamma, double factor_dtdx, const Cons& base) {
    const Cons f_left = interface_flux(win.qm1, win.q0, win.pr_m1, win.pr_0, gamma);
    const Cons f_right = interface_flux(win.q0, win.qp1, win.pr_0, win.pr_p1, gamma);
    return base - factor_dtdx * (f_right - f_left);
}

SubstepKind classify_substep(const EquationSpec& spec, long counter) {
    if (spec.equation == Equation::Heat) {
        return SubstepKind::HeatStep;
    }
    if (spec.method == Method::Lengthening) {
        const long phase = ((counter % 4) + 4) % 4;
        if (phase & 1) {
            return SubstepKind::PressureRatio;
        }
        return phase == 2 ? SubstepKind::Predictor : SubstepKind::Corrector;
    }
    const long phase = ((counter % 2) + 2) % 2;
    return phase == 1 ? SubstepKind::Predictor : SubstepKind::Corrector;
}

void pressure_ratio_substep(EulerCell* cells, std::ptrdiff_t i, int slot, double gamma) {
    const double pl = pressure(cells[i - 1].Q[slot], gamma);
    const double pc = pressure(cells[i].Q[slot], gamma);
    const double pr = pressure(cells[i + 1].Q[slot], gamma);
    cells[i].Pr = pressure_ratio_value(pl, pc, pr);
}

void euler_flux_substep(EulerCell* cells, std::ptrdiff_t i, long counter, const PhysParams& phys) {
    const bool final_stage = (counter & 3) == 0;
    const int read_slot = final_stage ? 1 : 0;
    const int write_slot = final_stage ? 0 : 1;
    const double factor = final_stage ? phys.dt_dx : 0.5 * phys.dt_dx;
    const EulerWindow win{cells[i - 1].Q[read_slot], cells[i].Q[read_slot], cells[i + 1].Q[read_slot],
                          cells[i - 1].Pr, cells[i].Pr, cells[i + 1].Pr};
    cells[i].Q[write_slot] = euler_flux_update(win, phys.gamma, factor, cells[i].Q[0]);
}

Cons flattened_euler_step(const FlatEulerCell* c, bool final_stage, const PhysParams& phys) {
    const int slot = final_stage ? 1 : 0;
    const double p_m2 = pressure(c[-2].Q[slot], phys.gamma);
    const double p_m1 = pressure(c[-1].Q[slot], phys.gamma);
    const double p_0 = pressure(c[0].Q[slot], phys.gamma);
    const double p_p1 = pressure(c[1].Q[slot], phys.gamma);
    const double p_p2 = pressure(c[2].Q[slot], phys.gamma);
    const EulerWindow win{c[-1].Q[slot], c[0].Q[slot], c[1].Q[slot],
                          pressure_ratio_value(p_m2, p_m1, p_0),
                          pressure_ratio_value(p_m1, p_0, p_p1),
                          pressure_ratio_value(p_0, p_p1, p_p2)};
    const double factor = final_stage ? phys.dt_dx : 0.5 * phys.dt_dx;
    return euler_flux_update(win, phys.gamma, factor, c[0].Q[0]);
}

void flattened_euler_substep(FlatEulerCell* cells, std::ptrdiff_t i, long counter, const PhysParams& phys) {
    const bool final_stage = (counter & 1) == 0;
    cells[i].Q[final_stage ? 0 : 1] = flattened_euler_step(cells + i, final_stage, phys);
}

void heat_substep(HeatCell* cells, std::ptrdiff_t i, long counter, const PhysParams& phys) {
    const int w = static_cast<int>(counter & 1);
    const int r = w ^ 1;
    cells[i].T[w] = heat_step(cells[i - 1].T[r], cells[i].T[r], cells[i + 1].T[r], phys.fourier);
}

} // namespace sweep1d
