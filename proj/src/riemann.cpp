#include "nlarz/riemann.hpp"

#include <algorithm>

#include "nlarz/grid.hpp"

namespace nlarz {

LocalPressure local_pressure(const PressureLaw& pl, double rho) {
    return LocalPressure{pressure(pl, rho), pressure_derivative_clamped(pl, rho)};
}

WaveSpeeds characteristic_speeds(const ConservedState& u, const LocalPressure& p) {
    double v = std::max(u.y / u.rho - p.h, 0.0);
    return WaveSpeeds{v - u.rho * p.dh, v};
}

WaveSpeeds characteristic_speeds(const ConservedState& u, const PressureLaw& pl) {
    return characteristic_speeds(u, local_pressure(pl, u.rho));
}

InterfaceFlux physical_flux(const ConservedState& u, const LocalPressure& p) {
    double v = std::max(u.y / u.rho - p.h, 0.0);
    return InterfaceFlux{u.rho * v, u.y * v};
}

InterfaceFlux physical_flux(const ConservedState& u, const PressureLaw& pl) {
    return physical_flux(u, local_pressure(pl, u.rho));
}

std::pair<double, double> wave_speed_estimates(const ConservedState& l,
                                               const ConservedState& r,
                                               const PressureLaw& pl) {
    WaveSpeeds wl = characteristic_speeds(l, pl);
    WaveSpeeds wr = characteristic_speeds(r, pl);
    return {std::min(wl.lambda1, wr.lambda1), std::max(wl.lambda2, wr.lambda2)};
}

InterfaceFlux hll_flux(const ConservedState& l, const LocalPressure& pl_l,
                       const ConservedState& r, const LocalPressure& pl_r) {
    // equal states short-circuit to the physical flux, keeping HLL exactly
    // consistent instead of consistent up to round-off
    if (l.rho == r.rho && l.y == r.y && pl_l.h == pl_r.h && pl_l.dh == pl_r.dh)
        return physical_flux(l, pl_l);
    WaveSpeeds wl = characteristic_speeds(l, pl_l);
    WaveSpeeds wr = characteristic_speeds(r, pl_r);
    double s_l = std::min(wl.lambda1, wr.lambda1);
    double s_r = std::max(wl.lambda2, wr.lambda2);
    if (s_l >= 0.0) return physical_flux(l, pl_l);
    if (s_r <= 0.0) return physical_flux(r, pl_r);
    if (s_r - s_l < 1e-12) return physical_flux(l, pl_l);
    InterfaceFlux fl = physical_flux(l, pl_l);
    InterfaceFlux fr = physical_flux(r, pl_r);
    double inv = 1.0 / (s_r - s_l);
    return InterfaceFlux{
        (s_r * fl.f_rho - s_l * fr.f_rho + s_l * s_r * (r.rho - l.rho)) * inv,
        (s_r * fl.f_y - s_l * fr.f_y + s_l * s_r * (r.y - l.y)) * inv};
}

InterfaceFlux hll_flux(const ConservedState& l, const ConservedState& r,
                       const PressureLaw& pl) {
    return hll_flux(l, local_pressure(pl, l.rho), r, local_pressure(pl, r.rho));
}

}  // namespace nlarz
