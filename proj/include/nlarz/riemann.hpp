#ifndef NLARZ_RIEMANN_HPP
#define NLARZ_RIEMANN_HPP

#include <utility>

#include "nlarz/model.hpp"

namespace nlarz {

struct ConservedState {
    double rho; // [veh/km]
    double y;   // [veh/km * m/s]
};

struct InterfaceFlux {
    double f_rho;
    double f_y;
};

struct WaveSpeeds {
    double lambda1; // v - rho*h'(rho), the slow (genuinely nonlinear) wave
    double lambda2; // v, the contact wave; lambda1 <= lambda2 always
};

/** Local pressure data at a state. For the single-class model both come
 * from the state's own density; the mixed stepper evaluates them on the
 * frozen total density instead. */
struct LocalPressure {
    double h;  // h value [m/s]
    double dh; // clamped h' [(m/s)/(veh/km)]
};

LocalPressure local_pressure(const PressureLaw& pl, double rho);

WaveSpeeds characteristic_speeds(const ConservedState& u, const LocalPressure& p);
WaveSpeeds characteristic_speeds(const ConservedState& u, const PressureLaw& pl);

InterfaceFlux physical_flux(const ConservedState& u, const LocalPressure& p);
InterfaceFlux physical_flux(const ConservedState& u, const PressureLaw& pl);

/** Davis estimates: S_L = min of the lambda1's, S_R = max of the lambda2's. */
std::pair<double, double> wave_speed_estimates(const ConservedState& l,
                                               const ConservedState& r,
                                               const PressureLaw& pl);

/** HLL interface flux: upwind when the fan lies on one side of the
 * interface, the two-wave average otherwise. A degenerate fan
 * (S_R - S_L < 1e-12) falls back to the left flux. */
InterfaceFlux hll_flux(const ConservedState& l, const LocalPressure& pl_l,
                       const ConservedState& r, const LocalPressure& pl_r);
InterfaceFlux hll_flux(const ConservedState& l, const ConservedState& r,
                       const PressureLaw& pl);

} // namespace nlarz

#endif
