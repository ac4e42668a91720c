#ifndef NLARZ_MODEL_HPP
#define NLARZ_MODEL_HPP

namespace nlarz {

/** Piecewise-linear equilibrium speed law: constant free-flow speed below
 * rho_f, linear ramp to zero at the jam density rho_j.
 * Units: speeds in m/s, densities in veh/km throughout. */
struct FundamentalDiagram {
    double v_f = 20.0;    // free-flow speed [m/s]
    double rho_f = 10.0;  // free-flow density [veh/km]
    double rho_j = 140.0; // jam density [veh/km]

    void validate() const; // throws std::invalid_argument
};

/** Hesitation (pressure) law h(rho) = scale * sqrt((rho-rho_f)/(rho_j-rho)).
 * h has a pole at rho_j; evaluation is frozen at rho_cap() = rho_j - 0.5 so
 * the solver stays finite if a state ever reaches near-jam densities. */
struct PressureLaw {
    double scale = 8.0;   // speed scale c [m/s]
    double rho_f = 10.0;  // [veh/km]
    double rho_j = 140.0; // [veh/km]

    double rho_cap() const { return rho_j - 0.5; }
    void validate() const;
};

struct ModelParams {
    FundamentalDiagram fd;
    PressureLaw pl;
    double tau = 3.0;       // relaxation time [s]
    double lookahead = 0.0; // look-ahead distance L_D [m]; 0 = local ARZ

    void validate() const;
};

/** V(rho): v_f below rho_f, v_f*(1-(rho-rho_f)/(rho_j-rho_f)) up to rho_j,
 * zero beyond. Continuous everywhere; rho < 0 is a domain error. */
double equilibrium_speed(const FundamentalDiagram& fd, double rho);

/** V'(rho). At the breakpoints returns the congested-side value:
 * -v_f/(rho_j-rho_f) at rho_f, 0 at rho_j. */
double equilibrium_speed_derivative(const FundamentalDiagram& fd, double rho);

/** h(rho): 0 at or below rho_f, the square-root law on (rho_f, rho_cap],
 * frozen at its rho_cap value above. */
double pressure(const PressureLaw& pl, double rho);

/** h'(rho) in closed form; valid only on the open interval
 * (rho_f, rho_cap) and throws a domain error outside it. */
double pressure_derivative(const PressureLaw& pl, double rho);

/** Total-function h' used by the solver: 0 at or below rho_f (pressure is
 * constant there), the closed form on (rho_f, rho_cap), frozen beyond. */
double pressure_derivative_clamped(const PressureLaw& pl, double rho);

} // namespace nlarz

#endif
