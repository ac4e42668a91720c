#ifndef NLARZ_STABILITY_HPP
#define NLARZ_STABILITY_HPP

#include <array>
#include <complex>
#include <vector>

#include "nlarz/model.hpp"

namespace nlarz {

/** A point query for the wave-perturbation analysis of the uniform state
 * (rho0, V(rho0)) against the mode exp(ikx + sigma*t). */
struct PerturbationQuery {
    double rho0;      // base density, in (rho_f, rho_j) [veh/km]
    double k;         // wavenumber [1/m]
    double lookahead; // L_D [m], 0 = local
    double tau;       // [s]
    FundamentalDiagram fd;
    PressureLaw pl;

    void validate() const;
};

struct DispersionResult {
    double psi; // V(rho0) [m/s]
    double phi; // h'(rho0)
    std::complex<double> zeta;
    std::array<std::complex<double>, 2> roots; // growth exponents sigma [1/s]
    double max_growth;                         // max real part [1/s]
};

/** zeta = (e^{ikL_D} - 1) V'(rho0) / (ikL_D), with the L_D -> 0 limit
 * V'(rho0). |zeta| <= |V'(rho0)| always. */
std::complex<double> zeta(const PerturbationQuery& q);

/** Roots of the perturbation determinant
 *   (sigma + ik psi)(sigma + ik psi + 1/tau)
 *     - ik rho0 (sigma phi + ik psi phi - zeta/tau) = 0,
 * a monic quadratic in sigma, solved by the cancellation-safe branch. */
DispersionResult dispersion_roots(const PerturbationQuery& q);

/** Closed-form criterion margin h'(rho0) + |sin(kL_D)|/(kL_D) * V'(rho0);
 * the sinc factor is 1 at lookahead = 0. Positive margin = stable. */
double stability_criterion_margin(double rho0, double k, double lookahead,
                                  const FundamentalDiagram& fd,
                                  const PressureLaw& pl);

/** Inclusive linspace; n = 1 collapses to lo. */
struct AxisRange {
    double lo;
    double hi;
    int n;

    double at(int i) const;
};

struct StabilityPoint {
    double rho0, k, lookahead;
    double margin;
    double max_growth;
};

/** Evaluates margin and dispersion growth at every grid point, row-major in
 * (rho0, k, lookahead). Domain errors carry the grid coordinates. */
std::vector<StabilityPoint> stability_map(const AxisRange& rho,
                                          const AxisRange& k,
                                          const AxisRange& lookahead,
                                          double tau,
                                          const FundamentalDiagram& fd,
                                          const PressureLaw& pl);

} // namespace nlarz

#endif
