#ifndef NLARZ_GRID_HPP
#define NLARZ_GRID_HPP

#include <cstdint>
#include <vector>

#include "nlarz/model.hpp"

namespace nlarz {

/** Densities are floored at this value after every update. Small enough to
 * never affect nominal dynamics, large enough to keep y/rho finite. */
inline constexpr double density_floor = 1e-6; // veh/km

/** Uniform periodic 1-D grid. Cell i spans [i*dx, (i+1)*dx); states live at
 * cell centers. */
struct RingGrid {
    double length; // road length L [m]
    double dx;     // cell width [m]
    int n_cells;

    /** Derives n_cells = length/dx; throws unless the ratio is integral
     * (within 1e-9) and at least 4. */
    static RingGrid make(double length, double dx);

    double center(int i) const { return (i + 0.5) * dx; }
};

/** One vehicle class in conserved variables: density rho and relative flow
 * y = rho*(v + h(rho)). Velocity is always derived, never stored. */
struct ClassField {
    std::vector<double> rho; // [veh/km]
    std::vector<double> y;   // [veh/km * m/s]

    int size() const { return static_cast<int>(rho.size()); }
};

/** HDV/CAV pair sharing one grid. */
struct MixedField {
    ClassField hdv;
    ClassField cav;

    std::vector<double> total_density() const;
};

/** y = rho*(v + h(rho)). */
double to_conserved(double rho, double v, const PressureLaw& pl);

/** v = y/rho - h(rho), clamped to [0, inf). */
double to_primitive(double rho, double y, const PressureLaw& pl);

/** As above; bumps clamp_events when the clamp fires (scheme stress
 * diagnostic, not fatal). */
double to_primitive(double rho, double y, const PressureLaw& pl,
                    std::uint64_t& clamp_events);

/** Builds a conserved field from primitive (rho, v) profiles. */
ClassField make_field(const std::vector<double>& rho,
                      const std::vector<double>& v, const PressureLaw& pl);

/** Total vehicle count: sum rho_i * dx / 1000 (veh/km * m -> veh). */
double total_mass(const ClassField& f, const RingGrid& g);

} // namespace nlarz

#endif
