#include "nlarz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nlarz {

RingGrid RingGrid::make(double length, double dx) {
    if (!(length > 0.0) || !(dx > 0.0))
        throw std::invalid_argument("grid: length and dx must be positive");
    double ratio = length / dx;
    double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("grid: length/dx = " + std::to_string(ratio) +
                                    " is not an integral cell count");
    int n = static_cast<int>(rounded);
    if (n < 4)
        throw std::invalid_argument("grid: need at least 4 cells, got " +
                                    std::to_string(n));
    return RingGrid{length, dx, n};
}

std::vector<double> MixedField::total_density() const {
    std::vector<double> total(hdv.rho.size());
    for (std::size_t i = 0; i < total.size(); ++i)
        total[i] = hdv.rho[i] + cav.rho[i];
    return total;
}

double to_conserved(double rho, double v, const PressureLaw& pl) {
    return rho * (v + pressure(pl, rho));
}

double to_primitive(double rho, double y, const PressureLaw& pl) {
    return std::max(y / rho - pressure(pl, rho), 0.0);
}

double to_primitive(double rho, double y, const PressureLaw& pl,
                    std::uint64_t& clamp_events) {
    double v = y / rho - pressure(pl, rho);
    if (v < 0.0) {
        ++clamp_events;
        return 0.0;
    }
    return v;
}

ClassField make_field(const std::vector<double>& rho,
                      const std::vector<double>& v, const PressureLaw& pl) {
    if (rho.size() != v.size())
        throw std::invalid_argument("make_field: rho and v sizes differ");
    ClassField f;
    f.rho.resize(rho.size());
    f.y.resize(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        f.rho[i] = std::max(rho[i], density_floor);
        f.y[i] = to_conserved(f.rho[i], v[i], pl);
    }
    return f;
}

double total_mass(const ClassField& f, const RingGrid& g) {
    double sum = 0.0;
    for (double r : f.rho) sum += r;
    return sum * g.dx / 1000.0;
}

}  // namespace nlarz
