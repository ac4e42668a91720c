#include "nlarz/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlarz {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

void check_density(double rho) {
    if (rho < 0.0)
        throw std::domain_error("density must be non-negative, got " +
                                std::to_string(rho));
}

}  // namespace

void FundamentalDiagram::validate() const {
    require(v_f > 0.0, "fundamental diagram: v_f must be positive");
    require(rho_f > 0.0, "fundamental diagram: rho_f must be positive");
    require(rho_f < rho_j, "fundamental diagram: rho_f must be below rho_j");
}

void PressureLaw::validate() const {
    require(scale > 0.0, "pressure law: scale must be positive");
    require(rho_f < rho_j, "pressure law: rho_f must be below rho_j");
}

void ModelParams::validate() const {
    fd.validate();
    pl.validate();
    require(tau > 0.0, "model params: tau must be positive");
    require(lookahead >= 0.0, "model params: lookahead must be non-negative");
}

double equilibrium_speed(const FundamentalDiagram& fd, double rho) {
    check_density(rho);
    if (rho <= fd.rho_f) return fd.v_f;
    if (rho >= fd.rho_j) return 0.0;
    return fd.v_f * (1.0 - (rho - fd.rho_f) / (fd.rho_j - fd.rho_f));
}

double equilibrium_speed_derivative(const FundamentalDiagram& fd, double rho) {
    check_density(rho);
    // congested-side convention at the breakpoints: the ramp value applies on
    // [rho_f, rho_j), zero elsewhere
    if (rho < fd.rho_f || rho >= fd.rho_j) return 0.0;
    return -fd.v_f / (fd.rho_j - fd.rho_f);
}

double pressure(const PressureLaw& pl, double rho) {
    check_density(rho);
    if (rho <= pl.rho_f) return 0.0;
    double r = std::min(rho, pl.rho_cap());
    return pl.scale * std::sqrt((r - pl.rho_f) / (pl.rho_j - r));
}

double pressure_derivative(const PressureLaw& pl, double rho) {
    if (!(rho > pl.rho_f) || !(rho < pl.rho_cap()))
        throw std::domain_error(
            "pressure derivative defined only on (rho_f, rho_cap), got " +
            std::to_string(rho));
    double d = pl.rho_j - rho;
    return 0.5 * pl.scale * (pl.rho_j - pl.rho_f) / (d * d) *
           std::sqrt(d / (rho - pl.rho_f));
}

double pressure_derivative_clamped(const PressureLaw& pl, double rho) {
    check_density(rho);
    if (rho <= pl.rho_f) return 0.0;
    double r = std::min(rho, pl.rho_cap());
    double d = pl.rho_j - r;
    return 0.5 * pl.scale * (pl.rho_j - pl.rho_f) / (d * d) *
           std::sqrt(d / (r - pl.rho_f));
}

}  // namespace nlarz
