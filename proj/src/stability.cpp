#include "nlarz/stability.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlarz {

void PerturbationQuery::validate() const {
    fd.validate();
    pl.validate();
    if (!(rho0 > fd.rho_f) || !(rho0 < fd.rho_j))
        throw std::invalid_argument(
            "base density must lie strictly between rho_f and rho_j, got " +
            std::to_string(rho0));
    if (!(k > 0.0))
        throw std::invalid_argument("wavenumber must be positive, got " +
                                    std::to_string(k));
    if (!(lookahead >= 0.0))
        throw std::invalid_argument(
            "look-ahead distance must be non-negative, got " +
            std::to_string(lookahead));
    if (!(tau > 0.0))
        throw std::invalid_argument("relaxation time must be positive, got " +
                                    std::to_string(tau));
}

std::complex<double> zeta(const PerturbationQuery& q) {
    const double vp = equilibrium_speed_derivative(q.fd, q.rho0);
    const double x = q.k * q.lookahead;
    if (x == 0.0) return {vp, 0.0};
    const std::complex<double> ix(0.0, x);
    return (std::exp(ix) - 1.0) * vp / ix;
}

DispersionResult dispersion_roots(const PerturbationQuery& q) {
    q.validate();
    DispersionResult r;
    r.psi = equilibrium_speed(q.fd, q.rho0);
    r.phi = pressure_derivative(q.pl, q.rho0);
    r.zeta = zeta(q);

    const std::complex<double> ik(0.0, q.k);
    const std::complex<double> ikpsi = ik * r.psi;
    const std::complex<double> b =
        2.0 * ikpsi + 1.0 / q.tau - ik * q.rho0 * r.phi;
    const std::complex<double> c =
        ikpsi * (ikpsi + 1.0 / q.tau) -
        ik * q.rho0 * (ikpsi * r.phi - r.zeta / q.tau);

    // sign-matched sqrt branch so b + disc never cancels; the small root
    // comes from the product c = r1 * r2 instead of a subtraction
    std::complex<double> disc = std::sqrt(b * b - 4.0 * c);
    if (b.real() * disc.real() + b.imag() * disc.imag() < 0.0) disc = -disc;
    const std::complex<double> r1 = -0.5 * (b + disc);
    const std::complex<double> r2 = c / r1; // r1 != 0: re(b) = 1/tau > 0

    r.roots = {r1, r2};
    r.max_growth = std::max(r1.real(), r2.real());
    return r;
}

double stability_criterion_margin(double rho0, double k, double lookahead,
                                  const FundamentalDiagram& fd,
                                  const PressureLaw& pl) {
    if (!(k > 0.0))
        throw std::invalid_argument("wavenumber must be positive, got " +
                                    std::to_string(k));
    if (!(lookahead >= 0.0))
        throw std::invalid_argument(
            "look-ahead distance must be non-negative, got " +
            std::to_string(lookahead));
    const double hp = pressure_derivative(pl, rho0);
    const double vp = equilibrium_speed_derivative(fd, rho0);
    const double x = k * lookahead;
    const double factor = x == 0.0 ? 1.0 : std::abs(std::sin(x)) / x;
    return hp + factor * vp;
}

double AxisRange::at(int i) const {
    if (n <= 1 || i <= 0) return lo;
    if (i >= n - 1) return hi;
    return lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
}

std::vector<StabilityPoint> stability_map(const AxisRange& rho,
                                          const AxisRange& k,
                                          const AxisRange& lookahead,
                                          double tau,
                                          const FundamentalDiagram& fd,
                                          const PressureLaw& pl) {
    if (rho.n < 1 || k.n < 1 || lookahead.n < 1)
        throw std::invalid_argument(
            "stability map axes need at least one point each");
    std::vector<StabilityPoint> out;
    out.reserve(static_cast<std::size_t>(rho.n) * k.n * lookahead.n);
    for (int i = 0; i < rho.n; ++i) {
        for (int j = 0; j < k.n; ++j) {
            for (int l = 0; l < lookahead.n; ++l) {
                StabilityPoint p;
                p.rho0 = rho.at(i);
                p.k = k.at(j);
                p.lookahead = lookahead.at(l);
                try {
                    p.margin = stability_criterion_margin(p.rho0, p.k,
                                                          p.lookahead, fd, pl);
                    PerturbationQuery q{p.rho0, p.k, p.lookahead, tau, fd, pl};
                    p.max_growth = dispersion_roots(q).max_growth;
                } catch (const std::exception& e) {
                    throw std::domain_error(
                        "stability map point (rho0 = " + std::to_string(p.rho0) +
                        ", k = " + std::to_string(p.k) +
                        ", lookahead = " + std::to_string(p.lookahead) +
                        "): " + e.what());
                }
                out.push_back(p);
            }
        }
    }
    return out;
}

} // namespace nlarz
