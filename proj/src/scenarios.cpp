#include "nlarz/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nlarz {

namespace {

double spread(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return *hi - *lo;
}

/** Splits the total s into (big, small) with small near `target` and the
 * stored pair summing to s exactly: the second subtraction is exact by
 * Sterbenz because the big side is at least s/2. */
void floor_split(double s, double target, double& big, double& small) {
    big = s - target;
    small = s - big;
}

MixedField split_by_cav_fraction(const PressureLaw& pl, const InitialProfile& base,
                                 const std::vector<double>& cav_fraction) {
    MixedField f;
    f.hdv.rho.resize(base.rho.size());
    f.hdv.y.resize(base.rho.size());
    f.cav.rho.resize(base.rho.size());
    f.cav.y.resize(base.rho.size());
    for (std::size_t i = 0; i < base.rho.size(); ++i) {
        const double s = base.rho[i];
        double c = cav_fraction[i] * s;
        double h = s - c;
        c = s - h; // h + c == s exactly for any fraction in [0, 1]
        if (c < density_floor) {
            floor_split(s, density_floor, h, c);
        } else if (h < density_floor) {
            floor_split(s, density_floor, c, h);
        }
        const double w = base.v[i] + pressure(pl, s);
        f.hdv.rho[i] = h;
        f.hdv.y[i] = h * w;
        f.cav.rho[i] = c;
        f.cav.y[i] = c * w;
    }
    return f;
}

void check_penetration(double r) {
    if (!(r >= 0.0) || !(r <= 1.0))
        throw std::invalid_argument("penetration rate must lie in [0, 1], got " +
                                    std::to_string(r));
}

} // namespace

std::string to_string(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::single_class:
        return "single_class";
    case ScenarioKind::mixed_even:
        return "mixed_even";
    case ScenarioKind::mixed_segregated:
        return "mixed_segregated";
    }
    return "single_class";
}

std::optional<ScenarioKind> scenario_from_string(const std::string& s) {
    if (s == "single_class") return ScenarioKind::single_class;
    if (s == "mixed_even") return ScenarioKind::mixed_even;
    if (s == "mixed_segregated") return ScenarioKind::mixed_segregated;
    return std::nullopt;
}

double sinusoidal_density(double x, double length, const FundamentalDiagram& fd) {
    return 0.4 * fd.rho_j +
           0.1 * fd.rho_j * std::sin(2.0 * M_PI * x / length);
}

InitialProfile sinusoidal_ic(const RingGrid& g, const FundamentalDiagram& fd) {
    return sinusoidal_ic(g, fd, 0.4 * fd.rho_j, 0.1 * fd.rho_j);
}

InitialProfile sinusoidal_ic(const RingGrid& g, const FundamentalDiagram& fd,
                             double mean, double amplitude) {
    fd.validate();
    if (!(amplitude >= 0.0))
        throw std::invalid_argument("density amplitude must be non-negative, got " +
                                    std::to_string(amplitude));
    if (!(mean - amplitude > 0.0) || !(mean + amplitude < fd.rho_j))
        throw std::invalid_argument(
            "sinusoidal profile must stay inside (0, rho_j): mean " +
            std::to_string(mean) + ", amplitude " + std::to_string(amplitude));
    InitialProfile p;
    p.rho.resize(g.n_cells);
    p.v.resize(g.n_cells);
    for (int i = 0; i < g.n_cells; ++i) {
        p.rho[i] = mean + amplitude * std::sin(2.0 * M_PI * g.center(i) / g.length);
        p.v[i] = equilibrium_speed(fd, p.rho[i]);
    }
    return p;
}

MixedField even_mix_ic(const RingGrid& g, const FundamentalDiagram& fd,
                       const PressureLaw& pl, double penetration) {
    check_penetration(penetration);
    InitialProfile base = sinusoidal_ic(g, fd);
    std::vector<double> frac(base.rho.size(), penetration);
    return split_by_cav_fraction(pl, base, frac);
}

MixedField segregated_mix_ic(const RingGrid& g, const FundamentalDiagram& fd,
                             const PressureLaw& pl, double penetration) {
    check_penetration(penetration);
    InitialProfile base = sinusoidal_ic(g, fd);
    const double lo = (1.0 - penetration) / 2.0 * g.length;
    const double hi = (1.0 + penetration) / 2.0 * g.length;
    std::vector<double> frac(base.rho.size());
    for (int i = 0; i < g.n_cells; ++i) {
        const double x = g.center(i);
        frac[i] = (x > lo && x < hi) ? 0.999 : 0.001;
    }
    return split_by_cav_fraction(pl, base, frac);
}

StabilityMetrics compute_metrics(const Trajectory& traj, double threshold_fraction) {
    if (!(threshold_fraction > 0.0) || !(threshold_fraction < 1.0))
        throw std::invalid_argument("threshold fraction must lie in (0, 1), got " +
                                    std::to_string(threshold_fraction));
    if (traj.times.empty() || traj.times.size() != traj.snapshots.size())
        throw std::invalid_argument(
            "trajectory needs matching, non-empty times and snapshots");

    StabilityMetrics m;
    m.times = traj.times;
    m.amplitude_series.reserve(traj.snapshots.size());
    m.v_amplitude_series.reserve(traj.snapshots.size());
    for (const auto& snap : traj.snapshots) {
        m.amplitude_series.push_back(spread(snap.rho));
        m.v_amplitude_series.push_back(spread(traj.mixed ? snap.v_h : snap.v));
    }
    m.initial_amplitude = m.amplitude_series.front();
    m.peak_amplitude =
        *std::max_element(m.amplitude_series.begin(), m.amplitude_series.end());
    m.final_amplitude = m.amplitude_series.back();

    // converged = below threshold from some sample through the end; a dip
    // that recovers moves the convergence time past the recovery
    const double threshold = threshold_fraction * m.initial_amplitude;
    std::ptrdiff_t last_above = -1;
    for (std::size_t i = 0; i < m.amplitude_series.size(); ++i) {
        const double a = m.amplitude_series[i];
        const bool below =
            m.initial_amplitude == 0.0 ? a <= 0.0 : a < threshold;
        if (!below) last_above = static_cast<std::ptrdiff_t>(i);
    }
    const std::size_t start = static_cast<std::size_t>(last_above + 1);
    if (start < m.times.size()) m.convergence_time = m.times[start];

    const double t0 = m.times.front();
    const double span = m.times.back() - t0;
    m.fitted_rate =
        fit_exponential_rate(m.times, m.amplitude_series, t0, t0 + 0.25 * span);
    return m;
}

double fit_exponential_rate(const std::vector<double>& times,
                            const std::vector<double>& amplitudes, double t0,
                            double t1) {
    if (times.size() != amplitudes.size())
        throw std::invalid_argument("times and amplitudes must have equal length");
    double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        const double a = amplitudes[i];
        if (t < t0 || t > t1 || !(a > 0.0)) continue;
        const double la = std::log(a);
        n += 1.0;
        sx += t;
        sy += la;
        sxx += t * t;
        sxy += t * la;
    }
    if (n < 2.0) return 0.0;
    const double denom = n * sxx - sx * sx;
    if (!(denom > 0.0)) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

} // namespace nlarz
