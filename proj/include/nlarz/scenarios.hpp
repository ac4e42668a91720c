#ifndef NLARZ_SCENARIOS_HPP
#define NLARZ_SCENARIOS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nlarz/grid.hpp"
#include "nlarz/stepper.hpp"

namespace nlarz {

enum class ScenarioKind { single_class, mixed_even, mixed_segregated };

std::string to_string(ScenarioKind k);
std::optional<ScenarioKind> scenario_from_string(const std::string& s);

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::single_class;
    double penetration = 0.0; // CAV fraction r in [0,1] (mixed only)
    double lookahead = 0.0;   // L_D [m]
    double duration = 600.0;  // T [s]
};

/** rho_0(x) = 0.4*rho_j + 0.1*rho_j*sin(2 pi x / L). */
double sinusoidal_density(double x, double length, const FundamentalDiagram& fd);

struct InitialProfile {
    std::vector<double> rho;
    std::vector<double> v;
};

/** Cell-center sampled sine with v = V(rho) point-wise. */
InitialProfile sinusoidal_ic(const RingGrid& g, const FundamentalDiagram& fd);

/** Same family with an explicit mean and amplitude:
 * rho_0(x) = mean + amplitude*sin(2 pi x / L). amplitude = 0 gives a uniform
 * equilibrium state; small amplitudes seed the linear-growth regime. */
InitialProfile sinusoidal_ic(const RingGrid& g, const FundamentalDiagram& fd,
                             double mean, double amplitude);

/** Proportional split rho_c = r*rho_s, rho_h = rho_s - rho_c, both classes at
 * v = V(rho_s). Class densities are floored, with the complement absorbing
 * the floor so the split stays exact. */
MixedField even_mix_ic(const RingGrid& g, const FundamentalDiagram& fd,
                       const PressureLaw& pl, double penetration);

/** CAVs concentrated around x = L/2: rho_c = 0.999*rho_s inside the band
 * ((1-r)/2 * L, (1+r)/2 * L), 0.001*rho_s outside; rho_h = rho_s - rho_c. */
MixedField segregated_mix_ic(const RingGrid& g, const FundamentalDiagram& fd,
                             const PressureLaw& pl, double penetration);

struct StabilityMetrics {
    std::vector<double> times;
    std::vector<double> amplitude_series;   // max-min of rho per sample
    std::vector<double> v_amplitude_series; // max-min of v (HDV v for mixed)
    double initial_amplitude = 0;
    double peak_amplitude = 0;
    double final_amplitude = 0;
    std::optional<double> convergence_time; // absent when never converged
    double fitted_rate = 0;                 // [1/s]
};

/** Amplitude series and summary of a trajectory. convergence_time is the
 * first sample after which the amplitude stays below threshold_fraction times
 * the initial amplitude through the end of the run; a transient dip does not
 * count. fitted_rate is the log-amplitude slope over the first quarter. */
StabilityMetrics compute_metrics(const Trajectory& traj,
                                 double threshold_fraction);

/** Least-squares slope of log(amplitude) over samples with t in [t0, t1].
 * Samples with non-positive amplitude are skipped. */
double fit_exponential_rate(const std::vector<double>& times,
                            const std::vector<double>& amplitudes, double t0,
                            double t1);

} // namespace nlarz

#endif
