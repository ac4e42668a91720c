#ifndef NLARZ_CONFIG_HPP
#define NLARZ_CONFIG_HPP

#include <string>

#include "nlarz/grid.hpp"
#include "nlarz/scenarios.hpp"
#include "nlarz/stepper.hpp"

namespace nlarz {

inline constexpr const char* solver_version = "0.1.0";

/** Flat run configuration. Defaults are the reference ring-road setup:
 * L = 1000 m, dx = 5 m, dt = 0.05 s, tau = 3 s, v_f = 20 m/s,
 * rho_f = 10 veh/km, rho_j = 140 veh/km, pressure scale 8 m/s. */
struct RunConfig {
    double length = 1000.0;
    double dx = 5.0;
    double dt = 0.05;
    double tau = 3.0;
    double v_f = 20.0;
    double rho_f = 10.0;
    double rho_j = 140.0;
    double pressure_scale = 8.0;
    double lookahead = 0.0;
    double cfl_limit = 0.9;
    double rho_mean = 56.0;      // sinusoidal IC mean, 0.4*rho_j by default
    double rho_amplitude = 14.0; // sinusoidal IC amplitude, 0.1*rho_j
    ScenarioKind scenario = ScenarioKind::single_class;
    double penetration = 0.0;
    double duration = 600.0;
    double sample_every = 5.0;
    double threshold_fraction = 0.1;
    std::string output_dir = "out";

    RingGrid grid() const;
    ModelParams params() const;
    StepConfig step_config() const;
    ScenarioSpec scenario_spec() const;

    /** Cross-field invariants; throws config_error naming the key. */
    void validate() const;

    /** Canonical key = value text; parsing it back yields an identical
     * config (full-precision numbers). */
    std::string serialize() const;

    /** Assigns one key from its textual value; unknown keys and malformed
     * numbers throw config_error. */
    void set(const std::string& key, const std::string& value, int line = 0);

    /** Textual value of one key, or throws config_error on unknown keys. */
    std::string get(const std::string& key) const;
};

/** Parses the key = value schema: one pair per line, '#' comments, blank
 * lines ignored. Unknown keys are fatal. The result is validated. */
RunConfig parse_config(const std::string& text);

/** parse_config on a file's contents; missing file throws io_error. */
RunConfig load_config(const std::string& path);

} // namespace nlarz

#endif
