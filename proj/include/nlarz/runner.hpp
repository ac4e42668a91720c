#ifndef NLARZ_RUNNER_HPP
#define NLARZ_RUNNER_HPP

#include <string>

#include "nlarz/config.hpp"
#include "nlarz/stability.hpp"

namespace nlarz {

/** Process-level exit codes shared by the CLI and the C API. */
enum class ExitStatus : int {
    ok = 0,
    config_error = 2,
    solver_error = 3,
    io_error = 4,
};

/** Builds the initial state described by the config's scenario keys. */
ClassField build_initial_single(const RunConfig& cfg);
MixedField build_initial_mixed(const RunConfig& cfg);

/** Runs one simulation and writes fields.csv, metrics.csv and manifest.txt
 * into cfg.output_dir, then prints a one-line summary to stdout. On a solver
 * failure the rows collected so far are flushed under a sentinel footer and
 * the status is solver_error. */
ExitStatus run_simulate(const RunConfig& cfg, std::string* error = nullptr);

/** Parses "lo:hi:n"; throws config_error on malformed ranges. */
AxisRange parse_axis_range(const std::string& text, const std::string& name);

/** Evaluates the stability map over the given ranges and writes
 * stability.csv (columns rho0, k, lookahead, margin, re_sigma_max,
 * agree_flag) into cfg.output_dir. */
ExitStatus run_stability(const RunConfig& cfg, const AxisRange& rho,
                         const AxisRange& k, const AxisRange& lookahead,
                         std::string* error = nullptr);

/** Runs one of the preset experiment rosters — lookahead_sweep,
 * mixed_even_sweep, mixed_segregated_sweep — each member into its own
 * subdirectory of out_dir, then writes comparison.csv. */
ExitStatus run_sweep(const std::string& preset, const std::string& out_dir,
                     std::string* error = nullptr);

} // namespace nlarz

#endif
