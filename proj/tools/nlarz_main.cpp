#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "nlarz.h"

namespace {

int finish(nlarz_status st, const char* err) {
    if (st != NLARZ_OK && err[0] != '\0')
        std::fprintf(stderr, "nlarz: %s\n", err);
    return static_cast<int>(st);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-volume ring-road solver for the non-local "
                 "look-ahead ARZ traffic model"};
    app.set_version_flag("--version", nlarz_version());
    app.require_subcommand(1);

    std::string sim_config;
    CLI::App* sim = app.add_subcommand(
        "simulate", "run the configured scenario and write its output bundle");
    sim->add_option("-c,--config", sim_config,
                    "key = value run configuration file")
        ->required();

    std::string stab_config, rho_range, k_range, lookahead_range;
    CLI::App* stab = app.add_subcommand(
        "stability",
        "tabulate the criterion margin and dispersion growth on a grid");
    stab->add_option("-c,--config", stab_config,
                     "config supplying tau, the constitutive laws and "
                     "output_dir")
        ->required();
    stab->add_option("--rho0", rho_range,
                     "base density, single value or lo:hi:n [veh/km]")
        ->required();
    stab->add_option("--k", k_range,
                     "wavenumber, single value or lo:hi:n [rad/m]")
        ->required();
    stab->add_option("--lookahead", lookahead_range,
                     "look-ahead distance, single value or lo:hi:n [m]")
        ->required();

    std::string preset, out_dir;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "run a preset family of scenarios and compare them");
    sweep->add_option("-p,--preset", preset,
                      "lookahead_sweep, mixed_even_sweep or "
                      "mixed_segregated_sweep")
        ->required();
    sweep->add_option("-o,--out", out_dir,
                      "directory receiving the member runs and comparison.csv")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; /* usage mistakes are config errors */
    }

    char err[1024] = {};
    if (sim->parsed())
        return finish(nlarz_cmd_simulate(sim_config.c_str(), err, sizeof err),
                      err);
    if (stab->parsed())
        return finish(nlarz_cmd_stability(stab_config.c_str(),
                                          rho_range.c_str(), k_range.c_str(),
                                          lookahead_range.c_str(), err,
                                          sizeof err),
                      err);
    if (sweep->parsed())
        return finish(nlarz_cmd_sweep(preset.c_str(), out_dir.c_str(), err,
                                      sizeof err),
                      err);
    return 2;
}
