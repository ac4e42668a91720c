#include "nlarz.h"

#include <cstring>
#include <string>
#include <utility>

#include "nlarz/config.hpp"
#include "nlarz/errors.hpp"
#include "nlarz/model.hpp"
#include "nlarz/runner.hpp"
#include "nlarz/stability.hpp"

struct nlarz_config {
    nlarz::RunConfig cfg;
};

struct nlarz_run {
    nlarz::RingGrid grid;
    nlarz::Trajectory traj;
    nlarz::StabilityMetrics metrics;
};

namespace {

void copy_message(char* err, size_t cap, const char* msg) {
    if (!err || cap == 0) return;
    size_t n = std::strlen(msg);
    if (n > cap - 1) n = cap - 1;
    std::memcpy(err, msg, n);
    err[n] = '\0';
}

/* Exceptions never cross the C boundary. */
template <class Fn>
nlarz_status translate(char* err, size_t err_cap, Fn&& body) {
    try {
        return body();
    } catch (const nlarz::config_error& e) {
        copy_message(err, err_cap, e.what());
        return NLARZ_ERR_CONFIG;
    } catch (const nlarz::solver_error& e) {
        copy_message(err, err_cap, e.what());
        return NLARZ_ERR_SOLVER;
    } catch (const nlarz::io_error& e) {
        copy_message(err, err_cap, e.what());
        return NLARZ_ERR_IO;
    } catch (const std::exception& e) {
        copy_message(err, err_cap, e.what());
        return NLARZ_ERR_CONFIG;
    }
}

nlarz_status to_status(nlarz::ExitStatus s) {
    switch (s) {
    case nlarz::ExitStatus::ok: return NLARZ_OK;
    case nlarz::ExitStatus::config_error: return NLARZ_ERR_CONFIG;
    case nlarz::ExitStatus::solver_error: return NLARZ_ERR_SOLVER;
    case nlarz::ExitStatus::io_error: return NLARZ_ERR_IO;
    }
    return NLARZ_ERR_CONFIG;
}

nlarz_status copy_series(const std::vector<double>& src, double* out,
                         size_t cap) {
    if (!out || cap < src.size()) return NLARZ_ERR_ARG;
    std::memcpy(out, src.data(), src.size() * sizeof(double));
    return NLARZ_OK;
}

} // namespace

extern "C" {

const char* nlarz_version(void) { return nlarz::solver_version; }

nlarz_status nlarz_config_create(nlarz_config** out) {
    if (!out) return NLARZ_ERR_ARG;
    return translate(nullptr, 0, [&] {
        *out = new nlarz_config{};
        return NLARZ_OK;
    });
}

nlarz_status nlarz_config_parse(const char* text, nlarz_config** out,
                                char* err, size_t err_cap) {
    if (!text || !out) return NLARZ_ERR_ARG;
    return translate(err, err_cap, [&] {
        nlarz::RunConfig cfg = nlarz::parse_config(text);
        *out = new nlarz_config{std::move(cfg)};
        return NLARZ_OK;
    });
}

nlarz_status nlarz_config_load(const char* path, nlarz_config** out, char* err,
                               size_t err_cap) {
    if (!path || !out) return NLARZ_ERR_ARG;
    return translate(err, err_cap, [&] {
        nlarz::RunConfig cfg = nlarz::load_config(path);
        *out = new nlarz_config{std::move(cfg)};
        return NLARZ_OK;
    });
}

void nlarz_config_free(nlarz_config* cfg) { delete cfg; }

nlarz_status nlarz_config_set(nlarz_config* cfg, const char* key,
                              const char* value, char* err, size_t err_cap) {
    if (!cfg || !key || !value) return NLARZ_ERR_ARG;
    return translate(err, err_cap, [&] {
        cfg->cfg.set(key, value);
        return NLARZ_OK;
    });
}

nlarz_status nlarz_config_get(const nlarz_config* cfg, const char* key,
                              char* value, size_t value_cap) {
    if (!cfg || !key || !value || value_cap == 0) return NLARZ_ERR_ARG;
    try {
        const std::string text = cfg->cfg.get(key);
        if (text.size() + 1 > value_cap) return NLARZ_ERR_ARG;
        std::memcpy(value, text.c_str(), text.size() + 1);
        return NLARZ_OK;
    } catch (const std::exception&) {
        return NLARZ_ERR_ARG;
    }
}

nlarz_status nlarz_equilibrium_speed(const nlarz_config* cfg, double rho,
                                     double* out) {
    if (!cfg || !out) return NLARZ_ERR_ARG;
    return translate(nullptr, 0, [&] {
        *out = nlarz::equilibrium_speed(cfg->cfg.params().fd, rho);
        return NLARZ_OK;
    });
}

nlarz_status nlarz_pressure(const nlarz_config* cfg, double rho, double* out) {
    if (!cfg || !out) return NLARZ_ERR_ARG;
    return translate(nullptr, 0, [&] {
        *out = nlarz::pressure(cfg->cfg.params().pl, rho);
        return NLARZ_OK;
    });
}

nlarz_status nlarz_stability_point(const nlarz_config* cfg, double rho0,
                                   double k, double lookahead, double* margin,
                                   double* max_growth) {
    if (!cfg) return NLARZ_ERR_ARG;
    return translate(nullptr, 0, [&] {
        const nlarz::ModelParams mp = cfg->cfg.params();
        if (margin)
            *margin = nlarz::stability_criterion_margin(rho0, k, lookahead,
                                                        mp.fd, mp.pl);
        if (max_growth) {
            nlarz::PerturbationQuery q;
            q.rho0 = rho0;
            q.k = k;
            q.lookahead = lookahead;
            q.tau = cfg->cfg.tau;
            q.fd = mp.fd;
            q.pl = mp.pl;
            *max_growth = nlarz::dispersion_roots(q).max_growth;
        }
        return NLARZ_OK;
    });
}

nlarz_status nlarz_simulate(const nlarz_config* cfg, nlarz_run** out,
                            char* err, size_t err_cap) {
    if (!cfg || !out) return NLARZ_ERR_ARG;
    return translate(err, err_cap, [&] {
        cfg->cfg.validate();
        const nlarz::RingGrid g = cfg->cfg.grid();
        const nlarz::StepConfig sc = cfg->cfg.step_config();
        nlarz::Trajectory traj;
        if (cfg->cfg.scenario == nlarz::ScenarioKind::single_class)
            traj = nlarz::simulate(nlarz::build_initial_single(cfg->cfg), g, sc,
                                   cfg->cfg.duration, cfg->cfg.sample_every);
        else
            traj = nlarz::simulate(nlarz::build_initial_mixed(cfg->cfg), g, sc,
                                   cfg->cfg.duration, cfg->cfg.sample_every);
        nlarz::StabilityMetrics m =
            nlarz::compute_metrics(traj, cfg->cfg.threshold_fraction);
        *out = new nlarz_run{g, std::move(traj), std::move(m)};
        return NLARZ_OK;
    });
}

void nlarz_run_free(nlarz_run* run) { delete run; }

size_t nlarz_run_samples(const nlarz_run* run) {
    return run ? run->traj.times.size() : 0;
}

size_t nlarz_run_cells(const nlarz_run* run) {
    return run ? static_cast<size_t>(run->grid.n_cells) : 0;
}

int nlarz_run_is_mixed(const nlarz_run* run) {
    return run && run->traj.mixed ? 1 : 0;
}

nlarz_status nlarz_run_times(const nlarz_run* run, double* out, size_t cap) {
    if (!run) return NLARZ_ERR_ARG;
    return copy_series(run->traj.times, out, cap);
}

nlarz_status nlarz_run_field(const nlarz_run* run, size_t sample,
                             const char* field, double* out, size_t cap) {
    if (!run || !field || !out) return NLARZ_ERR_ARG;
    if (sample >= run->traj.snapshots.size()) return NLARZ_ERR_ARG;
    const size_t n = static_cast<size_t>(run->grid.n_cells);
    if (cap < n) return NLARZ_ERR_ARG;
    const std::string name(field);
    if (name == "x") {
        for (size_t i = 0; i < n; ++i)
            out[i] = run->grid.center(static_cast<int>(i));
        return NLARZ_OK;
    }
    const nlarz::Snapshot& s = run->traj.snapshots[sample];
    const std::vector<double>* src = nullptr;
    if (name == "rho") src = &s.rho;
    else if (name == "v") src = &s.v;
    else if (run->traj.mixed) {
        if (name == "rho_h") src = &s.rho_h;
        else if (name == "v_h") src = &s.v_h;
        else if (name == "rho_c") src = &s.rho_c;
        else if (name == "v_c") src = &s.v_c;
    }
    if (!src) return NLARZ_ERR_ARG;
    return copy_series(*src, out, cap);
}

nlarz_status nlarz_run_metric(const nlarz_run* run, const char* name,
                              double* out) {
    if (!run || !name || !out) return NLARZ_ERR_ARG;
    const std::string key(name);
    const nlarz::StabilityMetrics& m = run->metrics;
    if (key == "initial_amplitude") { *out = m.initial_amplitude; return NLARZ_OK; }
    if (key == "peak_amplitude") { *out = m.peak_amplitude; return NLARZ_OK; }
    if (key == "final_amplitude") { *out = m.final_amplitude; return NLARZ_OK; }
    if (key == "fitted_rate") { *out = m.fitted_rate; return NLARZ_OK; }
    if (key == "convergence_time") {
        if (!m.convergence_time) return NLARZ_ERR_ARG;
        *out = *m.convergence_time;
        return NLARZ_OK;
    }
    if (key == "mass_drift") {
        const auto& diag = run->traj.diagnostics;
        if (diag.empty() || diag.front().mass_total == 0.0)
            return NLARZ_ERR_ARG;
        *out = (diag.back().mass_total - diag.front().mass_total) /
               diag.front().mass_total;
        return NLARZ_OK;
    }
    if (key == "clamp_events") {
        const auto& diag = run->traj.diagnostics;
        *out = diag.empty() ? 0.0
                            : static_cast<double>(diag.back().clamp_events);
        return NLARZ_OK;
    }
    return NLARZ_ERR_ARG;
}

nlarz_status nlarz_run_amplitudes(const nlarz_run* run, double* out,
                                  size_t cap) {
    if (!run) return NLARZ_ERR_ARG;
    return copy_series(run->metrics.amplitude_series, out, cap);
}

nlarz_status nlarz_cmd_simulate(const char* config_path, char* err,
                                size_t err_cap) {
    if (!config_path) return NLARZ_ERR_ARG;
    return translate(err, err_cap, [&] {
        nlarz::RunConfig cfg = nlarz::load_config(config_path);
        std::string msg;
        nlarz::ExitStatus st = nlarz::run_simulate(cfg, &msg);
        if (st != nlarz::ExitStatus::ok) copy_message(err, err_cap, msg.c_str());
        return to_status(st);
    });
}

nlarz_status nlarz_cmd_stability(const char* config_path,
                                 const char* rho_range, const char* k_range,
                                 const char* lookahead_range, char* err,
                                 size_t err_cap) {
    if (!config_path || !rho_range || !k_range || !lookahead_range)
        return NLARZ_ERR_ARG;
    return translate(err, err_cap, [&] {
        nlarz::RunConfig cfg = nlarz::load_config(config_path);
        const nlarz::AxisRange rho = nlarz::parse_axis_range(rho_range, "rho0");
        const nlarz::AxisRange k = nlarz::parse_axis_range(k_range, "k");
        const nlarz::AxisRange lookahead =
            nlarz::parse_axis_range(lookahead_range, "lookahead");
        std::string msg;
        nlarz::ExitStatus st =
            nlarz::run_stability(cfg, rho, k, lookahead, &msg);
        if (st != nlarz::ExitStatus::ok) copy_message(err, err_cap, msg.c_str());
        return to_status(st);
    });
}

nlarz_status nlarz_cmd_sweep(const char* preset, const char* out_dir,
                             char* err, size_t err_cap) {
    if (!preset || !out_dir) return NLARZ_ERR_ARG;
    return translate(err, err_cap, [&] {
        std::string msg;
        nlarz::ExitStatus st = nlarz::run_sweep(preset, out_dir, &msg);
        if (st != nlarz::ExitStatus::ok) copy_message(err, err_cap, msg.c_str());
        return to_status(st);
    });
}

} /* extern "C" */
