#include "nlarz/runner.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <utility>
#include <vector>

#include "nlarz/errors.hpp"

namespace nlarz {

namespace {

namespace fs = std::filesystem;

/** Dispersion growth below this is treated as neutral when flagging
 * agreement between the criterion margin and the root test. */
constexpr double growth_tolerance = 1e-12;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + p.string());
    return out;
}

void make_output_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw io_error("cannot create output directory '" + dir +
                       "': " + ec.message());
}

double parse_range_double(const std::string& text, const std::string& name,
                          const std::string& whole) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw config_error("axis range '" + name + "': malformed number '" +
                               text + "' in '" + whole + "'",
                           name, 0);
    return v;
}

struct RunArtifacts {
    Trajectory traj;
    std::optional<StabilityMetrics> metrics;
    bool aborted = false;
    std::string abort_reason;
    double abort_time = 0.0;
    long abort_step = 0;
};

/** Runs one configured simulation and writes fields.csv, metrics.csv and
 * manifest.txt. Solver failures are captured in the result; config and io
 * problems propagate as exceptions. */
RunArtifacts execute_run(const RunConfig& cfg) {
    cfg.validate();
    const RingGrid g = cfg.grid();
    const StepConfig sc = cfg.step_config();
    const bool mixed = cfg.scenario != ScenarioKind::single_class;

    ClassField single_ic;
    MixedField mixed_ic;
    if (mixed)
        mixed_ic = build_initial_mixed(cfg);
    else
        single_ic = build_initial_single(cfg);

    make_output_dir(cfg.output_dir);
    const fs::path dir(cfg.output_dir);

    auto fields = open_out(dir / "fields.csv");
    fields << (mixed ? "t,x,rho,v,rho_h,v_h,rho_c,v_c" : "t,x,rho,v") << "\n";

    RunArtifacts art;
    art.traj.mixed = mixed;
    SampleObserver observe = [&](double t, const Snapshot& s,
                                 const SampleDiagnostics& d) {
        for (int i = 0; i < g.n_cells; ++i) {
            fields << fmt(t) << ',' << fmt(g.center(i)) << ',' << fmt(s.rho[i])
                   << ',' << fmt(s.v[i]);
            if (mixed)
                fields << ',' << fmt(s.rho_h[i]) << ',' << fmt(s.v_h[i]) << ','
                       << fmt(s.rho_c[i]) << ',' << fmt(s.v_c[i]);
            fields << '\n';
        }
        art.traj.times.push_back(t);
        art.traj.snapshots.push_back(s);
        art.traj.diagnostics.push_back(d);
    };

    try {
        if (mixed)
            simulate(mixed_ic, g, sc, cfg.duration, cfg.sample_every, observe);
        else
            simulate(single_ic, g, sc, cfg.duration, cfg.sample_every, observe);
    } catch (const solver_error& e) {
        art.aborted = true;
        art.abort_reason = e.what();
        art.abort_time = e.time();
        art.abort_step = e.step();
        fields << "# aborted\n";
    }
    if (!fields)
        throw io_error("failed while writing " + (dir / "fields.csv").string());
    fields.close();

    if (!art.traj.times.empty())
        art.metrics = compute_metrics(art.traj, cfg.threshold_fraction);

    auto metrics_out = open_out(dir / "metrics.csv");
    metrics_out << "t,amplitude,v_amplitude\n";
    if (art.metrics) {
        const StabilityMetrics& m = *art.metrics;
        for (std::size_t i = 0; i < m.times.size(); ++i)
            metrics_out << fmt(m.times[i]) << ',' << fmt(m.amplitude_series[i])
                        << ',' << fmt(m.v_amplitude_series[i]) << '\n';
        metrics_out << "\nmetric,value\n";
        metrics_out << "initial_amplitude," << fmt(m.initial_amplitude) << '\n';
        metrics_out << "peak_amplitude," << fmt(m.peak_amplitude) << '\n';
        metrics_out << "final_amplitude," << fmt(m.final_amplitude) << '\n';
        metrics_out << "fitted_rate," << fmt(m.fitted_rate) << '\n';
        if (m.convergence_time)
            metrics_out << "convergence_time," << fmt(*m.convergence_time)
                        << '\n';
        const auto& diag = art.traj.diagnostics;
        metrics_out << "mass_drift,"
                    << fmt(diag.back().mass_total - diag.front().mass_total)
                    << '\n';
        metrics_out << "clamp_events," << diag.back().clamp_events << '\n';
    }
    if (!metrics_out)
        throw io_error("failed while writing " + (dir / "metrics.csv").string());
    metrics_out.close();

    auto manifest = open_out(dir / "manifest.txt");
    manifest << cfg.serialize();
    manifest << "solver_version = " << solver_version << "\n";
    manifest << "n_cells = " << g.n_cells << "\n";
    manifest << "steps = " << std::lround(cfg.duration / cfg.dt) << "\n";
    manifest << "samples = " << art.traj.times.size() << "\n";
    if (!art.traj.diagnostics.empty()) {
        const auto& diag = art.traj.diagnostics;
        manifest << "mass_initial = " << fmt(diag.front().mass_total) << "\n";
        manifest << "mass_final = " << fmt(diag.back().mass_total) << "\n";
        manifest << "mass_drift = "
                 << fmt(diag.back().mass_total - diag.front().mass_total)
                 << "\n";
        manifest << "clamp_events = " << diag.back().clamp_events << "\n";
    }
    manifest << "aborted = " << (art.aborted ? "yes" : "no") << "\n";
    if (art.aborted) {
        manifest << "abort_reason = " << art.abort_reason << "\n";
        manifest << "abort_time = " << fmt(art.abort_time) << "\n";
        manifest << "abort_step = " << art.abort_step << "\n";
    }
    if (!manifest)
        throw io_error("failed while writing " + (dir / "manifest.txt").string());
    manifest.close();

    if (art.aborted)
        std::cout << cfg.output_dir << ": aborted at t = " << fmt(art.abort_time)
                  << " s" << std::endl;
    else
        std::cout << cfg.output_dir << ": " << art.traj.times.size()
                  << " samples, final amplitude "
                  << fmt(art.metrics ? art.metrics->final_amplitude : 0.0)
                  << " veh/km" << std::endl;
    return art;
}

template <class Fn>
ExitStatus guard(std::string* error, Fn&& body) {
    try {
        return body();
    } catch (const config_error& e) {
        if (error) *error = e.what();
        return ExitStatus::config_error;
    } catch (const io_error& e) {
        if (error) *error = e.what();
        return ExitStatus::io_error;
    } catch (const solver_error& e) {
        if (error) *error = e.what();
        return ExitStatus::solver_error;
    } catch (const std::exception& e) {
        // domain/argument errors from the numerics are usage errors here
        if (error) *error = e.what();
        return ExitStatus::config_error;
    }
}

} // namespace

ClassField build_initial_single(const RunConfig& cfg) {
    const RingGrid g = cfg.grid();
    const ModelParams mp = cfg.params();
    InitialProfile p = sinusoidal_ic(g, mp.fd, cfg.rho_mean, cfg.rho_amplitude);
    return make_field(p.rho, p.v, mp.pl);
}

MixedField build_initial_mixed(const RunConfig& cfg) {
    const RingGrid g = cfg.grid();
    const ModelParams mp = cfg.params();
    switch (cfg.scenario) {
    case ScenarioKind::mixed_even:
        return even_mix_ic(g, mp.fd, mp.pl, cfg.penetration);
    case ScenarioKind::mixed_segregated:
        return segregated_mix_ic(g, mp.fd, mp.pl, cfg.penetration);
    case ScenarioKind::single_class:
        break;
    }
    throw config_error("scenario '" + to_string(cfg.scenario) +
                           "' has no mixed initial state",
                       "scenario", 0);
}

ExitStatus run_simulate(const RunConfig& cfg, std::string* error) {
    return guard(error, [&] {
        RunArtifacts art = execute_run(cfg);
        if (art.aborted) {
            if (error) *error = art.abort_reason;
            return ExitStatus::solver_error;
        }
        return ExitStatus::ok;
    });
}

AxisRange parse_axis_range(const std::string& text, const std::string& name) {
    auto bad = [&](const std::string& why) -> AxisRange {
        throw config_error("axis range '" + name + "': " + why + " in '" +
                               text + "'",
                           name, 0);
    };
    if (text.empty()) return bad("empty range");

    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() == 1) {
        double v = parse_range_double(parts[0], name, text);
        return AxisRange{v, v, 1};
    }
    if (parts.size() != 3) return bad("expected lo:hi:n");
    const double lo = parse_range_double(parts[0], name, text);
    const double hi = parse_range_double(parts[1], name, text);
    int n = 0;
    auto [ptr, ec] =
        std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
    if (ec != std::errc{} || ptr != parts[2].data() + parts[2].size())
        return bad("malformed point count '" + parts[2] + "'");
    if (n < 1) return bad("point count must be at least 1");
    return AxisRange{lo, hi, n};
}

ExitStatus run_stability(const RunConfig& cfg, const AxisRange& rho,
                         const AxisRange& k, const AxisRange& lookahead,
                         std::string* error) {
    return guard(error, [&] {
        cfg.validate();
        auto map =
            stability_map(rho, k, lookahead, cfg.tau, cfg.params().fd,
                          cfg.params().pl);
        make_output_dir(cfg.output_dir);
        auto out = open_out(fs::path(cfg.output_dir) / "stability.csv");
        out << "rho0,k,lookahead,margin,re_sigma_max,agree_flag\n";
        for (const auto& p : map) {
            const bool agree =
                (p.margin > 0.0) == (p.max_growth <= growth_tolerance);
            out << fmt(p.rho0) << ',' << fmt(p.k) << ',' << fmt(p.lookahead)
                << ',' << fmt(p.margin) << ',' << fmt(p.max_growth) << ','
                << (agree ? 1 : 0) << '\n';
        }
        if (!out)
            throw io_error("failed while writing stability.csv");
        std::cout << cfg.output_dir << ": " << map.size()
                  << " stability points" << std::endl;
        return ExitStatus::ok;
    });
}

namespace {

struct SweepMember {
    std::string name;
    RunConfig cfg;
};

std::vector<SweepMember> preset_members(const std::string& preset,
                                        const std::string& out_dir) {
    std::vector<SweepMember> members;
    auto add = [&](const std::string& name, const RunConfig& cfg) {
        SweepMember m{name, cfg};
        m.cfg.output_dir = out_dir + "/" + name;
        members.push_back(std::move(m));
    };
    if (preset == "lookahead_sweep") {
        const std::pair<double, double> runs[] = {
            {0.0, 600.0}, {15.0, 1200.0}, {100.0, 600.0}, {1000.0, 1200.0}};
        for (auto [ld, duration] : runs) {
            RunConfig cfg;
            cfg.lookahead = ld;
            cfg.duration = duration;
            add("ld_" + fmt(ld), cfg);
        }
        return members;
    }
    if (preset == "mixed_even_sweep" || preset == "mixed_segregated_sweep") {
        const ScenarioKind kind = preset == "mixed_even_sweep"
                                      ? ScenarioKind::mixed_even
                                      : ScenarioKind::mixed_segregated;
        const std::pair<double, double> runs[] = {
            {0.1, 1200.0}, {0.2, 1200.0}, {0.4, 600.0}};
        for (auto [r, duration] : runs) {
            RunConfig cfg;
            cfg.scenario = kind;
            cfg.penetration = r;
            cfg.lookahead = 100.0;
            cfg.duration = duration;
            add("r_" + fmt(r), cfg);
        }
        return members;
    }
    throw config_error("unknown sweep preset '" + preset + "'", "preset", 0);
}

} // namespace

ExitStatus run_sweep(const std::string& preset, const std::string& out_dir,
                     std::string* error) {
    return guard(error, [&] {
        auto members = preset_members(preset, out_dir);
        make_output_dir(out_dir);

        std::vector<RunArtifacts> results;
        results.reserve(members.size());
        for (const auto& m : members) results.push_back(execute_run(m.cfg));

        auto cmp = open_out(fs::path(out_dir) / "comparison.csv");
        cmp << "run,lookahead,penetration,initial_amplitude,peak_amplitude,"
               "final_amplitude,fitted_rate,convergence_time,clamp_events,"
               "status\n";
        bool any_abort = false;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto& m = members[i];
            const auto& art = results[i];
            any_abort = any_abort || art.aborted;
            cmp << m.name << ',' << fmt(m.cfg.lookahead) << ','
                << fmt(m.cfg.penetration) << ',';
            if (art.metrics) {
                const auto& mm = *art.metrics;
                cmp << fmt(mm.initial_amplitude) << ','
                    << fmt(mm.peak_amplitude) << ',' << fmt(mm.final_amplitude)
                    << ',' << fmt(mm.fitted_rate) << ',';
                if (mm.convergence_time) cmp << fmt(*mm.convergence_time);
            } else {
                cmp << ",,,,";
            }
            const auto& diag = art.traj.diagnostics;
            cmp << ',' << (diag.empty() ? 0 : diag.back().clamp_events) << ','
                << (art.aborted ? "aborted" : "ok") << '\n';
        }
        if (!cmp)
            throw io_error("failed while writing comparison.csv");
        cmp.close();
        if (any_abort) {
            if (error) *error = "one or more sweep members aborted";
            return ExitStatus::solver_error;
        }
        return ExitStatus::ok;
    });
}

} // namespace nlarz
