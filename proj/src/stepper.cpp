#include "nlarz/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nlarz/errors.hpp"
#include "nlarz/nonlocal.hpp"
#include "nlarz/riemann.hpp"

namespace nlarz {

namespace {

struct StepContext {
    double time = 0.0;
    long step = 0;
};

[[noreturn]] void fail(const std::string& what, const StepContext& ctx) {
    throw solver_error(what + " at t = " + std::to_string(ctx.time) +
                           " s (step " + std::to_string(ctx.step) + ")",
                       ctx.time, ctx.step);
}

// Recovered velocities and local pressure data for one class. The pressure
// argument is the density the law is evaluated on: the class's own density
// for single-class flow, the frozen total density for mixed flow.
struct CellData {
    std::vector<double> v;
    std::vector<LocalPressure> lp;
};

CellData recover(const ClassField& f, const std::vector<double>& pressure_rho,
                 const PressureLaw& pl, std::uint64_t& clamp_events) {
    const int n = f.size();
    CellData d;
    d.v.resize(n);
    d.lp.resize(n);
    for (int i = 0; i < n; ++i) {
        d.lp[i] = local_pressure(pl, pressure_rho[i]);
        double v = f.y[i] / f.rho[i] - d.lp[i].h;
        if (v < 0.0) {
            ++clamp_events;
            v = 0.0;
        }
        d.v[i] = v;
    }
    return d;
}

double max_signal(const ClassField& f, const CellData& d) {
    double worst = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        double l1 = d.v[i] - f.rho[i] * d.lp[i].dh;
        worst = std::max(worst, std::max(std::abs(l1), std::abs(d.v[i])));
    }
    return worst;
}

// Post-step admissibility: finite state and recovered velocity within
// [0, v_f + 1] (negative recoveries clamp with a diagnostic instead).
void check_admissible(const ClassField& f, const std::vector<double>& h_new,
                      double v_max, const StepContext& ctx, const char* label) {
    for (int i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f.rho[i]) || !std::isfinite(f.y[i]))
            fail(std::string(label) + ": non-finite state in cell " +
                     std::to_string(i),
                 ctx);
        double v = f.y[i] / f.rho[i] - h_new[i];
        if (v > v_max)
            fail(std::string(label) + ": velocity " + std::to_string(v) +
                     " m/s exceeds the admissible ceiling in cell " +
                     std::to_string(i),
                 ctx);
    }
}

// HLL transport of one class. Fluxes live at interface i+1/2 between cells
// i and i+1; the update telescopes them around the ring.
void transport(const ClassField& f, const CellData& d, const RingGrid& g,
               double dt, std::vector<double>& rho_out,
               std::vector<double>& y_out) {
    const int n = f.size();
    std::vector<InterfaceFlux> flux(n);
    for (int i = 0; i < n; ++i) {
        int j = i + 1 == n ? 0 : i + 1;
        flux[i] = hll_flux(ConservedState{f.rho[i], f.y[i]}, d.lp[i],
                           ConservedState{f.rho[j], f.y[j]}, d.lp[j]);
    }
    const double lam = dt / g.dx;
    rho_out.resize(n);
    y_out.resize(n);
    for (int i = 0; i < n; ++i) {
        int im = i == 0 ? n - 1 : i - 1;
        rho_out[i] =
            std::max(f.rho[i] - lam * (flux[i].f_rho - flux[im].f_rho),
                     density_floor);
        y_out[i] = f.y[i] - lam * (flux[i].f_y - flux[im].f_y);
    }
}

// Implicit relaxation of y toward rho*(V(rho_star) + h_new), written in
// increment form so an equilibrium state is a bit-exact fixed point.
void relax(std::vector<double>& y, const std::vector<double>& rho,
           const std::vector<double>& target_v, const std::vector<double>& h_new,
           double dt, double tau) {
    const double w = dt / (dt + tau);
    for (std::size_t i = 0; i < y.size(); ++i) {
        double y_eq = rho[i] * (target_v[i] + h_new[i]);
        y[i] += (y_eq - y[i]) * w;
    }
}

ClassField step_single_at(const ClassField& f, const RingGrid& g,
                          const StepConfig& cfg, StepDiagnostics* diag,
                          const StepContext& ctx) {
    const ModelParams& mp = cfg.params;
    std::uint64_t clamps = 0;
    CellData d = recover(f, f.rho, mp.pl, clamps);
    double cfl = max_signal(f, d) * cfg.dt / g.dx;
    if (cfl > cfg.cfl_limit)
        fail("single-class step: Courant number " + std::to_string(cfl) +
                 " exceeds the limit " + std::to_string(cfg.cfl_limit),
             ctx);

    ClassField out;
    transport(f, d, g, cfg.dt, out.rho, out.y);

    LookaheadSpec spec = LookaheadSpec::uniform(mp.lookahead, g);
    std::vector<double> rho_star = lookahead_average(out.rho, spec);

    const int n = f.size();
    std::vector<double> target_v(n), h_new(n);
    for (int i = 0; i < n; ++i) {
        target_v[i] = equilibrium_speed(mp.fd, rho_star[i]);
        h_new[i] = pressure(mp.pl, out.rho[i]);
    }
    relax(out.y, out.rho, target_v, h_new, cfg.dt, mp.tau);
    check_admissible(out, h_new, mp.fd.v_f + 1.0, ctx, "single-class step");

    if (diag) diag->clamp_events += clamps;
    return out;
}

MixedField step_mixed_at(const MixedField& f, const RingGrid& g,
                         const StepConfig& cfg, StepDiagnostics* diag,
                         const StepContext& ctx) {
    const ModelParams& mp = cfg.params;
    std::vector<double> rho_s = f.total_density();
    for (int i = 0; i < static_cast<int>(rho_s.size()); ++i)
        if (rho_s[i] >= mp.fd.rho_j)
            fail("mixed step: total density " + std::to_string(rho_s[i]) +
                     " veh/km reached the jam density in cell " +
                     std::to_string(i),
                 ctx);

    std::uint64_t clamps = 0;
    // both classes see h and h' of the frozen current-time total density
    CellData dh = recover(f.hdv, rho_s, mp.pl, clamps);
    CellData dc = recover(f.cav, rho_s, mp.pl, clamps);
    double cfl = std::max(max_signal(f.hdv, dh), max_signal(f.cav, dc)) *
                 cfg.dt / g.dx;
    if (cfl > cfg.cfl_limit)
        fail("mixed step: Courant number " + std::to_string(cfl) +
                 " exceeds the limit " + std::to_string(cfg.cfl_limit),
             ctx);

    MixedField out;
    transport(f.hdv, dh, g, cfg.dt, out.hdv.rho, out.hdv.y);
    transport(f.cav, dc, g, cfg.dt, out.cav.rho, out.cav.y);

    std::vector<double> rho_s_new = out.total_density();
    for (int i = 0; i < static_cast<int>(rho_s_new.size()); ++i)
        if (rho_s_new[i] >= mp.fd.rho_j)
            fail("mixed step: total density " + std::to_string(rho_s_new[i]) +
                     " veh/km reached the jam density in cell " +
                     std::to_string(i),
                 ctx);
    LookaheadSpec spec = LookaheadSpec::uniform(mp.lookahead, g);
    std::vector<double> rho_star = lookahead_average(rho_s_new, spec);

    const int n = f.hdv.size();
    std::vector<double> target_h(n), target_c(n), h_new(n);
    for (int i = 0; i < n; ++i) {
        h_new[i] = pressure(mp.pl, rho_s_new[i]);
        target_h[i] = equilibrium_speed(mp.fd, rho_s_new[i]);
        target_c[i] = equilibrium_speed(mp.fd, rho_star[i]);
    }
    relax(out.hdv.y, out.hdv.rho, target_h, h_new, cfg.dt, mp.tau);
    relax(out.cav.y, out.cav.rho, target_c, h_new, cfg.dt, mp.tau);
    check_admissible(out.hdv, h_new, mp.fd.v_f + 1.0, ctx, "mixed step (hdv)");
    check_admissible(out.cav, h_new, mp.fd.v_f + 1.0, ctx, "mixed step (cav)");

    if (diag) diag->clamp_events += clamps;
    return out;
}

// Snapshot assembly. Mixed snapshots expose the total density and the
// flow-weighted mean speed alongside the per-class fields.
Snapshot snapshot_single(const ClassField& f, const PressureLaw& pl) {
    Snapshot s;
    s.rho = f.rho;
    s.v.resize(f.rho.size());
    for (std::size_t i = 0; i < f.rho.size(); ++i)
        s.v[i] = to_primitive(f.rho[i], f.y[i], pl);
    return s;
}

Snapshot snapshot_mixed(const MixedField& f, const PressureLaw& pl) {
    Snapshot s;
    const std::size_t n = f.hdv.rho.size();
    s.rho = f.total_density();
    s.v.resize(n);
    s.rho_h = f.hdv.rho;
    s.rho_c = f.cav.rho;
    s.v_h.resize(n);
    s.v_c.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double hs = pressure(pl, s.rho[i]);
        s.v_h[i] = std::max(f.hdv.y[i] / f.hdv.rho[i] - hs, 0.0);
        s.v_c[i] = std::max(f.cav.y[i] / f.cav.rho[i] - hs, 0.0);
        double flow = f.hdv.rho[i] * s.v_h[i] + f.cav.rho[i] * s.v_c[i];
        s.v[i] = flow / s.rho[i];
    }
    return s;
}

double field_amplitude(const std::vector<double>& rho) {
    auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
    return *hi - *lo;
}

void check_sampling(double duration, double dt, double sample_every) {
    if (!(duration > 0.0))
        throw std::invalid_argument("simulate: duration must be positive");
    if (!(sample_every > 0.0))
        throw std::invalid_argument("simulate: sample_every must be positive");
    double ratio = sample_every / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument(
            "simulate: sample_every must be a multiple of dt");
}

template <class Field, class StepFn, class SnapFn, class DiagFn>
Trajectory run_loop(const Field& initial, const StepConfig& cfg, double duration,
                    double sample_every, const SampleObserver& observer,
                    bool mixed, StepFn do_step, SnapFn snap, DiagFn fill_mass) {
    check_sampling(duration, cfg.dt, sample_every);
    cfg.validate();

    Trajectory traj;
    traj.mixed = mixed;
    const long steps = std::lround(duration / cfg.dt);
    const long stride = std::lround(sample_every / cfg.dt);

    StepDiagnostics counters;
    Field cur = initial;
    auto record = [&](double t) {
        Snapshot s = snap(cur);
        SampleDiagnostics d;
        fill_mass(cur, d);
        d.amplitude = field_amplitude(s.rho);
        d.clamp_events = counters.clamp_events;
        if (observer) observer(t, s, d);
        traj.times.push_back(t);
        traj.snapshots.push_back(std::move(s));
        traj.diagnostics.push_back(d);
    };

    record(0.0);
    for (long s = 1; s <= steps; ++s) {
        StepContext ctx{(s - 1) * cfg.dt, s};
        cur = do_step(cur, cfg, &counters, ctx);
        if (s % stride == 0 || s == steps) record(s * cfg.dt);
    }
    return traj;
}

}  // namespace

void StepConfig::validate() const {
    if (!(dt > 0.0))
        throw std::invalid_argument("step config: dt must be positive");
    if (!(cfl_limit > 0.0) || cfl_limit > 1.0)
        throw std::invalid_argument("step config: cfl_limit must be in (0, 1]");
    params.validate();
}

double cfl_number(const ClassField& f, const RingGrid& g, const StepConfig& cfg) {
    std::uint64_t clamps = 0;
    CellData d = recover(f, f.rho, cfg.params.pl, clamps);
    return max_signal(f, d) * cfg.dt / g.dx;
}

double cfl_number(const MixedField& f, const RingGrid& g, const StepConfig& cfg) {
    std::uint64_t clamps = 0;
    std::vector<double> rho_s = f.total_density();
    CellData dh = recover(f.hdv, rho_s, cfg.params.pl, clamps);
    CellData dc = recover(f.cav, rho_s, cfg.params.pl, clamps);
    return std::max(max_signal(f.hdv, dh), max_signal(f.cav, dc)) * cfg.dt /
           g.dx;
}

ClassField step_single(const ClassField& f, const RingGrid& g,
                       const StepConfig& cfg, StepDiagnostics* diag) {
    return step_single_at(f, g, cfg, diag, StepContext{});
}

MixedField step_mixed(const MixedField& f, const RingGrid& g,
                      const StepConfig& cfg, StepDiagnostics* diag) {
    return step_mixed_at(f, g, cfg, diag, StepContext{});
}

Trajectory simulate(const ClassField& initial, const RingGrid& g,
                    const StepConfig& cfg, double duration, double sample_every,
                    const SampleObserver& observer) {
    return run_loop(
        initial, cfg, duration, sample_every, observer, false,
        [&g](const ClassField& f, const StepConfig& c, StepDiagnostics* d,
             const StepContext& ctx) { return step_single_at(f, g, c, d, ctx); },
        [&](const ClassField& f) { return snapshot_single(f, cfg.params.pl); },
        [&g](const ClassField& f, SampleDiagnostics& d) {
            d.mass_total = total_mass(f, g);
        });
}

Trajectory simulate(const MixedField& initial, const RingGrid& g,
                    const StepConfig& cfg, double duration, double sample_every,
                    const SampleObserver& observer) {
    return run_loop(
        initial, cfg, duration, sample_every, observer, true,
        [&g](const MixedField& f, const StepConfig& c, StepDiagnostics* d,
             const StepContext& ctx) { return step_mixed_at(f, g, c, d, ctx); },
        [&](const MixedField& f) { return snapshot_mixed(f, cfg.params.pl); },
        [&g](const MixedField& f, SampleDiagnostics& d) {
            d.mass_hdv = total_mass(f.hdv, g);
            d.mass_cav = total_mass(f.cav, g);
            d.mass_total = d.mass_hdv + d.mass_cav;
        });
}

}  // namespace nlarz
