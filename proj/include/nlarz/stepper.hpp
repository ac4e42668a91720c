#ifndef NLARZ_STEPPER_HPP
#define NLARZ_STEPPER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "nlarz/grid.hpp"
#include "nlarz/model.hpp"

namespace nlarz {

struct StepConfig {
    double dt = 0.05; // [s]
    ModelParams params;
    double cfl_limit = 0.9;

    void validate() const;
};

/** Per-run counters updated by the steppers. */
struct StepDiagnostics {
    std::uint64_t clamp_events = 0; // negative recovered velocities clamped
};

/** Courant number max_i max(|lambda1_i|, |lambda2_i|) * dt/dx. */
double cfl_number(const ClassField& f, const RingGrid& g, const StepConfig& cfg);
double cfl_number(const MixedField& f, const RingGrid& g, const StepConfig& cfg);

/** One step of the single-class scheme: HLL transport of (rho, y), look-ahead
 * average on the updated density, then implicit relaxation of y toward
 * rho*(V(rho*) + h(rho)). Throws solver_error on CFL violation or a
 * non-finite/blown-up state. */
ClassField step_single(const ClassField& f, const RingGrid& g,
                       const StepConfig& cfg, StepDiagnostics* diag = nullptr);

/** One step of the mixed-class scheme. Both classes are transported with the
 * pressure evaluated on the total density frozen at the current time level;
 * HDVs then relax toward V(rho_s), CAVs toward V(rho*) of the updated total
 * density. */
MixedField step_mixed(const MixedField& f, const RingGrid& g,
                      const StepConfig& cfg, StepDiagnostics* diag = nullptr);

/** State sampled at one instant. Per-class vectors are empty for
 * single-class runs; for mixed runs rho is the total density and v the
 * flow-weighted mean speed. */
struct Snapshot {
    std::vector<double> rho;
    std::vector<double> v;
    std::vector<double> rho_h, v_h;
    std::vector<double> rho_c, v_c;
};

struct SampleDiagnostics {
    double mass_total = 0;          // [veh]
    double mass_hdv = 0, mass_cav = 0;
    double amplitude = 0;           // max-min of rho (total density) [veh/km]
    std::uint64_t clamp_events = 0; // cumulative
};

struct Trajectory {
    bool mixed = false;
    std::vector<double> times;
    std::vector<Snapshot> snapshots;
    std::vector<SampleDiagnostics> diagnostics;
};

using SampleObserver =
    std::function<void(double t, const Snapshot&, const SampleDiagnostics&)>;

/** Repeated stepping with snapshots every sample_every seconds (which must be
 * a multiple of dt) plus the initial and final instants. Solver errors
 * propagate with the failing time attached; the observer, when given, has
 * already seen every completed sample. */
Trajectory simulate(const ClassField& initial, const RingGrid& g,
                    const StepConfig& cfg, double duration, double sample_every,
                    const SampleObserver& observer = {});
Trajectory simulate(const MixedField& initial, const RingGrid& g,
                    const StepConfig& cfg, double duration, double sample_every,
                    const SampleObserver& observer = {});

} // namespace nlarz

#endif
