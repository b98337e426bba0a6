#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpckit/gpc.hpp"
#include "gpckit/plant.hpp"

namespace gpckit {

enum class EventKind { kSetHorizon, kSetLoad, kSetRef };
enum class InitialCondition { kEquilibrium, kZeroState };
enum class SimModel { kAveraged, kSwitched };

struct SimEvent {
    double time = 0.0;
    EventKind kind = EventKind::kSetRef;
    double value = 0.0;  // horizon cast to int for kSetHorizon
};

struct Scenario {
    double duration = 0.0;
    std::vector<SimEvent> events;  // strictly increasing times, < duration
    InitialCondition initial = InitialCondition::kEquilibrium;
    SimModel model = SimModel::kAveraged;
    int substeps = 10;
    std::optional<double> initial_ref;  // defaults to params.vo_ref
    std::string note;

    void validate() const;
};

/// Per-control-period series. il/vo are the states sampled at the start of
/// each period (what the controller measured); duty is what it applied.
struct SimTrace {
    std::vector<double> t;
    std::vector<double> il;
    std::vector<double> vo;
    std::vector<double> duty;
    std::vector<double> ref;
    bool blown_up = false;    // a state magnitude exceeded 1e6, trace truncated
    bool vo_floored = false;  // the physical vo >= 0 clamp engaged
    double duty_min = 0.0;
    double duty_max = 1.0;
    double last_event_time = 0.0;
    double sample_time = 0.0;
};

struct SimMetrics {
    double steady_state_error = 0.0;
    double overshoot = 0.0;
    double settling_time_2pct = -1.0;  // -1: never settled
    bool unstable = false;
    double duty_railed_fraction = 0.0;
};

/// Closed-loop simulation of the averaged (or switched) converter under the
/// synthesized controller, at a fixed control period Ts = 1/fs.
///
/// Equilibrium starts rest at the initial reference's operating point with
/// the inductor current offset by -0.1% — a deterministic stand-in for the
/// measurement noise that seeds unstable modes on hardware (the sign makes
/// divergent runs rail at duty_min). set_ref events re-synthesize the
/// predictor at the new commanded operating point; set_load events change
/// only the simulated plant. set_horizon re-synthesizes preserving the
/// controller memory.
SimTrace simulate(const ConverterParams& params, const GpcConfig& cfg, const Scenario& scn,
                  Discretization method);

/// Post-run metrics against the final reference value.
SimMetrics metrics(const SimTrace& trace, double ref_final);

}  // namespace gpckit
