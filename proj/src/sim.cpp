#include "gpckit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gpckit/errors.hpp"

namespace gpckit {

namespace {

constexpr double kBlowupLimit = 1e6;
constexpr double kEquilibriumSeed = -1e-3;  // relative il offset at equilibrium start

struct State {
    double il = 0.0;
    double vo = 0.0;
};

// Classical fixed-step RK4 over one interval with constant duty.
void integrate(State& x, double duty, const ConverterParams& p, double h, int steps,
               bool& floored) {
    for (int i = 0; i < steps; ++i) {
        const ConverterState s0{x.il, x.vo};
        const auto k1 = nonlinear_derivatives(s0, duty, p);
        const auto k2 = nonlinear_derivatives(
            {x.il + 0.5 * h * k1.dil_dt, x.vo + 0.5 * h * k1.dvo_dt}, duty, p);
        const auto k3 = nonlinear_derivatives(
            {x.il + 0.5 * h * k2.dil_dt, x.vo + 0.5 * h * k2.dvo_dt}, duty, p);
        const auto k4 =
            nonlinear_derivatives({x.il + h * k3.dil_dt, x.vo + h * k3.dvo_dt}, duty, p);
        x.il += h / 6.0 * (k1.dil_dt + 2.0 * k2.dil_dt + 2.0 * k3.dil_dt + k4.dil_dt);
        x.vo += h / 6.0 * (k1.dvo_dt + 2.0 * k2.dvo_dt + 2.0 * k3.dvo_dt + k4.dvo_dt);
        if (x.vo < 0.0) {
            x.vo = 0.0;
            floored = true;
        }
    }
}

GpcSynthesis design(const ConverterParams& params, double design_ref, const GpcConfig& cfg,
                    Discretization method) {
    ConverterParams model = params;
    model.vo_ref = design_ref;
    model.validate();
    return synthesize(discrete_plant(model, method), cfg);
}

// Keeps controller memory across a re-synthesis (horizon or reference event).
void carry_state(const GpcSynthesis& syn, ControllerState& st) {
    int max_gprime_deg = 0;
    for (const auto& gp : syn.gprime_polys) max_gprime_deg = std::max(max_gprime_deg, gp.degree());
    st.du_history.resize(static_cast<std::size_t>(max_gprime_deg) + 1, 0.0);
    st.y_history.resize(static_cast<std::size_t>(syn.a_tilde.degree()),
                        st.y_history.empty() ? 0.0 : st.y_history.back());
}

}  // namespace

void Scenario::validate() const {
    if (!(duration > 0.0)) throw std::invalid_argument("Scenario: duration must be > 0");
    if (substeps < 1) throw std::invalid_argument("Scenario: substeps must be >= 1");
    double prev = -1.0;
    for (const auto& ev : events) {
        if (!(ev.time > prev)) {
            throw std::invalid_argument("Scenario: event times must be strictly increasing");
        }
        if (!(ev.time < duration)) {
            throw std::invalid_argument("Scenario: event times must precede the duration");
        }
        if (ev.kind == EventKind::kSetHorizon && ev.value < 1.0) {
            throw std::invalid_argument("Scenario: set_horizon value must be >= 1");
        }
        prev = ev.time;
    }
}

SimTrace simulate(const ConverterParams& params, const GpcConfig& cfg, const Scenario& scn,
                  Discretization method) {
    params.validate();
    cfg.validate();
    scn.validate();

    const double Ts = params.sample_time();
    const int n = static_cast<int>(std::llround(scn.duration / Ts));
    if (n < 1) throw std::invalid_argument("simulate: duration shorter than one period");

    ConverterParams plant_params = params;  // set_load mutates this side only
    const double ref0 = scn.initial_ref.value_or(params.vo_ref);
    double w = ref0;

    GpcConfig active_cfg = cfg;
    GpcSynthesis syn = design(params, ref0, active_cfg, method);

    State x;
    ControllerState st;
    if (scn.initial == InitialCondition::kEquilibrium) {
        ConverterParams at_ref = plant_params;
        at_ref.vo_ref = ref0;
        const OperatingPoint op = operating_point(at_ref);
        x.il = op.il * (1.0 + kEquilibriumSeed);
        x.vo = op.vo;
        st = initial_state(syn, op.d, op.vo);
    } else {
        x.il = 0.0;
        x.vo = 0.0;
        st = initial_state(syn, 0.0, 0.0);
    }

    SimTrace trace;
    trace.duty_min = params.duty_min;
    trace.duty_max = params.duty_max;
    trace.sample_time = Ts;
    trace.t.reserve(static_cast<std::size_t>(n));

    std::size_t next_event = 0;
    for (int k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * Ts;
        while (next_event < scn.events.size() &&
               scn.events[next_event].time <= t + 0.5 * Ts) {
            const SimEvent& ev = scn.events[next_event];
            trace.last_event_time = t;
            switch (ev.kind) {
                case EventKind::kSetLoad:
                    plant_params.r = ev.value;
                    plant_params.validate();
                    break;
                case EventKind::kSetRef:
                    w = ev.value;
                    syn = design(params, w, active_cfg, method);
                    carry_state(syn, st);
                    break;
                case EventKind::kSetHorizon:
                    active_cfg.horizon_p = static_cast<int>(std::llround(ev.value));
                    active_cfg.horizon_nu = std::min(active_cfg.horizon_nu, active_cfg.horizon_p);
                    syn = design(params, w, active_cfg, method);
                    carry_state(syn, st);
                    break;
            }
            ++next_event;
        }

        trace.t.push_back(t);
        trace.il.push_back(x.il);
        trace.vo.push_back(x.vo);
        trace.ref.push_back(w);

        const double u = control_step(syn, st, x.vo, w, params.duty_min, params.duty_max);
        trace.duty.push_back(u);

        if (scn.model == SimModel::kAveraged) {
            integrate(x, u, plant_params, Ts / scn.substeps, scn.substeps, trace.vo_floored);
        } else {
            // Sawtooth comparison: switch on (d = 1) while the carrier is
            // below the duty command, then off for the rest of the period.
            const double t_on = u * Ts;
            if (t_on > 0.0) {
                integrate(x, 1.0, plant_params, t_on / scn.substeps, scn.substeps,
                          trace.vo_floored);
            }
            if (t_on < Ts) {
                integrate(x, 0.0, plant_params, (Ts - t_on) / scn.substeps, scn.substeps,
                          trace.vo_floored);
            }
        }

        if (std::abs(x.il) > kBlowupLimit || std::abs(x.vo) > kBlowupLimit) {
            trace.blown_up = true;
            break;
        }
    }
    return trace;
}

SimMetrics metrics(const SimTrace& trace, double ref_final) {
    if (trace.t.empty()) throw std::invalid_argument("metrics: empty trace");
    SimMetrics m;
    const std::size_t n = trace.t.size();
    const double Ts = trace.sample_time;
    const double duration = static_cast<double>(n) * Ts;

    // steady-state error over the trailing window
    const std::size_t tail =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::max(0.010, 0.05 * duration) / Ts));
    const std::size_t tail_start = n > tail ? n - tail : 0;
    double acc = 0.0;
    for (std::size_t i = tail_start; i < n; ++i) acc += trace.vo[i];
    m.steady_state_error = std::abs(acc / static_cast<double>(n - tail_start) - ref_final);

    // overshoot after the last event: step responses measure travel beyond
    // the target in the approach direction; disturbance responses (already
    // at the target when the event hits) measure peak absolute deviation.
    std::size_t ev_idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (trace.t[i] >= trace.last_event_time) {
            ev_idx = i;
            break;
        }
    }
    const double start_err = trace.vo[ev_idx] - ref_final;
    const bool disturbance_like = std::abs(start_err) <= 0.02 * std::abs(ref_final);
    double peak = 0.0;
    for (std::size_t i = ev_idx; i < n; ++i) {
        const double dev = trace.vo[i] - ref_final;
        if (disturbance_like) {
            peak = std::max(peak, std::abs(dev));
        } else {
            const double dir = start_err < 0.0 ? 1.0 : -1.0;
            peak = std::max(peak, dev * dir);
        }
    }
    m.overshoot = std::max(0.0, peak);

    // 2% settling after the last event
    const double band = 0.02 * std::abs(ref_final);
    std::size_t settle = n;
    for (std::size_t i = n; i-- > ev_idx;) {
        if (std::abs(trace.vo[i] - ref_final) > band) break;
        settle = i;
    }
    if (settle < n) {
        m.settling_time_2pct = trace.t[settle] - trace.last_event_time;
    }

    // rail bookkeeping
    std::size_t railed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (trace.duty[i] == trace.duty_min || trace.duty[i] == trace.duty_max) ++railed;
    }
    m.duty_railed_fraction = static_cast<double>(railed) / static_cast<double>(n);

    // instability rule A: |vo - ref| > 0.5 ref sustained for more than 20 ms
    const std::size_t windowA = static_cast<std::size_t>(0.020 / Ts);
    std::size_t runA = 0;
    bool unstable = trace.blown_up;
    for (std::size_t i = 0; i < n && !unstable; ++i) {
        if (std::abs(trace.vo[i] - trace.ref[i]) > 0.5 * std::abs(trace.ref[i])) {
            if (++runA > windowA) unstable = true;
        } else {
            runA = 0;
        }
    }
    // rule B: railed at one limit for more than 50 consecutive periods with
    // non-decreasing |error|
    for (int side = 0; side < 2 && !unstable; ++side) {
        const double limit = side == 0 ? trace.duty_min : trace.duty_max;
        std::size_t run = 0;
        double prev_err = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double err = std::abs(trace.vo[i] - trace.ref[i]);
            const double tol = 1e-9 * std::max(1.0, std::abs(trace.ref[i]));
            if (trace.duty[i] == limit && (run == 0 || err >= prev_err - tol)) {
                if (++run > 50) {
                    unstable = true;
                    break;
                }
            } else {
                run = trace.duty[i] == limit ? 1 : 0;
            }
            prev_err = err;
        }
    }
    m.unstable = unstable;
    return m;
}

}  // namespace gpckit
