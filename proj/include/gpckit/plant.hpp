#pragma once

#include <string>

#include "gpckit/transfer.hpp"

namespace gpckit {

enum class Discretization { kTustin, kZoh };

std::string to_string(Discretization m);
Discretization discretization_from_string(const std::string& s);

/// Physical boost-converter parameters plus duty limits.
struct ConverterParams {
    double vg = 0.0;        // input voltage, V
    double vo_ref = 0.0;    // output voltage reference, V
    double l = 0.0;         // inductance, H
    double c = 0.0;         // capacitance, F
    double r = 0.0;         // load resistance, ohm
    double fs = 0.0;        // switching / control frequency, Hz
    double duty_min = 0.1;
    double duty_max = 0.9;

    double sample_time() const { return 1.0 / fs; }
    void validate() const;  // throws std::invalid_argument / NotBoostable
};

struct OperatingPoint {
    double d = 0.0;   // steady-state duty
    double il = 0.0;  // steady-state inductor current, A
    double vo = 0.0;  // steady-state output voltage, V
};

struct ConverterState {
    double il = 0.0;
    double vo = 0.0;
};

/// Steady state of the averaged dynamics at the commanded output voltage.
/// Throws NotBoostable when vo_ref <= vg.
OperatingPoint operating_point(const ConverterParams& p);

/// Duty-to-output small-signal transfer function, linearized around the
/// operating point of `p`:
///
///   G(s) = [Vo/(1-D)] (1 - s L/((1-D)^2 R))
///          / (LC/(1-D)^2 s^2 + L/((1-D)^2 R) s + 1)
///
/// The DC gain Vo/(1-D) = Vg/(1-D)^2 equals the steady-state sensitivity
/// dVo/dd of the averaged dynamics (see the finite-difference check in the
/// tests). A commonly printed variant puts Vg instead of Vo in the leading
/// factor; that form is available as continuous_tf_vg_gain for comparison
/// but does not match the averaged model's linearization.
ContinuousTf continuous_tf(const ConverterParams& p);

/// The Vg/(1-D)-gain variant of the same transfer function (identical zero
/// and denominator, DC gain lower by a factor (1-D)).
ContinuousTf continuous_tf_vg_gain(const ConverterParams& p);

/// Discretization of continuous_tf(p) at Ts = 1/fs.
DiscreteTf discrete_plant(const ConverterParams& p, Discretization method);

struct StateDerivatives {
    double dil_dt = 0.0;  // A/s
    double dvo_dt = 0.0;  // V/s
};

/// Averaged nonlinear converter dynamics:
///   dil/dt = (vg - (1-d) vo) / L
///   dvo/dt = (1-d) il / C - vo / (C R)
StateDerivatives nonlinear_derivatives(const ConverterState& x, double duty,
                                       const ConverterParams& p);

}  // namespace gpckit
