#include "gpckit/plant.hpp"

#include <cmath>
#include <stdexcept>

#include "gpckit/errors.hpp"

namespace gpckit {

std::string to_string(Discretization m) {
    return m == Discretization::kTustin ? "tustin" : "zoh";
}

Discretization discretization_from_string(const std::string& s) {
    if (s == "tustin") return Discretization::kTustin;
    if (s == "zoh") return Discretization::kZoh;
    throw ConfigError("unknown discretization '" + s + "' (expected tustin or zoh)");
}

void ConverterParams::validate() const {
    if (!(vg > 0.0)) throw std::invalid_argument("ConverterParams: vg must be > 0");
    if (!(l > 0.0)) throw std::invalid_argument("ConverterParams: l must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("ConverterParams: c must be > 0");
    if (!(r > 0.0)) throw std::invalid_argument("ConverterParams: r must be > 0");
    if (!(fs > 0.0)) throw std::invalid_argument("ConverterParams: fs must be > 0");
    if (!(vo_ref > vg)) {
        throw NotBoostable("ConverterParams: vo_ref must exceed vg for boost operation");
    }
    if (!(duty_min >= 0.0 && duty_min < duty_max && duty_max <= 1.0)) {
        throw std::invalid_argument("ConverterParams: need 0 <= duty_min < duty_max <= 1");
    }
}

OperatingPoint operating_point(const ConverterParams& p) {
    if (!(p.vo_ref > p.vg)) {
        throw NotBoostable("operating_point: vo_ref <= vg");
    }
    OperatingPoint op;
    op.d = 1.0 - p.vg / p.vo_ref;
    op.vo = p.vo_ref;
    op.il = p.vo_ref / ((1.0 - op.d) * p.r);
    return op;
}

namespace {

ContinuousTf build_tf(const ConverterParams& p, double dc_gain) {
    const OperatingPoint op = operating_point(p);
    const double od = 1.0 - op.d;
    const double tz = p.l / (od * od * p.r);   // RHP zero time constant
    const double a2 = p.l * p.c / (od * od);
    return ContinuousTf({dc_gain, -dc_gain * tz}, {1.0, tz, a2});
}

}  // namespace

ContinuousTf continuous_tf(const ConverterParams& p) {
    const OperatingPoint op = operating_point(p);
    return build_tf(p, op.vo / (1.0 - op.d));
}

ContinuousTf continuous_tf_vg_gain(const ConverterParams& p) {
    const OperatingPoint op = operating_point(p);
    return build_tf(p, p.vg / (1.0 - op.d));
}

DiscreteTf discrete_plant(const ConverterParams& p, Discretization method) {
    p.validate();
    const ContinuousTf ct = continuous_tf(p);
    return method == Discretization::kZoh ? zoh(ct, p.sample_time())
                                          : tustin(ct, p.sample_time());
}

StateDerivatives nonlinear_derivatives(const ConverterState& x, double duty,
                                       const ConverterParams& p) {
    StateDerivatives d;
    d.dil_dt = (p.vg - (1.0 - duty) * x.vo) / p.l;
    d.dvo_dt = (1.0 - duty) * x.il / p.c - x.vo / (p.c * p.r);
    return d;
}

}  // namespace gpckit
