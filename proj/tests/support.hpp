#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "gpckit/gpc.hpp"
#include "gpckit/plant.hpp"
#include "gpckit/transfer.hpp"

namespace testkit {

inline gpckit::ConverterParams table1(double r = 66.0, double vref = 70.0) {
    gpckit::ConverterParams p;
    p.vg = 50.0;
    p.vo_ref = vref;
    p.l = 15e-3;
    p.c = 470e-6;
    p.r = r;
    p.fs = 10e3;
    return p;
}

/// Dense fixed-step RK4 of the continuous step response, via the
/// controllable-canonical state-space realization. Independent of the
/// discretization code under test.
class StepResponseOracle {
  public:
    explicit StepResponseOracle(const gpckit::ContinuousTf& ct) {
        const int n = ct.den_degree();
        n_ = n;
        const double lead = ct.den.back();
        a_.assign(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) a_[static_cast<std::size_t>(i)] = ct.den[static_cast<std::size_t>(i)] / lead;
        std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
        for (int i = 0; i <= ct.num_degree(); ++i) b[static_cast<std::size_t>(i)] = ct.num[static_cast<std::size_t>(i)] / lead;
        d_ = b[static_cast<std::size_t>(n)];
        c_.assign(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) c_[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] - d_ * a_[static_cast<std::size_t>(i)];
    }

    /// y(t) for a unit step input from zero initial state.
    std::vector<double> sample(double Ts, int count, int substeps = 400) const {
        std::vector<double> x(static_cast<std::size_t>(n_), 0.0);
        std::vector<double> y;
        y.reserve(static_cast<std::size_t>(count));
        const double h = Ts / substeps;
        auto deriv = [&](const std::vector<double>& s) {
            std::vector<double> dx(static_cast<std::size_t>(n_), 0.0);
            for (int i = 0; i + 1 < n_; ++i) dx[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i + 1)];
            double last = 1.0;  // unit input
            for (int i = 0; i < n_; ++i) last -= a_[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
            if (n_ > 0) dx[static_cast<std::size_t>(n_ - 1)] = last;
            return dx;
        };
        auto output = [&](const std::vector<double>& s) {
            double v = d_;
            for (int i = 0; i < n_; ++i) v += c_[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
            return v;
        };
        for (int k = 0; k < count; ++k) {
            y.push_back(output(x));
            for (int st = 0; st < substeps; ++st) {
                const auto k1 = deriv(x);
                std::vector<double> t2(x), t3(x), t4(x);
                for (int i = 0; i < n_; ++i) t2[static_cast<std::size_t>(i)] += 0.5 * h * k1[static_cast<std::size_t>(i)];
                const auto k2 = deriv(t2);
                for (int i = 0; i < n_; ++i) t3[static_cast<std::size_t>(i)] += 0.5 * h * k2[static_cast<std::size_t>(i)];
                const auto k3 = deriv(t3);
                for (int i = 0; i < n_; ++i) t4[static_cast<std::size_t>(i)] += h * k3[static_cast<std::size_t>(i)];
                const auto k4 = deriv(t4);
                for (int i = 0; i < n_; ++i) {
                    x[static_cast<std::size_t>(i)] += h / 6.0 *
                        (k1[static_cast<std::size_t>(i)] + 2.0 * k2[static_cast<std::size_t>(i)] +
                         2.0 * k3[static_cast<std::size_t>(i)] + k4[static_cast<std::size_t>(i)]);
                }
            }
        }
        return y;
    }

  private:
    int n_ = 0;
    std::vector<double> a_;  // monic denominator, ascending
    std::vector<double> c_;
    double d_ = 0.0;
};

/// Discrete step response (cumulative impulse coefficients).
inline std::vector<double> discrete_step(const gpckit::DiscreteTf& tf, int count) {
    const auto h = gpckit::impulse_coeffs(tf, count);
    std::vector<double> y(h.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        acc += h[i];
        y[i] = acc;
    }
    return y;
}

/// Random strictly stable second-order continuous system with unit-scale
/// coefficients; poles have real part < -eps by construction.
inline gpckit::ContinuousTf random_stable_second_order(std::mt19937& rng) {
    std::uniform_real_distribution<double> wn_dist(20.0, 2000.0);
    std::uniform_real_distribution<double> zeta_dist(0.05, 1.5);
    std::uniform_real_distribution<double> gain_dist(-50.0, 50.0);
    std::uniform_real_distribution<double> zero_dist(-5e-3, 5e-3);
    const double wn = wn_dist(rng);
    const double zeta = zeta_dist(rng);
    double k = gain_dist(rng);
    if (std::abs(k) < 0.5) k = 1.0;
    const double tz = zero_dist(rng);
    // k (1 + tz s) / (s^2/wn^2 + 2 zeta s / wn + 1)
    return gpckit::ContinuousTf({k, k * tz}, {1.0, 2.0 * zeta / wn, 1.0 / (wn * wn)});
}

/// Random stable monic A(z^-1) with real roots in (-0.9, 0.9), degree 1..max_deg.
inline gpckit::Polynomial random_stable_monic(std::mt19937& rng, int max_deg = 4) {
    std::uniform_int_distribution<int> deg_dist(1, max_deg);
    std::uniform_real_distribution<double> root_dist(-0.9, 0.9);
    const int deg = deg_dist(rng);
    std::vector<double> c{1.0};
    for (int i = 0; i < deg; ++i) {
        const double r = root_dist(rng);
        // multiply by (1 - r z^-1)
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j] += c[j];
            next[j + 1] -= r * c[j];
        }
        c = std::move(next);
    }
    return gpckit::Polynomial::raw(c);
}

/// Golden-section search for the minimum of a 1-D unimodal function, with a
/// final parabolic-vertex refinement. Pure golden-section bottoms out near
/// sqrt(eps * J / J'') because it compares nearly equal function values; the
/// three-point parabola recovers the vertex of quadratic costs to machine
/// precision.
inline double golden_section(const std::function<double(double)>& f, double lo, double hi,
                             double tol = 1e-10, int max_iter = 200) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    const double m = 0.5 * (a + b);
    // wide spacing conditions the curvature estimate f0 - 2 f1 + f2 well
    // against cancellation; the fit is exact for quadratic costs
    const double h = std::max(10.0, 1e-2 * std::abs(m));
    const double f0 = f(m - h), f1 = f(m), f2 = f(m + h);
    const double denom = f0 - 2.0 * f1 + f2;
    if (std::abs(denom) < 1e-300) return m;
    return m + h * 0.5 * (f0 - f2) / denom;
}

/// Linear CARIMA closed-loop simulation: plant y = (b_model/a) u(k-1) as a
/// difference equation, controller via control_step with wide duty limits.
/// Returns the peak |y - w| over `samples` steps after a small seed.
inline double linear_loop_peak(const gpckit::GpcSynthesis& syn, double w, double seed,
                               int samples) {
    const auto& a = syn.plant.a;
    const auto& bm = syn.b_model;
    const int na = a.degree();
    const int nb = bm.degree();
    std::vector<double> y_hist(static_cast<std::size_t>(na) + 1, 0.0);  // y(k-1), y(k-2), ...
    std::vector<double> u_hist(static_cast<std::size_t>(nb) + 2, 0.0);  // u(k-1), u(k-2), ...

    gpckit::ControllerState st = gpckit::initial_state(syn, 0.0, 0.0);
    double y = seed;
    double peak = 0.0;
    for (int k = 0; k < samples; ++k) {
        peak = std::max(peak, std::abs(y - w));
        const double u = gpckit::control_step(syn, st, y, w, -1e18, 1e18);
        // advance the plant: y(k+1) = -a1 y(k) ... + bm0 u(k) + bm1 u(k-1) ...
        double ynext = -a[1] * y;
        for (int i = 2; i <= na; ++i) ynext -= a[static_cast<std::size_t>(i)] * y_hist[static_cast<std::size_t>(i - 2)];
        ynext += bm[0] * u;
        for (int i = 1; i <= nb; ++i) ynext += bm[static_cast<std::size_t>(i)] * u_hist[static_cast<std::size_t>(i - 1)];
        y_hist.insert(y_hist.begin(), y);
        y_hist.pop_back();
        u_hist.insert(u_hist.begin(), u);
        u_hist.pop_back();
        y = ynext;
        if (std::abs(y) > 1e12) return 1e12;  // clearly diverged
    }
    return peak;
}

}  // namespace testkit
