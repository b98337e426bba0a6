#include "gpckit/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "gpckit/errors.hpp"
#include "gpckit/roots.hpp"

namespace gpckit {

namespace {

using cd = std::complex<double>;

cd polyval_ascending(const std::vector<double>& c, cd x) {
    cd acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<double> derivative_ascending(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

std::vector<cd> cconv(const std::vector<cd>& p, const std::vector<cd>& q) {
    std::vector<cd> r(p.size() + q.size() - 1, cd(0.0));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

std::vector<double> strip_high_zeros(std::vector<double> v) {
    while (v.size() > 1 && v.back() == 0.0) v.pop_back();
    return v;
}

}  // namespace

ContinuousTf::ContinuousTf(std::vector<double> numerator, std::vector<double> denominator)
    : num(strip_high_zeros(std::move(numerator))), den(strip_high_zeros(std::move(denominator))) {
    if (num.empty() || den.empty()) {
        throw std::invalid_argument("ContinuousTf: empty coefficient vector");
    }
    if (den.back() == 0.0) {
        throw std::invalid_argument("ContinuousTf: denominator leading coefficient is zero");
    }
    if (num_degree() > den_degree()) {
        throw std::invalid_argument("ContinuousTf: improper transfer function (deg num > deg den)");
    }
}

std::complex<double> ContinuousTf::eval(std::complex<double> s) const {
    return polyval_ascending(num, s) / polyval_ascending(den, s);
}

DiscreteTf::DiscreteTf(Polynomial b_, Polynomial a_, double Ts)
    : b(std::move(b_)), a(std::move(a_)), sample_time(Ts) {
    if (!(Ts > 0.0)) {
        throw std::invalid_argument("DiscreteTf: sample_time must be positive");
    }
    const double a0 = a[0];
    if (a0 == 0.0) {
        throw DegenerateDenominator("DiscreteTf: denominator has zero constant coefficient");
    }
    if (a0 != 1.0) {
        a = a * (1.0 / a0);
        b = b * (1.0 / a0);
    }
}

double DiscreteTf::dc_gain() const {
    return b.eval_zinv(1.0).real() / a.eval_zinv(1.0).real();
}

DiscreteTf tustin(const ContinuousTf& ct, double Ts) {
    if (!(Ts > 0.0)) throw std::invalid_argument("tustin: Ts must be positive");
    const int n = std::max(ct.num_degree(), ct.den_degree());
    const double K = 2.0 / Ts;

    // (z-1)^i (z+1)^(n-i) in ascending powers of z, for each i
    auto basis = [n](int i) {
        std::vector<double> acc{1.0};
        std::vector<double> zm1{-1.0, 1.0};
        std::vector<double> zp1{1.0, 1.0};
        for (int k = 0; k < i; ++k) acc = conv(acc, zm1);
        for (int k = 0; k < n - i; ++k) acc = conv(acc, zp1);
        return acc;
    };

    std::vector<double> bz(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> az(static_cast<std::size_t>(n) + 1, 0.0);
    double Ki = 1.0;
    for (int i = 0; i <= n; ++i) {
        const std::vector<double> base = basis(i);
        const double cn = i <= ct.num_degree() ? ct.num[static_cast<std::size_t>(i)] : 0.0;
        const double cdk = i <= ct.den_degree() ? ct.den[static_cast<std::size_t>(i)] : 0.0;
        for (std::size_t j = 0; j < base.size(); ++j) {
            bz[j] += cn * Ki * base[j];
            az[j] += cdk * Ki * base[j];
        }
        Ki *= K;
    }

    // Ascending z -> ascending z^-1 is a reversal (divide by z^n).
    std::reverse(bz.begin(), bz.end());
    std::reverse(az.begin(), az.end());

    double scale = 0.0;
    for (double c : az) scale = std::max(scale, std::abs(c));
    if (std::abs(az[0]) <= 1e-14 * scale) {
        throw DegenerateDenominator("tustin: substitution annihilated the denominator");
    }
    return DiscreteTf(Polynomial(std::move(bz)), Polynomial(std::move(az)), Ts);
}

DiscreteTf zoh(const ContinuousTf& ct, double Ts) {
    if (!(Ts > 0.0)) throw std::invalid_argument("zoh: Ts must be positive");

    // H(s) = G(s)/s; poles are the roots of den plus one at the origin.
    std::vector<cd> nonzero_poles;
    int origin_mult = 1;
    if (ct.den_degree() >= 1) {
        // poly_roots wants z^-1-ascending == descending-in-variable order
        std::vector<double> desc(ct.den.rbegin(), ct.den.rend());
        const auto rts = poly_roots(Polynomial::raw(desc));
        double scale = 0.0;
        for (double c : ct.den) scale = std::max(scale, std::abs(c));
        for (const auto& r : rts) {
            if (std::abs(r) < 1e-9 * std::max(1.0, scale)) {
                ++origin_mult;
            } else {
                nonzero_poles.push_back(r);
            }
        }
    }
    if (origin_mult > 2) {
        throw UnsupportedPoleStructure("zoh: origin pole multiplicity above two in G(s)/s");
    }
    for (std::size_t i = 0; i < nonzero_poles.size(); ++i) {
        for (std::size_t j = i + 1; j < nonzero_poles.size(); ++j) {
            const double sep = std::abs(nonzero_poles[i] - nonzero_poles[j]);
            const double mag = std::max(std::abs(nonzero_poles[i]), std::abs(nonzero_poles[j]));
            if (sep <= 1e-7 * std::max(1.0, mag)) {
                throw UnsupportedPoleStructure("zoh: repeated nonzero pole");
            }
        }
    }

    // den_H(s) = s^origin_mult * q(s) with q monic-scaled from den's nonzero part:
    // den(s) = s^(origin_mult-1) * q(s) up to ordering, so q(s) = prod (s - p_i)
    // times den's leading coefficient.
    const double lead = ct.den.back();
    auto q_eval = [&](cd s) {
        cd acc = lead;
        for (const auto& p : nonzero_poles) acc *= (s - p);
        return acc;
    };
    auto q_deriv = [&](cd s) {
        // derivative of lead * prod(s - p_i)
        cd acc = 0.0;
        for (std::size_t i = 0; i < nonzero_poles.size(); ++i) {
            cd term = lead;
            for (std::size_t j = 0; j < nonzero_poles.size(); ++j) {
                if (j != i) term *= (s - nonzero_poles[j]);
            }
            acc += term;
        }
        return acc;
    };

    // Partial fractions of H: sum r_i/(s-p_i) + c1/s [+ c2/s^2].
    // Sampled at kTs: r_i exp(p_i k Ts) + c1 + c2 k Ts, whose z-transforms
    // (w = z^-1) read r_i/(1-alpha_i w), c1/(1-w), c2 Ts w/(1-w)^2.
    // Each term owns its alpha factor (or none) and 0..2 copies of (1-w);
    // the common denominator is prod(1-alpha_i w) * (1-w)^origin_mult.
    struct Term {
        cd gain;
        int own_pole;            // index into nonzero_poles, or -1
        int own_origin;          // copies of (1-w) owned
        std::vector<cd> extra;   // extra numerator in w
    };
    std::vector<Term> terms;

    std::vector<cd> alphas;
    alphas.reserve(nonzero_poles.size());
    for (const auto& p : nonzero_poles) alphas.push_back(std::exp(p * Ts));

    // Residue at a simple nonzero pole p of H = num / (s^m0 q):
    // num(p) / (p^m0 q'(p)), the q(p)=0 cross term vanishing.
    for (std::size_t i = 0; i < nonzero_poles.size(); ++i) {
        const cd p = nonzero_poles[i];
        cd denom = q_deriv(p);
        for (int k = 0; k < origin_mult; ++k) denom *= p;
        terms.push_back({polyval_ascending(ct.num, p) / denom,
                         static_cast<int>(i), 0, {cd(1.0)}});
    }
    const cd q0 = q_eval(0.0);
    const cd n0 = polyval_ascending(ct.num, 0.0);
    if (origin_mult == 1) {
        terms.push_back({n0 / q0, -1, 1, {cd(1.0)}});
    } else {
        const auto nd = derivative_ascending(ct.num);
        const cd c2 = n0 / q0;
        const cd c1 = (polyval_ascending(nd, 0.0) * q0 - n0 * q_deriv(0.0)) / (q0 * q0);
        terms.push_back({c1, -1, 1, {cd(1.0)}});
        terms.push_back({c2 * Ts, -1, 2, {cd(0.0), cd(1.0)}});
    }

    std::vector<cd> total_num{cd(0.0)};
    for (const auto& t : terms) {
        std::vector<cd> contrib = t.extra;
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (static_cast<int>(i) == t.own_pole) continue;
            contrib = cconv(contrib, {cd(1.0), -alphas[i]});
        }
        for (int k = 0; k < origin_mult - t.own_origin; ++k) {
            contrib = cconv(contrib, {cd(1.0), cd(-1.0)});
        }
        if (contrib.size() > total_num.size()) total_num.resize(contrib.size(), cd(0.0));
        for (std::size_t i = 0; i < contrib.size(); ++i) total_num[i] += t.gain * contrib[i];
    }

    // G(z) = (1-w) * total_num / common; the (1-w) cancels one origin copy.
    std::vector<cd> final_den{cd(1.0)};
    for (const auto& a : alphas) final_den = cconv(final_den, {cd(1.0), -a});
    for (int k = 0; k < origin_mult - 1; ++k) final_den = cconv(final_den, {cd(1.0), cd(-1.0)});

    auto to_real = [](const std::vector<cd>& v) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
        return r;
    };
    std::vector<double> bnum = to_real(total_num);
    std::vector<double> aden = to_real(final_den);

    // Structural leading zero of strictly proper systems: snap it exactly.
    if (ct.num_degree() < ct.den_degree() && !bnum.empty()) {
        double bmax = 0.0;
        for (double c : bnum) bmax = std::max(bmax, std::abs(c));
        if (std::abs(bnum[0]) <= 1e-10 * bmax) bnum[0] = 0.0;
    }
    return DiscreteTf(Polynomial(std::move(bnum)), Polynomial(std::move(aden)), Ts);
}

std::vector<double> impulse_coeffs(const DiscreteTf& tf, int n) {
    if (n < 1) throw std::invalid_argument("impulse_coeffs: n must be >= 1");
    std::vector<double> h(static_cast<std::size_t>(n), 0.0);
    const auto& b = tf.b;
    const auto& a = tf.a;
    for (int k = 0; k < n; ++k) {
        double v = b[static_cast<std::size_t>(k)];
        for (int i = 1; i <= std::min(k, a.degree()); ++i) {
            v -= a[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(k - i)];
        }
        h[static_cast<std::size_t>(k)] = v;
    }
    return h;
}

}  // namespace gpckit
