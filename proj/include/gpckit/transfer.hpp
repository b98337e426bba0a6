#pragma once

#include <vector>

#include "gpckit/polynomial.hpp"

namespace gpckit {

/// Continuous-time SISO transfer function, coefficients in ascending powers
/// of s. Proper or biproper (deg num <= deg den); den has a nonzero
/// highest-power coefficient.
struct ContinuousTf {
    std::vector<double> num;
    std::vector<double> den;

    ContinuousTf(std::vector<double> numerator, std::vector<double> denominator);

    int num_degree() const { return static_cast<int>(num.size()) - 1; }
    int den_degree() const { return static_cast<int>(den.size()) - 1; }

    std::complex<double> eval(std::complex<double> s) const;
};

/// Discrete-time transfer function b(z^-1)/a(z^-1) with monic a.
struct DiscreteTf {
    Polynomial b;
    Polynomial a;
    double sample_time = 0.0;

    DiscreteTf(Polynomial b_, Polynomial a_, double Ts);

    /// DC gain b(1)/a(1).
    double dc_gain() const;
};

/// Bilinear transform s = (2/Ts)(z-1)/(z+1), carried out exactly in
/// coefficient arithmetic. Throws DegenerateDenominator if the substitution
/// annihilates the denominator's leading z-power.
DiscreteTf tustin(const ContinuousTf& ct, double Ts);

/// Step-invariant (zero-order-hold) discrete equivalent via partial
/// fractions of G(s)/s. Supports distinct nonzero poles plus an origin pole
/// of multiplicity at most two in G(s)/s; throws UnsupportedPoleStructure
/// otherwise.
DiscreteTf zoh(const ContinuousTf& ct, double Ts);

/// First n coefficients of the long division b/a.
std::vector<double> impulse_coeffs(const DiscreteTf& tf, int n);

}  // namespace gpckit
