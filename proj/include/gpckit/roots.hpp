#pragma once

#include <complex>
#include <vector>

#include "gpckit/polynomial.hpp"

namespace gpckit {

/// All roots, in the z plane, of a polynomial given in z^-1 coefficients.
///
/// The polynomial c0 + c1*z^-1 + ... + cn*z^-n is rewritten as
/// c0*z^n + ... + cn and rooted via a balanced companion-matrix eigenvalue
/// computation after max-coefficient pre-scaling. Trailing coefficients that
/// are negligible against the largest one are deflated into exact roots at
/// the origin, so structural origin poles survive instead of silently
/// dropping the degree.
///
/// Throws ZeroPolynomial for the zero polynomial or degree < 1, and
/// ConvergenceFailure if the eigensolver fails or any root's residual
/// |p(root)| / max|c_i| exceeds 1e-8.
std::vector<std::complex<double>> poly_roots(const Polynomial& p);

}  // namespace gpckit
