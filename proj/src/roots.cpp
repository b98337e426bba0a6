#include "gpckit/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "gpckit/errors.hpp"

namespace gpckit {

namespace {

// Parlett-Reinsch style balancing by powers of two; keeps eigenvalues exact.
void balance(Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            double row = m.row(i).lpNorm<1>();
            double col = m.col(i).lpNorm<1>();
            if (row == 0.0 || col == 0.0) continue;
            int exponent = 0;
            std::frexp(row / col, &exponent);
            exponent /= 2;
            if (exponent != 0) {
                const double sc = std::ldexp(col, exponent);
                const double sr = std::ldexp(row, -exponent);
                if (sc + sr < 0.9 * (col + row)) {
                    changed = true;
                    m.row(i) *= std::ldexp(1.0, -exponent);
                    m.col(i) *= std::ldexp(1.0, exponent);
                }
            }
        }
    }
}

}  // namespace

std::vector<std::complex<double>> poly_roots(const Polynomial& p) {
    if (p.is_zero()) {
        throw ZeroPolynomial("poly_roots: zero polynomial has no defined roots");
    }
    if (p.degree() < 1) {
        throw ZeroPolynomial("poly_roots: degree must be >= 1");
    }

    // In z the coefficients read c0*z^n + c1*z^(n-1) + ... + cn; near-zero
    // trailing c's are roots at the origin.
    std::vector<double> c = p.coeffs();
    const double scale = p.max_abs_coeff();
    const double tiny = 1e-14 * scale;

    std::vector<std::complex<double>> roots;
    while (c.size() > 1 && std::abs(c.back()) <= tiny) {
        roots.emplace_back(0.0, 0.0);
        c.pop_back();
    }
    // Leading near-zeros (vanishing c0) would mean a lower effective degree
    // in z; drop them so the companion matrix stays well posed.
    std::size_t lead = 0;
    while (lead + 1 < c.size() && std::abs(c[lead]) <= tiny) ++lead;
    c.erase(c.begin(), c.begin() + static_cast<long>(lead));

    const int n = static_cast<int>(c.size()) - 1;
    if (n >= 1) {
        // Monic in z: z^n + (c1/c0) z^(n-1) + ... + cn/c0
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
        for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(n - i)] / c[0];
        balance(companion);

        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
        if (solver.info() != Eigen::Success) {
            throw ConvergenceFailure("poly_roots: companion eigensolver did not converge");
        }
        for (int i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
    }

    for (const auto& r : roots) {
        const double residual = std::abs(p.eval_z(r)) / scale;
        if (residual >= 1e-8) {
            throw ConvergenceFailure("poly_roots: root residual " + std::to_string(residual) +
                                     " exceeds tolerance");
        }
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        return std::abs(a) < std::abs(b);
    });
    return roots;
}

}  // namespace gpckit
