#include "gpckit/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace gpckit {

Polynomial Polynomial::raw(std::vector<double> c) {
    Polynomial p;
    if (c.empty()) c.push_back(0.0);
    p.coeffs_ = std::move(c);
    return p;
}

void Polynomial::normalize(double trim_tol) {
    if (coeffs_.empty()) {
        coeffs_.push_back(0.0);
        return;
    }
    const double scale = max_abs_coeff();
    const double cut = trim_tol * scale;
    while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= cut) {
        coeffs_.pop_back();
    }
}

bool Polynomial::is_zero() const {
    return coeffs_.size() == 1 && coeffs_[0] == 0.0;
}

bool Polynomial::is_monic(double tol) const {
    return std::abs(coeffs_[0] - 1.0) <= tol;
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

std::complex<double> Polynomial::eval_zinv(std::complex<double> zinv) const {
    // Horner from the highest power of z^-1
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * zinv + *it;
    }
    return acc;
}

std::complex<double> Polynomial::eval_z(std::complex<double> z) const {
    // p(z) = c0*z^n + c1*z^(n-1) + ... + cn
    std::complex<double> acc = 0.0;
    for (double c : coeffs_) acc = acc * z + c;
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<double> r(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) r[i] += rhs.coeffs_[i];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    std::vector<double> r(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) r[i] -= rhs.coeffs_[i];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    return poly_mul(*this, rhs);
}

Polynomial Polynomial::operator*(double s) const {
    std::vector<double> r = coeffs_;
    for (double& c : r) c *= s;
    return Polynomial(std::move(r));
}

Polynomial Polynomial::shifted(int k) const {
    if (is_zero()) return *this;
    std::vector<double> r(coeffs_.size() + static_cast<std::size_t>(k), 0.0);
    std::copy(coeffs_.begin(), coeffs_.end(), r.begin() + k);
    return Polynomial::raw(std::move(r));
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
    return Polynomial(conv(p.coeffs(), q.coeffs()));
}

std::vector<double> conv(const std::vector<double>& p, const std::vector<double>& q) {
    std::vector<double> r(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) {
            r[i + j] += p[i] * q[j];
        }
    }
    return r;
}

}  // namespace gpckit
