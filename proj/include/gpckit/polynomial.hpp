#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace gpckit {

/// Real polynomial in the delay operator z^-1, stored as ascending
/// coefficients c0 + c1*z^-1 + ... + cn*z^-n.
///
/// Normalization trims trailing coefficients whose magnitude falls below
/// `trim_tol` relative to the largest coefficient; the zero polynomial is
/// the single coefficient 0.
class Polynomial {
  public:
    static constexpr double kDefaultTrimTol = 1e-12;

    Polynomial() : coeffs_{0.0} {}
    Polynomial(std::initializer_list<double> c, double trim_tol = kDefaultTrimTol)
        : coeffs_(c) {
        normalize(trim_tol);
    }
    explicit Polynomial(std::vector<double> c, double trim_tol = kDefaultTrimTol)
        : coeffs_(std::move(c)) {
        normalize(trim_tol);
    }

    /// Raw coefficient vector kept exactly as given (no trimming). Used where
    /// structurally-zero trailing coefficients are meaningful, e.g. the
    /// closed-loop characteristic polynomial's origin poles.
    static Polynomial raw(std::vector<double> c);

    const std::vector<double>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::size_t size() const { return coeffs_.size(); }

    /// Coefficient of z^-i; zero beyond the stored degree.
    double operator[](std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : 0.0;
    }

    bool is_zero() const;
    bool is_monic(double tol = 0.0) const;
    double max_abs_coeff() const;

    /// Value at a point of the z^-1 plane (pass z^-1, not z).
    std::complex<double> eval_zinv(std::complex<double> zinv) const;

    /// Value at z, i.e. eval of the polynomial rewritten in positive powers
    /// of z and divided by z^degree: p(z^-1)|_{z^-1 = 1/z}.
    std::complex<double> eval_z(std::complex<double> z) const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(double s) const;

    /// Multiply by z^-k (prepend k zeros).
    Polynomial shifted(int k) const;

    bool operator==(const Polynomial& rhs) const { return coeffs_ == rhs.coeffs_; }

    /// The differencing operator 1 - z^-1.
    static Polynomial delta() { return Polynomial{1.0, -1.0}; }
    static Polynomial one() { return Polynomial{1.0}; }

  private:
    void normalize(double trim_tol);
    std::vector<double> coeffs_;
};

/// Convolution of coefficient vectors, trimmed per the normalization rule.
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);

/// Sum with no trimming of the result beyond exact construction; helper for
/// building fixed-length characteristic polynomials.
std::vector<double> conv(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace gpckit
