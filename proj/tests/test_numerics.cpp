#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "gpckit/errors.hpp"
#include "gpckit/polynomial.hpp"
#include "gpckit/roots.hpp"
#include "gpckit/transfer.hpp"
#include "support.hpp"

using namespace gpckit;
using testkit::StepResponseOracle;

TEST_CASE("polynomial basics") {
    SUBCASE("trailing trim and zero representation") {
        Polynomial p({1.0, 2.0, 0.0, 1e-15});
        CHECK(p.degree() == 1);
        Polynomial z({0.0, 0.0, 0.0});
        CHECK(z.is_zero());
        CHECK(z.degree() == 0);
    }

    SUBCASE("raw keeps structural zeros") {
        Polynomial p = Polynomial::raw({1.0, -2.0, 1.0, 0.0});
        CHECK(p.degree() == 3);
    }

    SUBCASE("difference of squares") {
        const Polynomial prod = poly_mul(Polynomial{1.0, -1.0}, Polynomial{1.0, 1.0});
        CHECK(prod == Polynomial{1.0, 0.0, -1.0});
    }

    SUBCASE("multiplicative identity") {
        const Polynomial p{3.0, -0.5, 2.0};
        CHECK(poly_mul(p, Polynomial::one()) == p);
    }

    SUBCASE("delta times a quadratic raises the degree by one") {
        // nominal-plant-shaped denominator
        const Polynomial a{1.0, -1.9, 0.95};
        const Polynomial at = poly_mul(Polynomial::delta(), a);
        CHECK(at.degree() == a.degree() + 1);
        // hand convolution: (1 - z^-1)(1 - 1.9 z^-1 + 0.95 z^-2)
        CHECK(at[0] == doctest::Approx(1.0));
        CHECK(at[1] == doctest::Approx(-2.9));
        CHECK(at[2] == doctest::Approx(0.95 + 1.9));
        CHECK(at[3] == doctest::Approx(-0.95));
    }
}

TEST_CASE("poly_mul is commutative and associative on random inputs") {
    std::mt19937 rng(7321);
    std::uniform_real_distribution<double> coeff(-5.0, 5.0);
    std::uniform_int_distribution<int> deg(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        auto make = [&]() {
            std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
            for (auto& x : c) x = coeff(rng);
            return Polynomial::raw(c);
        };
        const Polynomial p = make(), q = make(), r = make();
        const Polynomial pq = poly_mul(p, q), qp = poly_mul(q, p);
        REQUIRE(pq.size() == qp.size());
        for (std::size_t i = 0; i < pq.size(); ++i) {
            CHECK(pq[i] == doctest::Approx(qp[i]).epsilon(1e-12));
        }
        const Polynomial lhs = poly_mul(poly_mul(p, q), r);
        const Polynomial rhs = poly_mul(p, poly_mul(q, r));
        const std::size_t n = std::max(lhs.size(), rhs.size());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("poly_roots") {
    SUBCASE("symmetric quadratic 1 - z^-2") {
        auto roots = poly_roots(Polynomial{1.0, 0.0, -1.0});
        REQUIRE(roots.size() == 2);
        std::sort(roots.begin(), roots.end(),
                  [](const auto& a, const auto& b) { return a.real() < b.real(); });
        CHECK(std::abs(roots[0] + 1.0) < 1e-12);
        CHECK(std::abs(roots[1] - 1.0) < 1e-12);
    }

    SUBCASE("integrator pole 1 - z^-1") {
        const auto roots = poly_roots(Polynomial{1.0, -1.0});
        REQUIRE(roots.size() == 1);
        CHECK(std::abs(roots[0] - 1.0) < 1e-14);
    }

    SUBCASE("zero polynomial and constants are rejected") {
        CHECK_THROWS_AS(poly_roots(Polynomial{0.0}), ZeroPolynomial);
        CHECK_THROWS_AS(poly_roots(Polynomial{4.0}), ZeroPolynomial);
    }

    SUBCASE("structural origin roots survive") {
        // z^3 view of 1 - 0.5 z^-1 with two vanishing trailing coefficients
        const auto roots = poly_roots(Polynomial::raw({1.0, -0.5, 0.0, 1e-17}));
        REQUIRE(roots.size() == 3);
        CHECK(std::abs(roots[0]) < 1e-9);
        CHECK(std::abs(roots[1]) < 1e-9);
        CHECK(std::abs(roots[2] - 0.5) < 1e-12);
    }
}

TEST_CASE("poly_roots recovers random root sets with small residuals") {
    std::mt19937 rng(991);
    std::uniform_real_distribution<double> root(-0.95, 0.95);
    std::uniform_int_distribution<int> deg(1, 7);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = deg(rng);
        std::vector<double> expected;
        std::vector<double> c{1.0};
        for (int i = 0; i < n; ++i) {
            const double r = root(rng);
            expected.push_back(r);
            std::vector<double> next(c.size() + 1, 0.0);
            for (std::size_t j = 0; j < c.size(); ++j) {
                next[j] += c[j];
                next[j + 1] -= r * c[j];
            }
            c = std::move(next);
        }
        const Polynomial p = Polynomial::raw(c);
        auto roots = poly_roots(p);
        REQUIRE(static_cast<int>(roots.size()) == n);
        // residual bound is part of the contract
        for (const auto& r : roots) {
            CHECK(std::abs(p.eval_z(r)) / p.max_abs_coeff() < 1e-8);
        }
        std::sort(expected.begin(), expected.end());
        std::sort(roots.begin(), roots.end(),
                  [](const auto& a, const auto& b) { return a.real() < b.real(); });
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(roots[static_cast<std::size_t>(i)] - expected[static_cast<std::size_t>(i)]) < 2e-5);
        }
    }
}

TEST_CASE("ContinuousTf validation") {
    CHECK_THROWS(ContinuousTf({1.0}, {0.0}));             // zero denominator
    CHECK_THROWS(ContinuousTf({1.0, 2.0, 3.0}, {1.0}));   // improper
    CHECK_THROWS(ContinuousTf({}, {1.0}));                // empty numerator
    CHECK_NOTHROW(ContinuousTf({1.0, 1.0}, {1.0, 1.0}));  // biproper is fine
    // trailing high-power zeros collapse the stored degree
    CHECK(ContinuousTf({1.0}, {2.0, 0.0}).den_degree() == 0);
}

TEST_CASE("tustin") {
    SUBCASE("trapezoidal integrator") {
        const DiscreteTf d = tustin(ContinuousTf({1.0}, {0.0, 1.0}), 0.1);
        // (Ts/2)(1 + z^-1)/(1 - z^-1)
        CHECK(d.b[0] == doctest::Approx(0.05));
        CHECK(d.b[1] == doctest::Approx(0.05));
        CHECK(d.a[0] == doctest::Approx(1.0));
        CHECK(d.a[1] == doctest::Approx(-1.0));
    }

    SUBCASE("constant gain passes through") {
        const DiscreteTf d = tustin(ContinuousTf({3.5}, {1.0}), 1e-4);
        CHECK(d.b[0] == doctest::Approx(3.5));
        CHECK(d.a.degree() == 0);
    }

    SUBCASE("frequency identity on the nominal plant") {
        // G_d(e^{jwTs}) must equal G_c(j (2/Ts) tan(wTs/2)) exactly
        const auto ct = continuous_tf(testkit::table1());
        const double Ts = 1e-4;
        const DiscreteTf d = tustin(ct, Ts);
        for (double w : {100.0, 500.0, 2000.0, 10000.0}) {
            const std::complex<double> z = std::exp(std::complex<double>(0.0, w * Ts));
            const std::complex<double> gd = d.b.eval_zinv(1.0 / z) / d.a.eval_zinv(1.0 / z);
            const std::complex<double> s(0.0, 2.0 / Ts * std::tan(w * Ts / 2.0));
            const std::complex<double> gc = ct.eval(s);
            CHECK(std::abs(gd - gc) / std::abs(gc) < 1e-10);
        }
    }

    SUBCASE("degenerate denominator is reported") {
        // den root exactly at s = 2/Ts
        const double Ts = 0.5;
        CHECK_THROWS_AS(tustin(ContinuousTf({1.0}, {-4.0, 1.0}), Ts), DegenerateDenominator);
    }
}

TEST_CASE("tustin maps strictly stable systems inside the unit circle") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        const ContinuousTf ct = testkit::random_stable_second_order(rng);
        const DiscreteTf d = tustin(ct, 1e-4);
        const auto poles = poly_roots(d.a);
        for (const auto& p : poles) CHECK(std::abs(p) < 1.0);
    }
}

TEST_CASE("zoh") {
    SUBCASE("integrator becomes a sampled ramp") {
        const DiscreteTf d = zoh(ContinuousTf({1.0}, {0.0, 1.0}), 0.25);
        // Ts z^-1 / (1 - z^-1)
        CHECK(d.b[0] == doctest::Approx(0.0));
        CHECK(d.b[1] == doctest::Approx(0.25));
        CHECK(d.a[1] == doctest::Approx(-1.0));
    }

    SUBCASE("constant gain passes through") {
        const DiscreteTf d = zoh(ContinuousTf({2.0}, {1.0}), 1e-3);
        CHECK(d.b[0] == doctest::Approx(2.0));
        CHECK(d.a.degree() == 0);
    }

    SUBCASE("nominal plant is strictly proper with b0 = 0") {
        const DiscreteTf d = zoh(continuous_tf(testkit::table1()), 1e-4);
        CHECK(d.b[0] == 0.0);
        CHECK(d.b.degree() == 2);
        CHECK(d.a.degree() == 2);
    }

    SUBCASE("plant with an integrator: double origin pole in G(s)/s") {
        // 1 / (s (1 + tau s)) against the dense step-response oracle
        const double tau = 2e-3;
        const ContinuousTf ct({1.0}, {0.0, 1.0, tau});
        const double Ts = 1e-4;
        const DiscreteTf d = zoh(ct, Ts);
        const auto yd = testkit::discrete_step(d, 50);
        const auto yc = testkit::StepResponseOracle(ct).sample(Ts, 50);
        double scale = 0.0;
        for (double v : yc) scale = std::max(scale, std::abs(v));
        for (int k = 0; k < 50; ++k) {
            CHECK(std::abs(yd[static_cast<std::size_t>(k)] - yc[static_cast<std::size_t>(k)]) / scale < 1e-9);
        }
    }

    SUBCASE("repeated nonzero poles are rejected") {
        // (s+10)^2 denominator
        CHECK_THROWS_AS(zoh(ContinuousTf({1.0}, {100.0, 20.0, 1.0}), 1e-3),
                        UnsupportedPoleStructure);
    }

    SUBCASE("double integrator is beyond the supported origin multiplicity") {
        CHECK_THROWS_AS(zoh(ContinuousTf({1.0}, {0.0, 0.0, 1.0}), 1e-3),
                        UnsupportedPoleStructure);
    }
}

TEST_CASE("zoh step invariance against dense integration") {
    SUBCASE("nominal plant, 50 samples") {
        const auto ct = continuous_tf(testkit::table1());
        const double Ts = 1e-4;
        const DiscreteTf d = zoh(ct, Ts);
        const auto yd = testkit::discrete_step(d, 50);
        const auto yc = StepResponseOracle(ct).sample(Ts, 50);
        double scale = 0.0;
        for (double v : yc) scale = std::max(scale, std::abs(v));
        for (int k = 0; k < 50; ++k) {
            CHECK(std::abs(yd[static_cast<std::size_t>(k)] - yc[static_cast<std::size_t>(k)]) / scale < 1e-9);
        }
    }

    SUBCASE("randomized stable systems") {
        std::mt19937 rng(20240917);
        for (int trial = 0; trial < 40; ++trial) {
            const ContinuousTf ct = testkit::random_stable_second_order(rng);
            const double Ts = 1e-4;
            const DiscreteTf d = zoh(ct, Ts);
            const auto yd = testkit::discrete_step(d, 50);
            const auto yc = StepResponseOracle(ct).sample(Ts, 50);
            double scale = 0.0;
            for (double v : yc) scale = std::max(scale, std::abs(v));
            for (int k = 0; k < 50; ++k) {
                CHECK(std::abs(yd[static_cast<std::size_t>(k)] - yc[static_cast<std::size_t>(k)]) / scale < 1e-9);
            }
        }
    }

    SUBCASE("strictly proper randomized systems keep b0 = 0") {
        std::mt19937 rng(5150);
        for (int trial = 0; trial < 50; ++trial) {
            ContinuousTf ct = testkit::random_stable_second_order(rng);
            ct = ContinuousTf({ct.num[0]}, ct.den);  // drop the zero: strictly proper
            const DiscreteTf d = zoh(ct, 1e-4);
            CHECK(d.b[0] == 0.0);
        }
    }
}

TEST_CASE("impulse_coeffs") {
    SUBCASE("unity transfer") {
        const DiscreteTf tf(Polynomial{1.0}, Polynomial{1.0}, 1.0);
        const auto h = impulse_coeffs(tf, 4);
        CHECK(h == std::vector<double>{1.0, 0.0, 0.0, 0.0});
    }

    SUBCASE("accumulator has a constant impulse tail") {
        const DiscreteTf tf(Polynomial{1.0}, Polynomial{1.0, -1.0}, 1.0);
        const auto h = impulse_coeffs(tf, 4);
        CHECK(h == std::vector<double>{1.0, 1.0, 1.0, 1.0});
    }
}
