#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "radlab/determinant.hpp"

using namespace radlab;

namespace {

// cofactor expansion, the n <= 6 reference for log_det
cplx cofactor_det(const Eigen::MatrixXcd& m) {
    const Eigen::Index n = m.rows();
    if (n == 1) return m(0, 0);
    cplx det(0.0);
    double sign = 1.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::MatrixXcd minor(n - 1, n - 1);
        for (Eigen::Index i = 1; i < n; ++i) {
            Eigen::Index jj = 0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == c) continue;
                minor(i - 1, jj++) = m(i, j);
            }
        }
        det += sign * m(0, c) * cofactor_det(minor);
        sign = -sign;
    }
    return det;
}

// Bessel J_0 by series
double bessel_j0(double x) {
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 60; ++m) {
        term *= -0.25 * x * x / (m * m);
        sum += term;
    }
    return sum;
}

}  // namespace

TEST_CASE("log_det against cofactor expansion") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 1; n <= 6; ++n) {
        for (int t = 0; t < 30; ++t) {
            Eigen::MatrixXcd m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = cplx(u(rng), u(rng));
            const cplx ref = cofactor_det(m);
            const LogDet ld = log_det(m);
            CHECK(std::abs(ld.value() - ref) < 1e-10 * (1.0 + std::abs(ref)));
        }
    }
}

TEST_CASE("log_det special values") {
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(7, 7);
    auto ld = log_det(id);
    CHECK(ld.log_abs == 0.0);
    CHECK(ld.phase == 0.0);

    const double r = 2.0 * std::sqrt(2.0) / 3.0;
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, r, r, 1.0;
    ld = log_det(m);
    CHECK(ld.log_abs == doctest::Approx(std::log(1.0 / 9.0)).epsilon(1e-12));
    CHECK(std::abs(ld.phase) < 1e-14);

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = cplx(0.0, 3.0);
    ld = log_det(d);
    CHECK(ld.log_abs == doctest::Approx(std::log(6.0)).epsilon(1e-14));
    CHECK(ld.phase == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-14));

    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(3, 3);
    CHECK(log_det(z).singular());
}

TEST_CASE("angular_mgf basics") {
    auto f = Symbol::two_cos();
    for (const auto& mu : {RadialMeasure::cue(), RadialMeasure::ginibre(), RadialMeasure::bergman()}) {
        const LogDet ld = angular_mgf(mu, f, 0.0, 16);
        CHECK(ld.log_abs == 0.0);
        CHECK(ld.phase == 0.0);
    }

    // CUE, n=1: E[e^{i lambda 2 cos}] = J_0(2 lambda)
    const LogDet ld = angular_mgf(RadialMeasure::cue(), f, 0.5, 1);
    CHECK(ld.value().real() == doctest::Approx(bessel_j0(1.0)).epsilon(1e-10));
    CHECK(std::abs(ld.value().imag()) < 1e-12);

    auto complex_f = Symbol::from_trig(std::vector<std::pair<int, cplx>>{{1, cplx(0, 1)}});
    CHECK_THROWS_AS((void)angular_mgf(RadialMeasure::cue(), complex_f, 0.3, 4), std::domain_error);
}

TEST_CASE("CUE angular_mgf equals the plain Toeplitz log det") {
    auto cue = RadialMeasure::cue();
    auto f = Symbol::two_cos();
    for (double lam : {0.3, 1.1}) {
        const LogDet a = angular_mgf(cue, f, lam, 24);
        const Symbol sym = exp_symbol(f.scale(cplx(0.0, lam)), 23).symbol;
        const LogDet b = log_det(toeplitz_section(sym, 24));
        CHECK(a.log_abs == b.log_abs);
        CHECK(a.phase == b.phase);
    }
}

TEST_CASE("characteristic function modulus and conjugation") {
    auto f = Symbol::two_cos();
    for (const auto& mu : {RadialMeasure::cue(), RadialMeasure::ginibre(), RadialMeasure::bergman()}) {
        for (double lam : {0.25, 0.5, 1.0, 2.0}) {
            for (int n : {1, 4, 16}) {
                const LogDet p = angular_mgf(mu, f, lam, n);
                CHECK(std::exp(p.log_abs) <= 1.0 + 1e-10);
                const LogDet m = angular_mgf(mu, f, -lam, n);
                CHECK(std::abs(p.log_abs - m.log_abs) < 1e-12);
                CHECK(std::abs(std::remainder(p.phase + m.phase, 2.0 * std::numbers::pi)) < 1e-12);
            }
        }
    }
}

TEST_CASE("quadrature oracle equivalence") {
    auto one = Symbol::constant(1.0);
    auto phi = Symbol::two_cos().add_constant(1.0);  // 1 + 2 cos
    for (const auto& mu : {RadialMeasure::bergman(), RadialMeasure::ginibre()}) {
        for (int n : {1, 2, 3}) {
            CHECK(std::abs(quadrature_oracle(mu, one, n) - cplx(1.0)) < 1e-10);
            const cplx o = quadrature_oracle(mu, phi, n);
            const cplx d = log_det(m_section(mu, phi, n)).value();
            CHECK(std::abs(o - d) <= 1e-8 * (1.0 + std::abs(d)));
        }
    }
    // pinned: Bergman n=2 -> 1/9; CUE n=2 -> 0
    CHECK(quadrature_oracle(RadialMeasure::bergman(), phi, 2).real() ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-10));
    CHECK(std::abs(quadrature_oracle(RadialMeasure::cue(), phi, 2)) < 1e-14);

    // truncated exponential symbol e^{i 0.3 2cos}
    auto a = exp_symbol(Symbol::two_cos().scale(cplx(0.0, 0.3)), 6).symbol;
    for (const auto& mu : {RadialMeasure::bergman(), RadialMeasure::ginibre()}) {
        for (int n : {2, 3}) {
            const cplx o = quadrature_oracle(mu, a, n);
            const cplx d = log_det(m_section(mu, a, n)).value();
            CHECK(std::abs(o - d) <= 1e-8 * (1.0 + std::abs(d)));
        }
    }
    CHECK_THROWS_AS((void)quadrature_oracle(RadialMeasure::bergman(), one, 4), std::domain_error);
}

TEST_CASE("fd_cumulant") {
    auto f = Symbol::two_cos();
    auto cue = RadialMeasure::cue();

    // c_1 = n f_0
    CHECK(std::abs(fd_cumulant(cue, f, 8, 1).value) < 1e-10);
    auto g = f.add_constant(1.0);
    CHECK(fd_cumulant(cue, g, 8, 1).value == doctest::Approx(8.0).epsilon(1e-8));
    CHECK(fd_cumulant(RadialMeasure::bergman(), g, 8, 1).value == doctest::Approx(8.0).epsilon(1e-8));

    // strong Szego: c_2 = 2 sum k |f_k|^2 = 2, higher cumulants vanish
    CHECK(fd_cumulant(cue, f, 64, 2).value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(fd_cumulant(cue, f, 64, 3).value) < 1e-4);
    CHECK(std::abs(fd_cumulant(cue, f, 64, 4).value) < 1e-4);

    CHECK_THROWS_AS((void)fd_cumulant(cue, f, 8, 5), std::domain_error);
}
