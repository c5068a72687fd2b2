#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "radlab/asymptotics.hpp"
#include "radlab/cumulants.hpp"

using namespace radlab;

namespace {
const double kE = std::exp(1.0);

Symbol exp_i_lambda_two_cos(double lam, int window = 24) {
    return exp_symbol(Symbol::two_cos().scale(cplx(0.0, lam)), window).symbol;
}
}  // namespace

TEST_CASE("g_constant routes and examples") {
    // a = e^{i lambda f}, f real with f_0 = 0 -> G = 1
    auto a = exp_i_lambda_two_cos(0.7);
    CHECK(std::abs(g_constant(a, GRoute::LogMean) - cplx(1.0)) < 1e-10);

    auto c = Symbol::constant(cplx(3.0, -2.0));
    CHECK(std::abs(g_constant(c, GRoute::LogMean) - cplx(3.0, -2.0)) < 1e-12);
    CHECK(std::abs(g_constant(c, GRoute::Kozak) - cplx(3.0, -2.0)) < 1e-10);

    auto e2c = exp_symbol(Symbol::two_cos(), 24).symbol;
    CHECK(std::abs(g_constant(e2c, GRoute::LogMean) - cplx(1.0)) < 1e-10);
    CHECK(std::abs(g_constant(e2c, GRoute::Kozak) - cplx(1.0)) < 1e-8);

    // route agreement on the named trio
    auto mixed = exp_symbol(
        Symbol::from_trig(std::vector<std::pair<int, cplx>>{
            {1, cplx(0, 0.7)}, {-1, cplx(0, 0.7)}, {2, cplx(0, 0.35)}, {-2, cplx(0, 0.35)}}),
        32).symbol;
    auto twoplus = Symbol::from_trig(
        std::vector<std::pair<int, cplx>>{{0, 2.0}, {1, 0.5}, {-1, 0.5}});
    for (const auto& s : {e2c, mixed, twoplus}) {
        const cplx g1 = g_constant(s, GRoute::LogMean);
        const cplx g2 = g_constant(s, GRoute::Kozak);
        CHECK(std::abs(g1 - g2) < 1e-8 * std::abs(g1));
    }
    // 2 + cos: G = (2 + sqrt 3)/2 analytically
    CHECK(std::abs(g_constant(twoplus, GRoute::LogMean) - cplx((2.0 + std::sqrt(3.0)) / 2.0)) < 1e-12);
}

TEST_CASE("kozak determinant identity det A_n = G^n") {
    auto twoplus = Symbol::from_trig(
        std::vector<std::pair<int, cplx>>{{0, 2.0}, {1, 0.5}, {-1, 0.5}});
    auto mixed = exp_symbol(
        Symbol::from_trig(std::vector<std::pair<int, cplx>>{
            {1, cplx(0, 0.7)}, {-1, cplx(0, 0.7)}, {2, cplx(0, 0.35)}, {-2, cplx(0, 0.35)}}),
        32).symbol;
    auto e2c = exp_symbol(Symbol::two_cos(), 24).symbol;
    for (const auto& s : {e2c, mixed, twoplus}) {
        const cplx logg = log_g_constant(s);
        for (int n : {1, 2, 4, 8, 16, 32}) {
            const LogDet ld = log_det(kozak_inverse_section(s, n));
            const cplx expect = static_cast<double>(n) * logg;
            const cplx got(ld.log_abs, ld.phase);
            CHECK(std::abs(std::exp(got - expect) - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("omega functionals") {
    auto e2c = exp_symbol(Symbol::two_cos(), 24).symbol;
    CHECK(std::abs(omega_functional(e2c) - cplx(1.0)) < 1e-10);
    for (double lam : {0.4, 1.0}) {
        auto a = exp_i_lambda_two_cos(lam);
        CHECK(std::abs(omega_functional(a) - cplx(-lam * lam)) < 1e-10);
        // Omega(a, a^{-1}) = Omega[a]
        auto ai = invert_symbol(a, 24).symbol;
        CHECK(std::abs(omega_pair(a, ai) - omega_functional(a)) < 1e-10);
    }
    CHECK(std::abs(omega_pair(Symbol::two_cos(), Symbol::constant(1.0))) == 0.0);
}

TEST_CASE("omega_pair equals its derivative-integral form") {
    // -1/2 sum m^2 a_m b_{-m} = -(1/4 pi) int a'(theta) b'(theta) dtheta
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 5; ++t) {
        std::vector<std::pair<int, cplx>> ta, tb;
        for (int k = -3; k <= 3; ++k) {
            ta.emplace_back(k, cplx(u(rng), u(rng)));
            tb.emplace_back(k, cplx(u(rng), u(rng)));
        }
        auto a = Symbol::from_trig(ta), b = Symbol::from_trig(tb);
        const int m = 512;
        cplx acc(0.0);
        for (int j = 0; j < m; ++j) {
            const double th = 2.0 * std::numbers::pi * j / m;
            cplx da(0.0), db(0.0);
            for (int k = -3; k <= 3; ++k) {
                da += cplx(0.0, k) * a.coeff(k) * std::polar(1.0, k * th);
                db += cplx(0.0, k) * b.coeff(k) * std::polar(1.0, k * th);
            }
            acc += da * db;
        }
        acc *= 2.0 * std::numbers::pi / m;          // int over [0, 2pi)
        const cplx integral = -acc / (4.0 * std::numbers::pi);
        CHECK(std::abs(omega_pair(a, b) - integral) < 1e-12);
    }
}

TEST_CASE("omega and tau bilinearity") {
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto rnd = [&] {
        std::vector<std::pair<int, cplx>> t;
        for (int k = -3; k <= 3; ++k) t.emplace_back(k, cplx(u(rng), u(rng)));
        return Symbol::from_trig(t);
    };
    auto berg = RadialMeasure::bergman();
    for (int t = 0; t < 5; ++t) {
        auto a1 = rnd(), a2 = rnd(), b = rnd();
        const cplx al(u(rng), u(rng));
        const cplx lhs = omega_pair(a1.scale(al).add(a2), b);
        const cplx rhs = al * omega_pair(a1, b) + omega_pair(a2, b);
        CHECK(std::abs(lhs - rhs) < 1e-10);
        const cplx tl = tau(berg, a1.scale(al).add(a2), b).value;
        const cplx tr = al * tau(berg, a1, b).value + tau(berg, a2, b).value;
        CHECK(std::abs(tl - tr) < 1e-8);
    }
}

TEST_CASE("tau values") {
    auto berg = RadialMeasure::bergman();
    auto f = Symbol::two_cos();
    CHECK(std::abs(tau(RadialMeasure::cue(), f, f).value) == 0.0);
    CHECK(std::abs(tau(berg, f, Symbol::constant(1.0)).value) == 0.0);

    // a = b = 2cos: tau = 2 sum_k (rho_{k,k+1} - 1); series value -0.2375641
    const Certified t = tau(berg, f, f);
    CHECK(t.value.real() == doctest::Approx(-0.2375641).epsilon(2e-6));
    CHECK(std::abs(t.value.imag()) < 1e-12);
    CHECK(t.delta < 1e-9);

    // Ginibre diagonals diverge logarithmically
    CHECK_THROWS_AS((void)tau(RadialMeasure::ginibre(), f, f), std::runtime_error);
}

TEST_CASE("trace_section") {
    auto f = Symbol::two_cos();
    auto berg = RadialMeasure::bergman();
    CHECK(std::abs(trace_section(RadialMeasure::cue(), f, f, 64)) == 0.0);

    // converges to tau and matches the padded matrix product at small n
    const cplx t1 = trace_section(berg, f, f, 10000);
    const cplx t2 = trace_section(berg, f, f, 20000);
    CHECK(std::abs(t2 - t1) < 1e-4);
    CHECK(std::abs(t2 - tau(berg, f, f).value) < 1e-4);

    for (const auto& mu : {berg, RadialMeasure::ginibre()}) {
        for (int n : {4, 16, 64}) {
            // P_n T(b) K(a) P_n trace from a padded slab
            const int w = 1, big = n + w;
            auto tb = toeplitz_section(f, big);
            auto ka = k_section(mu, f, big);
            const Eigen::MatrixXcd prod = tb.data * ka.data;
            cplx tr(0.0);
            for (int i = 0; i < n; ++i) tr += prod(i, i);
            CHECK(std::abs(tr - trace_section(mu, f, f, n)) < 1e-12);
        }
    }
}

TEST_CASE("parity sums and constants (Ginibre)") {
    auto gin = RadialMeasure::ginibre();
    const auto [sp, sm] = parity_sums(gin, 2.0);
    CHECK(sp == doctest::Approx(0.25).epsilon(1e-14));   // h(2)
    CHECK(sm == doctest::Approx(0.50).epsilon(1e-14));   // h(1)

    const auto [sp6, sm6] = parity_sums(gin, 1e4);
    double total = 0.0;
    for (long l = 1; l <= 10000; ++l) total += 0.5 / l;
    CHECK(sp6 + sm6 == doctest::Approx(total).epsilon(1e-12));

    const ParityConstants pc = parity_constants(gin);
    const double eg = 0.57721566490153286;  // Euler-Mascheroni
    CHECK(pc.c_plus == doctest::Approx((eg - std::log(2.0)) / 4.0).epsilon(1e-5));
    CHECK(pc.c_minus == doctest::Approx((eg + std::log(2.0)) / 4.0).epsilon(1e-5));
    CHECK(pc.delta < 1e-6);
    CHECK_THROWS_AS((void)parity_sums(RadialMeasure::bergman(), 10.0), std::domain_error);
}

TEST_CASE("p_delta") {
    auto gin = RadialMeasure::ginibre();
    // n=8, m=1, delta=2: odd l in (2, 16]
    double expect = 0.0;
    for (long l : {3, 5, 7, 9, 11, 13, 15}) expect += 0.5 / l;
    CHECK(p_delta(gin, 8, 1, 2.0) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(p_delta(gin, 8, 1, 2.0) == doctest::Approx(0.5109002109).epsilon(1e-9));
    // empty range
    CHECK(p_delta(gin, 4, 3, 2.0) == 0.0);
    // partition: p + complement head = full parity sum
    const double head = [&] {
        double s = 0.0;
        for (long l = 1; l <= 2; ++l)
            if ((l - 1) % 2 == 0) s += gin.h_mu(static_cast<double>(l));
        return s;
    }();
    const auto [sp, sm] = parity_sums(gin, 16.0);
    CHECK(p_delta(gin, 8, 1, 2.0) + head == doctest::Approx(sm).epsilon(1e-13));
    (void)sp;
}

TEST_CASE("e and h constants") {
    auto cue = RadialMeasure::cue();
    auto e2c = exp_symbol(Symbol::two_cos(), 32).symbol;
    const Certified e = e_constant(cue, e2c, 128);
    CHECK(std::abs(e.value - cplx(kE)) < 1e-6);
    CHECK(e.delta < 1e-6);

    // constant symbols: T(c^{-1}) M(c) = I
    for (const auto& mu : {cue, RadialMeasure::bergman()}) {
        const Certified ec = e_constant(mu, Symbol::constant(cplx(2.0, 0.5)), 16);
        CHECK(std::abs(ec.value - cplx(1.0)) < 1e-9);
    }

    const Certified h = h_constant(cue, e2c, 128);
    CHECK(std::abs(h.value - e.value) < 1e-8);

    CHECK_THROWS_AS((void)e_constant(RadialMeasure::ginibre(), e2c, 32), std::domain_error);

    // Bergman, a = e^{i 0.5 2cos}: E = e^{tau(a, a^{-1})} H (regularized-route split)
    auto berg = RadialMeasure::bergman();
    auto a = exp_i_lambda_two_cos(0.5);
    const Certified eb = e_constant(berg, a, 256);
    const Certified hb = h_constant(berg, a, 256);
    auto ai = invert_symbol(a, 24).symbol;
    const cplx tv = tau(berg, a, ai).value;
    CHECK(std::abs(eb.value - std::exp(tv) * hb.value) < 2e-3 * std::abs(eb.value));
}

TEST_CASE("szego sweeps") {
    auto cue = RadialMeasure::cue();
    auto e2c = exp_symbol(Symbol::two_cos(), 70).symbol;
    const std::vector<long> grid{16, 32, 64};
    const SzegoReport rep = szego_sweep(cue, e2c, grid, SweepMode::C1);
    CHECK(std::abs(rep.ratios.back() - cplx(kE)) < 1e-6);

    // a = 1: ratios exactly 1
    const SzegoReport r1 =
        szego_sweep(RadialMeasure::bergman(), Symbol::constant(1.0), grid, SweepMode::C1);
    for (const auto& r : r1.ratios) CHECK(r == cplx(1.0));

    // Bergman two-route agreement
    auto a = exp_i_lambda_two_cos(0.5);
    const std::vector<long> grid2{16, 32, 64, 128};
    const SzegoReport rb = szego_sweep(RadialMeasure::bergman(), a, grid2, SweepMode::C1);
    CHECK(std::abs(rb.ratios[3] - rb.ratios[2]) < 1e-3);
    const Certified eb = e_constant(RadialMeasure::bergman(), a, 256);
    CHECK(std::abs(rb.extrapolated_limit - eb.value) < 1e-3);

    CHECK_THROWS_AS(
        (void)szego_sweep(RadialMeasure::bergman(), a, grid, SweepMode::C2), std::domain_error);
}

TEST_CASE("C2 mode: slope law, residual constant, F[a]") {
    auto gin = RadialMeasure::ginibre();
    const double lam = 0.5;
    auto a = exp_i_lambda_two_cos(lam);
    auto ai = invert_symbol(a, 24).symbol;
    const cplx omega = omega_pair(a, ai);
    CHECK(std::abs(omega - cplx(-lam * lam)) < 1e-10);

    // doubling differences of the trace over iota increments approach Omega,
    // deviations decreasing
    const double step = std::log(2.0) / 4.0;
    double prev_dev = 1e9;
    cplx tprev = trace_section(gin, ai, a, 32);
    for (int j = 5; j <= 9; ++j) {
        const cplx tnext = trace_section(gin, ai, a, 1L << (j + 1));
        const cplx d = (tnext - tprev) / step;
        const double dev = std::abs(d - omega) / std::abs(omega);
        CHECK(dev < prev_dev + 1e-12);
        prev_dev = dev;
        tprev = tnext;
    }
    CHECK(prev_dev < 0.05);

    // residual route vs explicit series for C_mu(a, a^{-1})
    const Certified c = c_mu_residual(gin, a, ai);
    const cplx cs = c_mu_series(gin, a, ai);
    CHECK(std::abs(c.value - cs) < 1e-5);

    // F-consistency and C2-mode sweep convergence toward F
    const double lam2 = 0.4;
    auto a2 = exp_i_lambda_two_cos(lam2);
    const Certified f = f_constant(gin, a2, 128);
    const Certified h = h_constant(gin, a2, 128);
    auto ai2 = invert_symbol(a2, 24).symbol;
    const Certified c2 = c_mu_residual(gin, a2, ai2);
    CHECK(std::abs(std::exp(c2.value) - f.value / h.value) < 1e-4);

    const std::vector<long> grid{64, 128, 256, 512};
    const SzegoReport rep = szego_sweep(gin, a2, grid, SweepMode::C2);
    double dev_prev = 1e9;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double dev = std::abs(rep.ratios[i] - f.value);
        CHECK(dev < dev_prev + 1e-12);
        dev_prev = dev;
    }
    CHECK(dev_prev < 1e-3);
}

TEST_CASE("aitken") {
    std::vector<cplx> v{cplx(1.5), cplx(1.25), cplx(1.125)};  // 1 + 2^-j
    CHECK(std::abs(aitken(v) - cplx(1.0)) < 1e-12);
    std::vector<cplx> flat{cplx(2.0), cplx(2.0), cplx(2.0)};
    CHECK(aitken(flat) == cplx(2.0));
}
