#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radlab/determinant.hpp"
#include "radlab/ensemble.hpp"
#include "radlab/rng.hpp"
#include "radlab/special.hpp"
#include "radlab/stats.hpp"

using namespace radlab;

TEST_CASE("mean_density") {
    auto cue = RadialMeasure::cue();
    CHECK(mean_density(cue, 17, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

    auto berg = RadialMeasure::bergman();
    // (1/2)(1/m_0 + r^2/m_2) at r=1: (1/2)(2 + 4) = 3
    CHECK(mean_density(berg, 2, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(mean_density(berg, 2, 0.0) == doctest::Approx(1.0).epsilon(1e-13));  // (1/2) * 1/m_0

    // integrates to 1 against dmu
    for (const auto& mu : {berg, RadialMeasure::ginibre()}) {
        const long n = 16;
        const double hi = std::isfinite(mu.support_hi()) ? mu.support_hi() : 10.0;
        auto f = [&](double r) { return mean_density(mu, n, r) * mu.density_at(r).value_or(0.0); };
        CHECK(panel_integrate(f, 0.0, hi, 32, 200) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("mean_absolute_moment") {
    CHECK(mean_absolute_moment(RadialMeasure::cue(), 13, 5) == doctest::Approx(1.0).epsilon(1e-14));
    // Ginibre n=2, l=2: (1/2)(m_2/m_0 + m_4/m_2) = 1.5
    CHECK(mean_absolute_moment(RadialMeasure::ginibre(), 2, 2) == doctest::Approx(1.5).epsilon(1e-13));
    // scaled second moment near the circular-law value 1/2
    const double v = mean_absolute_moment(RadialMeasure::ginibre(), 512, 2) / 512.0;
    CHECK(std::abs(v - 0.5) < 0.02);
}

TEST_CASE("circular_law_check") {
    const auto rep = circular_law_check(RadialMeasure::cue(), 256, 4);
    CHECK(rep.fitted_radius == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.max_deviation < 1e-6);
    CHECK(rep.scaled_moments[0] == doctest::Approx(1.0).epsilon(1e-12));  // rho_1 (l = 1)

    const auto repg = circular_law_check(RadialMeasure::ginibre(), 512, 4);
    for (double r : repg.radii) CHECK(std::abs(r - repg.fitted_radius) < 0.02 * repg.fitted_radius);

    CHECK_THROWS_AS((void)circular_law_check(RadialMeasure::log_stretch(0.1, 4.0), 64, 3),
                    std::domain_error);
}

TEST_CASE("sample_moduli determinism and law") {
    auto berg = RadialMeasure::bergman();
    const auto a = sample_moduli(berg, 8, 42);
    const auto b = sample_moduli(berg, 8, 42);
    CHECK(a == b);
    const auto c = sample_moduli(berg, 8, 43);
    CHECK(a != c);

    // E R_k^2 = m_{2k+2}/m_{2k} = (2k+2)/(2k+4), 1e4 replicas, 3 SE
    const int reps = 10000;
    for (int k : {0, 3}) {
        std::vector<double> r2(reps);
        for (int i = 0; i < reps; ++i) {
            const auto s = sample_moduli(berg, k + 1, derive_seed(7, static_cast<std::uint64_t>(i)));
            r2[static_cast<std::size_t>(i)] = s.back() * s.back();
        }
        const auto mv = mean_var(r2);
        const double expect = (2.0 * k + 2.0) / (2.0 * k + 4.0);
        CHECK(std::abs(mv.mean - expect) < 3.0 * mv.se_mean);
    }

    CHECK(sample_moduli(RadialMeasure::cue(), 5, 9) == std::vector<double>(5, 1.0));
}

TEST_CASE("sample_dpp support and determinism") {
    auto berg = RadialMeasure::bergman();
    const PointSample s = sample_dpp(berg, 12, 5);
    CHECK(s.points.size() == 12);
    for (const auto& [r, th] : s.points) {
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
        CHECK(th >= 0.0);
        CHECK(th < 2.0 * std::numbers::pi);
    }
    const PointSample t = sample_dpp(berg, 12, 5);
    CHECK(s.points == t.points);

    const PointSample cue = sample_dpp(RadialMeasure::cue(), 6, 5);
    for (const auto& [r, th] : cue.points) CHECK(r == 1.0);
}

TEST_CASE("sample_dpp matches the determinant route (Ginibre n=4)") {
    auto gin = RadialMeasure::ginibre();
    auto f = Symbol::two_cos();
    const int n = 4, reps = 4000;
    std::vector<double> xs(reps);
    for (int i = 0; i < reps; ++i) {
        const PointSample s = sample_dpp(gin, n, derive_seed(11, static_cast<std::uint64_t>(i)));
        xs[static_cast<std::size_t>(i)] = empirical_statistic(s, f);
    }
    const auto mv = mean_var(xs);
    CHECK(std::abs(mv.mean - 0.0) < 3.0 * mv.se_mean);
    const double exact_var = fd_cumulant(gin, f, n, 2).value;
    const double se_var = mv.var * std::sqrt(2.0 / reps);
    CHECK(std::abs(mv.var - exact_var) < 3.0 * se_var);
}

TEST_CASE("max modulus agrees between the two samplers (KS)") {
    auto gin = RadialMeasure::ginibre();
    const int n = 6, reps = 2000;
    std::vector<double> m1(reps), m2(reps);
    for (int i = 0; i < reps; ++i) {
        const PointSample s = sample_dpp(gin, n, derive_seed(21, static_cast<std::uint64_t>(i)));
        double mx = 0.0;
        for (const auto& [r, th] : s.points) mx = std::max(mx, r);
        m1[static_cast<std::size_t>(i)] = mx;
        const auto mod = sample_moduli(gin, n, derive_seed(22, static_cast<std::uint64_t>(i)));
        m2[static_cast<std::size_t>(i)] = *std::max_element(mod.begin(), mod.end());
    }
    CHECK(ks_two_sample_pvalue(m1, m2) > 0.01);
    // KS must also separate a genuinely shifted sample
    std::vector<double> shifted = m2;
    for (auto& x : shifted) x += 0.25;
    CHECK(ks_two_sample_pvalue(m1, shifted) < 0.01);
}

TEST_CASE("CUE repulsion vs iid angles") {
    auto cue = RadialMeasure::cue();
    const int n = 16, reps = 2000;
    std::vector<double> dpp_nn(reps), iid_nn(reps);
    CounterRng rng(77);
    for (int i = 0; i < reps; ++i) {
        const PointSample s = sample_dpp(cue, n, derive_seed(31, static_cast<std::uint64_t>(i)));
        std::vector<double> th;
        for (const auto& [r, t] : s.points) th.push_back(t);
        std::sort(th.begin(), th.end());
        double mn = 2.0 * std::numbers::pi + th.front() - th.back();
        for (std::size_t j = 1; j < th.size(); ++j) mn = std::min(mn, th[j] - th[j - 1]);
        dpp_nn[static_cast<std::size_t>(i)] = mn;

        std::vector<double> u(n);
        for (int j = 0; j < n; ++j)
            u[static_cast<std::size_t>(j)] =
                2.0 * std::numbers::pi * rng.uniform(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
        std::sort(u.begin(), u.end());
        double mn2 = 2.0 * std::numbers::pi + u.front() - u.back();
        for (std::size_t j = 1; j < u.size(); ++j) mn2 = std::min(mn2, u[j] - u[j - 1]);
        iid_nn[static_cast<std::size_t>(i)] = mn2;
    }
    const auto a = mean_var(dpp_nn);
    const auto b = mean_var(iid_nn);
    CHECK(a.mean - b.mean > 3.0 * std::sqrt(a.se_mean * a.se_mean + b.se_mean * b.se_mean));
}

TEST_CASE("empirical_statistic") {
    PointSample s;
    s.points = {{1.0, 0.0}, {0.5, std::numbers::pi / 2.0}, {0.2, std::numbers::pi}};
    s.n = 3;
    CHECK(empirical_statistic(s, Symbol::constant(2.5)) == doctest::Approx(7.5));
    // 2cos: 2 + 0 - 2 = 0
    CHECK(empirical_statistic(s, Symbol::two_cos()) == doctest::Approx(0.0).epsilon(1e-12));
    const double v = empirical_statistic(s, Symbol::two_cos());
    CHECK(v >= -2.0 * 3);
    CHECK(v <= 2.0 * 3);
}
