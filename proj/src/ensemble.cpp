#include "radlab/ensemble.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "radlab/rng.hpp"
#include "radlab/sections.hpp"

namespace radlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double mean_density(const RadialMeasure& mu, long n, double r) {
    if (n < 1) throw std::domain_error("mean_density: n must be >= 1");
    if (r < 0.0) throw std::domain_error("mean_density: r must be >= 0");
    const auto lm = log_moment_table(mu, 2 * (n - 1));
    double acc = 0.0;
    const double logr = r > 0.0 ? std::log(r) : 0.0;
    for (long k = 0; k < n; ++k) {
        if (r == 0.0) {
            if (k == 0) acc += std::exp(-lm[0]);
            continue;
        }
        acc += std::exp(2.0 * k * logr - lm[static_cast<std::size_t>(2 * k)]);
    }
    return acc / static_cast<double>(n);
}

double mean_absolute_moment(const RadialMeasure& mu, long n, long l) {
    if (n < 1 || l < 0) throw std::domain_error("mean_absolute_moment: need n >= 1, l >= 0");
    double acc = 0.0;
    for (long k = 0; k < n; ++k)
        acc += std::exp(mu.log_moment(static_cast<double>(2 * k + l)) -
                        mu.log_moment(static_cast<double>(2 * k)));
    return acc / static_cast<double>(n);
}

CircularLawReport circular_law_check(const RadialMeasure& mu, long n, int l_max) {
    const auto alpha_opt = mu.circular_alpha();
    if (!alpha_opt)
        throw std::domain_error("circular_law_check: measure has no declared mean-measure exponent");
    const double alpha = *alpha_opt;
    CircularLawReport rep;
    for (int l = 1; l <= l_max; ++l) {
        const double scaled =
            mean_absolute_moment(mu, n, l) / std::pow(static_cast<double>(n), alpha * l);
        rep.scaled_moments.push_back(scaled);
        rep.radii.push_back(std::pow(scaled * (alpha * l + 1.0), 1.0 / l));
    }
    double s = 0.0;
    for (double r : rep.radii) s += r;
    rep.fitted_radius = s / rep.radii.size();
    for (double r : rep.radii)
        rep.max_deviation = std::max(rep.max_deviation, std::abs(r - rep.fitted_radius));
    return rep;
}

std::vector<double> sample_moduli(const RadialMeasure& mu, int n, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("sample_moduli: n must be >= 1");
    CounterRng rng(seed);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        out[static_cast<std::size_t>(k)] =
            mu.radial_power_sample(k, rng.uniform(static_cast<std::uint64_t>(k), 0, 0));
    return out;
}

namespace {

// phi_k(r e^{i theta}) = r^k e^{i k theta} / sqrt(2 pi m_{2k}), in log space
void eval_phis(const std::vector<double>& lm, int n, double r, double theta,
               std::vector<cplx>& out) {
    const double logr = r > 0.0 ? std::log(r) : -745.0;
    for (int k = 0; k < n; ++k) {
        const double mag = std::exp(k * logr - 0.5 * (std::log(kTwoPi) + lm[static_cast<std::size_t>(2 * k)]));
        out[static_cast<std::size_t>(k)] = std::polar(mag, k * theta);
    }
}

}  // namespace

PointSample sample_dpp(const RadialMeasure& mu, int n, std::uint64_t seed) {
    if (n < 1 || n > 64) throw std::domain_error("sample_dpp: n must be in 1..64");
    const auto lm = log_moment_table(mu, 2 * (n - 1));
    CounterRng rng(seed);

    // rows: orthonormal basis of the residual projection space, phi-coords
    std::vector<std::vector<cplx>> basis(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        basis[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n), cplx(0.0));
        basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    }

    PointSample sample;
    sample.seed = seed;
    sample.measure = mu.name();
    sample.n = n;

    std::vector<cplx> ph(static_cast<std::size_t>(n)), vals;
    std::uint64_t point_idx = 0;
    while (sample.points.size() < static_cast<std::size_t>(n)) {
        bool accepted = false;
        for (std::uint64_t prop = 0; prop < 1000000; ++prop) {
            const int k = static_cast<int>(rng.uniform(point_idx, prop, 0) * n);
            const double r = mu.radial_power_sample(std::min(k, n - 1), rng.uniform(point_idx, prop, 1));
            const double theta = kTwoPi * rng.uniform(point_idx, prop, 2);
            eval_phis(lm, n, r, theta, ph);
            double kn = 0.0;
            for (const auto& v : ph) kn += std::norm(v);
            const std::size_t nb = basis.size();
            vals.assign(nb, cplx(0.0));
            double ki = 0.0;
            for (std::size_t i = 0; i < nb; ++i) {
                cplx s(0.0);
                for (int j = 0; j < n; ++j) s += basis[i][static_cast<std::size_t>(j)] * ph[static_cast<std::size_t>(j)];
                vals[i] = s;
                ki += std::norm(s);
            }
            if (rng.uniform(point_idx, prop, 3) * kn >= ki) continue;

            sample.points.emplace_back(r, theta);
            // remove the direction K_i(., z*): basis coords g_i = conj(psi_i(z*))
            std::vector<cplx> g(nb);
            double norm2 = 0.0;
            for (std::size_t i = 0; i < nb; ++i) {
                g[i] = std::conj(vals[i]);
                norm2 += std::norm(g[i]);
            }
            const double gn = std::sqrt(norm2);
            for (auto& x : g) x /= gn;
            std::vector<cplx> u(static_cast<std::size_t>(n), cplx(0.0));
            for (std::size_t i = 0; i < nb; ++i)
                for (int j = 0; j < n; ++j) u[static_cast<std::size_t>(j)] += g[i] * basis[i][static_cast<std::size_t>(j)];
            std::size_t pivot = 0;
            for (std::size_t i = 1; i < nb; ++i)
                if (std::abs(g[i]) > std::abs(g[pivot])) pivot = i;
            std::vector<std::vector<cplx>> next;
            next.reserve(nb - 1);
            for (std::size_t i = 0; i < nb; ++i) {
                if (i == pivot) continue;
                std::vector<cplx> v = basis[i];
                const cplx gi = std::conj(g[i]);
                for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] -= gi * u[static_cast<std::size_t>(j)];
                for (const auto& w : next) {
                    cplx ip(0.0);
                    for (int j = 0; j < n; ++j) ip += std::conj(w[static_cast<std::size_t>(j)]) * v[static_cast<std::size_t>(j)];
                    for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] -= ip * w[static_cast<std::size_t>(j)];
                }
                double vn2 = 0.0;
                for (const auto& x : v) vn2 += std::norm(x);
                const double vn = std::sqrt(vn2);
                for (auto& x : v) x /= vn;
                next.push_back(std::move(v));
            }
            basis = std::move(next);
            accepted = true;
            break;
        }
        if (!accepted)
            throw std::runtime_error(
                "sample_dpp: acceptance starvation after 1e6 proposals at point " +
                std::to_string(point_idx) + " of " + std::to_string(n));
        ++point_idx;
    }
    return sample;
}

double empirical_statistic(const PointSample& sample, const Symbol& f) {
    if (!f.real_valued()) throw std::domain_error("empirical_statistic: f must be real-valued");
    double s = 0.0;
    for (const auto& [r, theta] : sample.points) s += f.eval(theta).real();
    return s;
}

}  // namespace radlab
