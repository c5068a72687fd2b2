#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "radlab/measure.hpp"
#include "radlab/symbol.hpp"

namespace radlab {

struct PointSample {
    std::vector<std::pair<double, double>> points;  // (radius, angle)
    std::uint64_t seed = 0;
    std::string measure;
    int n = 0;
};

// Radial density of the mean measure with respect to dmu(r) dtheta/(2 pi):
// (1/n) sum_{k<n} r^{2k} / m_{2k}, each term in log space.
double mean_density(const RadialMeasure& mu, long n, double r);

// (1/n) sum_{k<n} m_{2k+l} / m_{2k}
double mean_absolute_moment(const RadialMeasure& mu, long n, long l);

struct CircularLawReport {
    double fitted_radius = 0.0;
    double max_deviation = 0.0;
    std::vector<double> scaled_moments;  // index l-1, l = 1..l_max
    std::vector<double> radii;           // per-l root estimates
};

// Weighted-circular-law check: scaled moments rho_l = mam(n,l)/n^{alpha l} should
// satisfy (rho_l (alpha l + 1))^{1/l} = const (the support radius).
CircularLawReport circular_law_check(const RadialMeasure& mu, long n, int l_max);

// n independent moduli, the k-th from r^{2k} dmu / m_{2k}.
std::vector<double> sample_moduli(const RadialMeasure& mu, int n, std::uint64_t seed);

// Sequential projection-DPP sampler (n <= 64): proposals from the mean
// measure, thinned by K_i(z,z)/K_n(z,z).
PointSample sample_dpp(const RadialMeasure& mu, int n, std::uint64_t seed);

// X_{f, sample} = sum_k f(angle_k); f real-valued.
double empirical_statistic(const PointSample& sample, const Symbol& f);

}  // namespace radlab
