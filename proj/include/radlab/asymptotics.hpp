#pragma once

#include <complex>
#include <span>
#include <vector>

#include "radlab/determinant.hpp"
#include "radlab/measure.hpp"
#include "radlab/symbol.hpp"

namespace radlab {

// Value plus the doubling-certificate delta of the run that produced it.
struct Certified {
    std::complex<double> value{0.0};
    double delta = 0.0;
};

enum class GRoute { LogMean, Kozak };

// G[a]: exp((log a)_0), or the (0,0) entry of T^{-1}(a^{-1}).
std::complex<double> g_constant(const Symbol& a, GRoute route);
inline std::complex<double> log_g_constant(const Symbol& a) { return log_symbol(a).symbol.coeff(0); }

// Omega(a, b) = -1/2 sum m^2 a_m b_{-m}; Omega[a] = 1/2 sum k^2 (log a)_k (log a)_{-k}.
std::complex<double> omega_pair(const Symbol& a, const Symbol& b);
std::complex<double> omega_functional(const Symbol& a);

// tau_mu(a, b) = sum_{j,k>=0} b_{k-j} a_{j-k} (rho_{j,k} - 1), summed per
// diagonal with doubling truncation until the tail is certified below tol.
// Throws for measures whose diagonal sums do not converge (class C2).
Certified tau(const RadialMeasure& mu, const Symbol& a, const Symbol& b, double tol = 1e-9);

// trace(P_n T(b) K_mu(a) P_n), exact finite sum.
std::complex<double> trace_section(const RadialMeasure& mu, const Symbol& b, const Symbol& a, long n);

// s_mu^{+-}(x): sums of h_mu(l) over even/odd l <= x.
std::pair<double, double> parity_sums(const RadialMeasure& mu, double x);

struct ParityConstants {
    double c_plus = 0.0;
    double c_minus = 0.0;
    double delta = 0.0;  // doubling stability
};
ParityConstants parity_constants(const RadialMeasure& mu, double x = 1e6);

// p_{n,m}^{(delta)} = sum of h_mu(l) over 2|m|^delta < l <= 2n, l = m (mod 2).
double p_delta(const RadialMeasure& mu, long n, long m, double delta);

// Truncated operator determinants; N-section products are padded so every
// retained entry is an exact operator entry, then certified by doubling.
Certified e_constant(const RadialMeasure& mu, const Symbol& a, int n_trunc);
Certified h_constant(const RadialMeasure& mu, const Symbol& a, int n_trunc);
// F[a] = exp(C_mu(a, a^{-1})) * (H-type determinant); the constant comes from
// the stabilized residual trace_section - Omega * iota(2n).
Certified f_constant(const RadialMeasure& mu, const Symbol& a, int n_trunc);

// C_mu(a,b): residual route (definitional here) and the explicit series route
// used as a cross-check on worked examples.
Certified c_mu_residual(const RadialMeasure& mu, const Symbol& a, const Symbol& b,
                        long n_start = 1 << 12, int doublings = 6);
std::complex<double> c_mu_series(const RadialMeasure& mu, const Symbol& a, const Symbol& b,
                                 long k_cap = 1 << 20);

enum class SweepMode { C1, C2 };

struct SzegoReport {
    std::vector<long> n_grid;
    std::vector<std::complex<double>> ratios;      // det / (G^n [exp(iota Omega)])
    std::vector<std::complex<double>> log_ratios;  // imag wrapped to (-pi, pi]
    std::vector<double> iota;                      // iota_mu(2n) (C2), else 0
    std::vector<std::complex<double>> traces;      // trace_section(mu, a^{-1}, a, n)
    std::complex<double> extrapolated_limit{0.0};
};

SzegoReport szego_sweep(const RadialMeasure& mu, const Symbol& a, std::span<const long> n_grid,
                        SweepMode mode);

// Aitken delta-squared step on the last three values; falls back to the last
// value when the denominator degenerates.
std::complex<double> aitken(std::span<const std::complex<double>> v);

}  // namespace radlab
