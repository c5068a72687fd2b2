#include "radlab/asymptotics.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <map>

namespace radlab {

std::complex<double> g_constant(const Symbol& a, GRoute route) {
    if (route == GRoute::LogMean) return std::exp(log_symbol(a).symbol.coeff(0));
    const FiniteSection a1 = kozak_inverse_section(a, 1);
    return a1.data(0, 0);
}

std::complex<double> omega_pair(const Symbol& a, const Symbol& b) {
    cplx s(0.0);
    const int w = std::min(a.window(), b.window());
    for (int m = -w; m <= w; ++m)
        s += static_cast<double>(m) * m * a.coeff(m) * b.coeff(-m);
    return -0.5 * s;
}

std::complex<double> omega_functional(const Symbol& a) {
    const Symbol lg = log_symbol(a).symbol;
    cplx s(0.0);
    for (int k = -lg.window(); k <= lg.window(); ++k)
        s += static_cast<double>(k) * k * lg.coeff(k) * lg.coeff(-k);
    return 0.5 * s;
}

namespace {

// sum over k >= max(0,-m) of (rho_{k+m,k} - 1). Partial sums at doubling
// truncations are Aitken-accelerated; the certificate is the change of the
// accelerated value under one more doubling. Diverging diagonals (class C2)
// never certify and raise after the cap.
double diag_sum_certified(const RadialMeasure& mu, long m, double weight_scale, double tol,
                          double* delta_out) {
    const long k0 = std::max(0L, -m);
    long hi = 1 << 12;
    long k = k0;
    double partial = 0.0;
    std::vector<cplx> s;
    auto extend = [&](long stop) {
        for (; k < stop; ++k) partial += mu.rho(k + m, k) - 1.0;
        s.push_back(cplx(partial));
    };
    extend(hi);
    cplx prev_acc(partial);
    for (int d = 0; d < 10; ++d) {
        hi *= 2;
        extend(hi);
        const cplx acc = aitken(s);
        const double change = std::abs(acc - prev_acc) * weight_scale;
        if (s.size() >= 3 && change < tol) {
            if (delta_out) *delta_out = change;
            return acc.real();
        }
        prev_acc = acc;
    }
    throw std::runtime_error("tau: diagonal sum did not converge on diagonal m=" + std::to_string(m) +
                             " (measure not usable here, e.g. class C2)");
}

}  // namespace

Certified tau(const RadialMeasure& mu, const Symbol& a, const Symbol& b, double tol) {
    if (mu.kind() == MeasureKind::Cue) return {cplx(0.0), 0.0};
    cplx total(0.0);
    double worst = 0.0;
    const int w = std::min(a.window(), b.window());
    std::map<long, std::pair<double, double>> cache;  // |m| -> (sum, delta); rho is symmetric
    for (int m = -w; m <= w; ++m) {
        if (m == 0) continue;  // rho_{kk} = 1
        const cplx c = a.coeff(m) * b.coeff(-m);
        if (std::abs(c) < 1e-300) continue;
        const long am = std::labs(m);
        auto it = cache.find(am);
        if (it == cache.end()) {
            double delta = 0.0;
            const double s = diag_sum_certified(mu, am, std::abs(c), tol, &delta);
            it = cache.emplace(am, std::make_pair(s, delta)).first;
        }
        total += c * it->second.first;
        worst = std::max(worst, it->second.second);
    }
    return {total, worst};
}

std::complex<double> trace_section(const RadialMeasure& mu, const Symbol& b, const Symbol& a, long n) {
    if (mu.kind() == MeasureKind::Cue) return 0.0;
    cplx total(0.0);
    const int w = std::min(a.window(), b.window());
    for (int m = -w; m <= w; ++m) {
        if (m == 0) continue;
        const cplx c = a.coeff(m) * b.coeff(-m);
        if (std::abs(c) < 1e-300) continue;
        double s = 0.0;
        for (long k = std::max(0L, static_cast<long>(-m)); k < n; ++k) s += mu.rho(k + m, k) - 1.0;
        total += c * s;
    }
    return total;
}

std::pair<double, double> parity_sums(const RadialMeasure& mu, double x) {
    if (mu.moment_class() != MomentClass::C2)
        throw std::domain_error("parity_sums: measure must be of class C2");
    double plus = 0.0, minus = 0.0;
    for (long l = 1; l <= static_cast<long>(x); ++l) {
        const double h = mu.h_mu(static_cast<double>(l));
        if (l % 2 == 0)
            plus += h;
        else
            minus += h;
    }
    return {plus, minus};
}

ParityConstants parity_constants(const RadialMeasure& mu, double x) {
    const auto [p1, m1] = parity_sums(mu, x / 2.0);
    const auto [p2, m2] = parity_sums(mu, x);
    const double i1 = mu.iota(x / 2.0), i2 = mu.iota(x);
    ParityConstants out;
    out.c_plus = p2 - i2;
    out.c_minus = m2 - i2;
    out.delta = std::max(std::abs(out.c_plus - (p1 - i1)), std::abs(out.c_minus - (m1 - i1)));
    if (out.delta > 1e-6)
        throw std::runtime_error("parity_constants: doubling instability " + std::to_string(out.delta));
    return out;
}

double p_delta(const RadialMeasure& mu, long n, long m, double delta) {
    if (delta < 1.0) throw std::domain_error("p_delta: delta must be >= 1");
    if (mu.moment_class() != MomentClass::C2)
        throw std::domain_error("p_delta: measure must be of class C2");
    const double lo = 2.0 * std::pow(std::labs(m), delta);
    double s = 0.0;
    for (long l = 1; l <= 2 * n; ++l) {
        if (l <= lo) continue;
        if (((l - m) % 2) != 0) continue;
        s += mu.h_mu(static_cast<double>(l));
    }
    return s;
}

namespace {

struct PaddedOps {
    // exact operator entries of T(a^{-1}), M_mu(a), K_mu(a) on a K x K block
    Eigen::MatrixXcd t_inv, m_mu, k_mu;
    int pad = 0;
};

PaddedOps build_padded(const RadialMeasure& mu, const Symbol& a, int n) {
    // pad must cover the decay of a^{-1} so that truncated products agree
    // with the operator product on the kept block
    const int pad = std::max(64, 4 * a.window());
    const int big = n + pad;
    PaddedOps ops;
    ops.pad = pad;
    const Symbol ainv = invert_symbol(a, big - 1).symbol;
    ops.t_inv = toeplitz_section(ainv, big).data;
    ops.m_mu = m_section(mu, a, big).data;
    ops.k_mu = ops.m_mu - toeplitz_section(a, big).data;
    return ops;
}

cplx e_value(const RadialMeasure& mu, const Symbol& a, int n) {
    const PaddedOps ops = build_padded(mu, a, n);
    const Eigen::MatrixXcd p = (ops.t_inv * ops.m_mu).topLeftCorner(n, n);
    const LogDet ld = log_det(p);
    if (ld.singular()) throw std::runtime_error("e_constant: singular truncation");
    return ld.value();
}

cplx h_value(const RadialMeasure& mu, const Symbol& a, int n) {
    const PaddedOps ops = build_padded(mu, a, n);
    const Eigen::MatrixXcd p = (ops.t_inv * ops.m_mu).topLeftCorner(n, n);
    const Eigen::MatrixXcd tk = (ops.t_inv * ops.k_mu).topLeftCorner(n, n);
    const Eigen::MatrixXcd b = p * (-tk).exp();
    const LogDet ld = log_det(b);
    if (ld.singular()) throw std::runtime_error("h_constant: singular truncation");
    return ld.value();
}

}  // namespace

Certified e_constant(const RadialMeasure& mu, const Symbol& a, int n_trunc) {
    if (mu.moment_class() != MomentClass::C1)
        throw std::domain_error("e_constant: measure must be of class C1 (the limit diverges otherwise)");
    if (n_trunc < 8) throw std::domain_error("e_constant: n_trunc too small");
    const cplx v1 = e_value(mu, a, n_trunc);
    const cplx v2 = e_value(mu, a, 2 * n_trunc);
    return {v2, std::abs(v2 - v1) / std::max(1e-30, std::abs(v2))};
}

Certified h_constant(const RadialMeasure& mu, const Symbol& a, int n_trunc) {
    if (n_trunc < 8) throw std::domain_error("h_constant: n_trunc too small");
    const cplx v1 = h_value(mu, a, n_trunc);
    const cplx v2 = h_value(mu, a, 2 * n_trunc);
    return {v2, std::abs(v2 - v1) / std::max(1e-30, std::abs(v2))};
}

Certified c_mu_residual(const RadialMeasure& mu, const Symbol& a, const Symbol& b,
                        long n_start, int doublings) {
    const cplx omega = omega_pair(a, b);
    std::vector<cplx> res;
    long n = n_start;
    for (int i = 0; i < doublings; ++i, n *= 2)
        res.push_back(trace_section(mu, b, a, n) - omega * mu.iota(2.0 * static_cast<double>(n)));
    const cplx lim = aitken(res);
    const double delta = std::abs(res.back() - res[res.size() - 2]);
    return {lim, delta};
}

Certified f_constant(const RadialMeasure& mu, const Symbol& a, int n_trunc) {
    if (mu.moment_class() != MomentClass::C2)
        throw std::domain_error("f_constant: measure must be of class C2");
    const Symbol ainv = invert_symbol(a).symbol;
    const Certified c = c_mu_residual(mu, a, ainv);
    const Certified h = h_constant(mu, a, n_trunc);
    return {std::exp(c.value) * h.value, std::max(c.delta, h.delta)};
}

std::complex<double> c_mu_series(const RadialMeasure& mu, const Symbol& a, const Symbol& b,
                                 long k_cap) {
    // Eq-style explicit route: per-diagonal sums of
    //   rho_{k+m,k} - 1 + m^2 h_mu(2k+m)/2,
    // the parity-sum head over l < |m| (the flat (j,k) series only reaches
    // l >= |m|), and the parity constants C_+-.
    if (mu.moment_class() != MomentClass::C2)
        throw std::domain_error("c_mu_series: measure must be of class C2");
    const ParityConstants pc = parity_constants(mu);
    const int w = std::min(a.window(), b.window());
    cplx total(0.0);
    for (int m = -w; m <= w; ++m) {
        if (m == 0) continue;
        const cplx c = a.coeff(m) * b.coeff(-m);
        if (std::abs(c) < 1e-300) continue;
        double bracket = 0.0;
        for (long k = std::max(0L, static_cast<long>(-m)); k < k_cap; ++k) {
            const double sig = 2.0 * k + m;
            const double h = sig > 0.0 ? mu.h_mu(sig) : 0.0;
            bracket += mu.rho(k + m, k) - 1.0 + 0.5 * m * m * h;
        }
        double head = 0.0;
        for (long l = 1; l < std::labs(m); ++l)
            if (((l - m) % 2) == 0) head += mu.h_mu(static_cast<double>(l));
        const double cpar = (m % 2 == 0) ? pc.c_plus : pc.c_minus;
        total += c * (bracket + 0.5 * m * m * head - 0.5 * m * m * cpar);
    }
    return total;
}

std::complex<double> aitken(std::span<const std::complex<double>> v) {
    if (v.size() < 3) return v.empty() ? cplx(0.0) : v.back();
    const cplx x1 = v[v.size() - 3], x2 = v[v.size() - 2], x3 = v.back();
    const cplx d1 = x2 - x1, d2 = x3 - x2;
    const cplx den = d2 - d1;
    if (std::abs(den) < 1e-14 * (std::abs(d1) + std::abs(d2)) || den == cplx(0.0)) return x3;
    return x3 - d2 * d2 / den;
}

SzegoReport szego_sweep(const RadialMeasure& mu, const Symbol& a, std::span<const long> n_grid,
                        SweepMode mode) {
    for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
        if (n_grid[i + 1] <= n_grid[i])
            throw std::domain_error("szego_sweep: n_grid must be strictly increasing");
    if (mode == SweepMode::C2 && mu.moment_class() != MomentClass::C2)
        throw std::domain_error("szego_sweep: C2 mode requires a class-C2 measure");

    const cplx log_g = log_g_constant(a);
    const cplx omega = (mode == SweepMode::C2) ? omega_functional(a) : cplx(0.0);
    const Symbol ainv = invert_symbol(a).symbol;

    SzegoReport rep;
    rep.n_grid.assign(n_grid.begin(), n_grid.end());
    for (long n : n_grid) {
        const FiniteSection s = m_section(mu, a, static_cast<int>(n));
        const LogDet ld = log_det(s);
        if (ld.singular())
            throw std::runtime_error("szego_sweep: singular determinant at n=" + std::to_string(n));
        cplx lr(ld.log_abs, ld.phase);
        lr -= static_cast<double>(n) * log_g;
        double io = 0.0;
        if (mode == SweepMode::C2) {
            io = mu.iota(2.0 * static_cast<double>(n));
            lr -= io * omega;
        }
        rep.iota.push_back(io);
        rep.ratios.push_back(std::exp(cplx(lr.real(), 0.0)) * std::polar(1.0, lr.imag()));
        rep.log_ratios.push_back(cplx(lr.real(), std::remainder(lr.imag(), 2.0 * M_PI)));
        rep.traces.push_back(mu.kind() == MeasureKind::Cue ? cplx(0.0)
                                                           : trace_section(mu, ainv, a, n));
    }
    rep.extrapolated_limit = aitken(rep.ratios);
    return rep;
}

}  // namespace radlab
