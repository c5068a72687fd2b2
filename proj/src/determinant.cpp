#include "radlab/determinant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radlab/special.hpp"

namespace radlab {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_phase(double p) {
    double r = std::remainder(p, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}
}  // namespace

LogDet log_det(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) throw std::domain_error("log_det: matrix must be square");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    const auto& diag = lu.matrixLU().diagonal();
    double log_abs = 0.0, phase = 0.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        const double a = std::abs(diag(i));
        if (a == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
        log_abs += std::log(a);
        phase += std::arg(diag(i));
    }
    // each transposition flips the determinant sign
    int swaps = 0;
    const auto& perm = lu.permutationP().indices();
    std::vector<int> p(perm.data(), perm.data() + perm.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (p[i] != static_cast<int>(i)) {
            std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(p[i])]);
            ++swaps;
        }
    }
    if (swaps % 2) phase += kPi;
    return {log_abs, wrap_phase(phase)};
}

LogDet angular_mgf(const RadialMeasure& mu, const Symbol& f, double lambda, int n) {
    if (!f.real_valued()) throw std::domain_error("angular_mgf: f must be real-valued");
    if (n < 1) throw std::domain_error("angular_mgf: n must be >= 1");
    if (lambda == 0.0) return {0.0, 0.0};  // M_{mu,n}(1) = I
    const Symbol ilf = f.scale(cplx(0.0, lambda));
    const Symbol a = exp_symbol(ilf, std::max(n - 1, 1)).symbol;
    return log_det(m_section(mu, a, n));
}

std::complex<double> quadrature_oracle(const RadialMeasure& mu, const Symbol& phi, int n) {
    if (n < 1 || n > 3) throw std::domain_error("quadrature_oracle: n must be in {1,2,3}");

    // radial moments m_0..m_{2n-2} by quadrature, not by the log-moment oracle
    std::vector<double> mom(static_cast<std::size_t>(2 * n - 1), 1.0);
    if (mu.kind() != MeasureKind::Cue) {
        double hi = mu.support_hi();
        if (!std::isfinite(hi)) hi = 12.0;  // e^{-r^2}/e^{-r^a} tails dead long before
        const double lo = std::max(mu.support_lo(), 0.0);
        for (int k = 0; k <= 2 * n - 2; ++k) {
            auto f = [&](double r) {
                return std::pow(r, k) * mu.density_at(r).value_or(0.0);
            };
            mom[static_cast<std::size_t>(k)] = panel_integrate(f, lo, hi, 40, 80);
        }
    }

    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    auto parity = [](std::vector<int> p) {
        int s = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            while (p[i] != static_cast<int>(i)) {
                std::swap(p[i], p[static_cast<std::size_t>(p[i])]);
                ++s;
            }
        return (s % 2) ? -1.0 : 1.0;
    };
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    cplx total(0.0);
    for (const auto& s1 : perms) {
        const double g1 = parity(s1);
        for (const auto& s2 : perms) {
            const double g2 = parity(s2);
            cplx term(g1 * g2, 0.0);
            bool alive = true;
            for (int k = 0; k < n && alive; ++k) {
                const cplx c = phi.coeff(s2[static_cast<std::size_t>(k)] - s1[static_cast<std::size_t>(k)]);
                if (c == cplx(0.0)) {
                    alive = false;
                    break;
                }
                term *= c * mom[static_cast<std::size_t>(s1[static_cast<std::size_t>(k)] + s2[static_cast<std::size_t>(k)])];
            }
            if (alive) total += term;
        }
    }
    double z = 1.0;
    for (int k = 0; k < n; ++k) z *= mom[static_cast<std::size_t>(2 * k)];
    double nf = 1.0;
    for (int k = 2; k <= n; ++k) nf *= k;
    return total / (nf * z);
}

FdCumulant fd_cumulant(const RadialMeasure& mu, const Symbol& f, int n, int order,
                       double h_lambda) {
    if (order < 1 || order > 4) throw std::domain_error("fd_cumulant: order must be in {1,..,4}");
    if (h_lambda <= 0.0) {
        constexpr double defaults[5] = {0, 0.02, 0.02, 0.06, 0.12};
        h_lambda = defaults[order];
    }

    auto glog = [&](double lam) -> cplx {
        const LogDet ld = angular_mgf(mu, f, lam, n);
        if (ld.singular()) throw std::runtime_error("fd_cumulant: singular determinant on stencil");
        return {ld.log_abs, ld.phase};
    };

    auto stencil = [&](double h) -> cplx {
        // phases unwrapped across the stencil, lambda ascending, anchored at 0
        std::vector<double> lams;
        if (order <= 2)
            lams = {-h, 0.0, h};
        else
            lams = {-2 * h, -h, 0.0, h, 2 * h};
        std::vector<cplx> g(lams.size());
        for (std::size_t i = 0; i < lams.size(); ++i) g[i] = glog(lams[i]);
        const std::size_t mid = lams.size() / 2;
        for (std::size_t i = mid + 1; i < g.size(); ++i) {
            double d = g[i].imag() - g[i - 1].imag();
            d = std::remainder(d, 2.0 * kPi);
            g[i].imag(g[i - 1].imag() + d);
        }
        for (std::size_t i = mid; i-- > 0;) {
            double d = g[i].imag() - g[i + 1].imag();
            d = std::remainder(d, 2.0 * kPi);
            g[i].imag(g[i + 1].imag() + d);
        }
        switch (order) {
            case 1: return (g[2] - g[0]) / (2.0 * h);
            case 2: return (g[2] - 2.0 * g[1] + g[0]) / (h * h);
            case 3: return (g[4] - 2.0 * g[3] + 2.0 * g[1] - g[0]) / (2.0 * h * h * h);
            default: return (g[4] - 4.0 * g[3] + 6.0 * g[2] - 4.0 * g[1] + g[0]) / (h * h * h * h);
        }
    };

    const cplx d1 = stencil(h_lambda);
    const cplx d2 = stencil(0.5 * h_lambda);
    const cplx rich = (4.0 * d2 - d1) / 3.0;  // stencils are O(h^2) accurate
    // c_m = (-i)^m d^m/dlambda^m log E |_0
    const cplx mi(0.0, -1.0);
    cplx pw(1.0);
    for (int i = 0; i < order; ++i) pw *= mi;
    const cplx val = pw * rich;
    return {val.real(), std::abs(d1 - d2)};
}

}  // namespace radlab
