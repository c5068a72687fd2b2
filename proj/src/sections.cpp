#include "radlab/sections.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace radlab {

std::vector<double> log_moment_table(const RadialMeasure& mu, long max_index) {
    std::vector<double> t(static_cast<std::size_t>(max_index) + 1);
    for (long i = 0; i <= max_index; ++i) t[static_cast<std::size_t>(i)] = mu.log_moment(static_cast<double>(i));
    return t;
}

FiniteSection toeplitz_section(const Symbol& a, int n) {
    if (n < 1) throw std::domain_error("toeplitz_section: n must be >= 1");
    Eigen::MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m(j, k) = a.coeff(j - k);
    return {std::move(m), SectionKind::Toeplitz, {"", "window:" + std::to_string(a.window()), n, ""}};
}

FiniteSection hankel_section(const Symbol& a, int n) {
    if (n < 1) throw std::domain_error("hankel_section: n must be >= 1");
    Eigen::MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m(j, k) = a.coeff(j + k + 1);
    return {std::move(m), SectionKind::Hankel, {"", "window:" + std::to_string(a.window()), n, ""}};
}

FiniteSection m_section(const RadialMeasure& mu, const Symbol& a, int n) {
    if (n < 1) throw std::domain_error("m_section: n must be >= 1");
    Eigen::MatrixXcd m(n, n);
    if (mu.kind() == MeasureKind::Cue) {
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) m(j, k) = a.coeff(j - k);
    } else {
        const auto lm = log_moment_table(mu, 2L * (n - 1));
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const cplx c = a.coeff(j - k);
                if (c == cplx(0.0)) {
                    m(j, k) = 0.0;
                    continue;
                }
                const double r = (j == k) ? 1.0
                                          : std::exp(lm[static_cast<std::size_t>(j + k)] -
                                                     0.5 * (lm[static_cast<std::size_t>(2 * j)] +
                                                            lm[static_cast<std::size_t>(2 * k)]));
                m(j, k) = c * r;
            }
        }
    }
    return {std::move(m), SectionKind::MMu, {mu.name(), "window:" + std::to_string(a.window()), n, ""}};
}

FiniteSection k_section(const RadialMeasure& mu, const Symbol& a, int n) {
    FiniteSection mm = m_section(mu, a, n);
    FiniteSection tt = toeplitz_section(a, n);
    FiniteSection out{mm.data - tt.data, SectionKind::KMu,
                      {mu.name(), "window:" + std::to_string(a.window()), n, ""}};
    return out;
}

double hs_norm(const FiniteSection& s) { return s.data.norm(); }

double trace_norm(const FiniteSection& s) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(s.data);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("trace_norm: SVD did not converge");
    return svd.singularValues().sum();
}

double diagonal_deficit_sum(const RadialMeasure& mu, long m, long n) {
    if (n < 1) throw std::domain_error("diagonal_deficit_sum: n must be >= 1");
    if (mu.kind() == MeasureKind::Cue) return 0.0;
    const long am = std::labs(m);
    double s = 0.0;
    for (long k = 0; k < n; ++k) s += std::abs(mu.rho(k + am, k) - 1.0);
    return s;
}

void dump_csv(const FiniteSection& s, std::ostream& out) {
    out << "row,col,re,im\n";
    char buf[96];
    for (Eigen::Index j = 0; j < s.data.rows(); ++j) {
        for (Eigen::Index k = 0; k < s.data.cols(); ++k) {
            std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g\n",
                          static_cast<long long>(j), static_cast<long long>(k),
                          s.data(j, k).real(), s.data(j, k).imag());
            out << buf;
        }
    }
}

FiniteSection kozak_inverse_section(const Symbol& a, int n, int n_big) {
    if (n < 1) throw std::domain_error("kozak_inverse_section: n must be >= 1");
    if (n_big <= 0) n_big = std::max(4 * n, 16);
    if (n_big < 4 * n) throw std::domain_error("kozak_inverse_section: n_big must be >= 4n");

    auto block_at = [&](int big) {
        Symbol ainv = invert_symbol(a, big - 1).symbol;
        Eigen::MatrixXcd t = toeplitz_section(ainv, big).data;
        Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Identity(big, n);
        Eigen::MatrixXcd x = t.partialPivLu().solve(rhs);
        return Eigen::MatrixXcd(x.topRows(n));
    };

    Eigen::MatrixXcd prev = block_at(n_big);
    for (int d = 0; d < 4; ++d) {
        n_big *= 2;
        Eigen::MatrixXcd cur = block_at(n_big);
        const double change = (cur - prev).cwiseAbs().maxCoeff();
        if (change < 1e-9) {
            Provenance prov{"", "window:" + std::to_string(a.window()), n,
                            "n_big=" + std::to_string(n_big)};
            return {std::move(cur), SectionKind::KozakInverse, std::move(prov)};
        }
        prev = std::move(cur);
    }
    throw std::runtime_error("kozak_inverse_section: no convergence after 4 doublings");
}

}  // namespace radlab
