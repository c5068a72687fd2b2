#include "radlab/cumulants.hpp"

#include <cmath>
#include <stdexcept>

#include "radlab/sections.hpp"

namespace radlab {

namespace {

// Banded complex matrix: value(i, i+d) for |d| <= bw, rows 0..n-1.
struct Banded {
    long n = 0;
    int bw = 0;
    std::vector<cplx> v;  // row-major, (2bw+1) per row

    Banded(long n_, int bw_) : n(n_), bw(bw_), v(static_cast<std::size_t>(n_) * (2 * bw_ + 1)) {}
    cplx& at(long i, int d) { return v[static_cast<std::size_t>(i) * (2 * bw + 1) + static_cast<std::size_t>(d + bw)]; }
    cplx get(long i, int d) const {
        if (i < 0 || i >= n || d < -bw || d > bw) return cplx(0.0);
        const long j = i + d;
        if (j < 0 || j >= n) return cplx(0.0);
        return v[static_cast<std::size_t>(i) * (2 * bw + 1) + static_cast<std::size_t>(d + bw)];
    }
};

Banded banded_m_section(const RadialMeasure& mu, const Symbol& a, long big,
                        const std::vector<double>& lm) {
    Banded out(big, a.window());
    const bool cue = mu.kind() == MeasureKind::Cue;
    for (long i = 0; i < big; ++i) {
        for (int d = -out.bw; d <= out.bw; ++d) {
            const long j = i + d;
            if (j < 0 || j >= big) continue;
            const cplx c = a.coeff(d);
            if (c == cplx(0.0)) continue;
            if (cue || d == 0) {
                out.at(i, d) = c;
            } else {
                const double r = std::exp(lm[static_cast<std::size_t>(i + j)] -
                                          0.5 * (lm[static_cast<std::size_t>(2 * i)] +
                                                 lm[static_cast<std::size_t>(2 * j)]));
                out.at(i, d) = c * r;
            }
        }
    }
    return out;
}

Banded mul(const Banded& a, const Banded& b, int out_bw) {
    Banded c(a.n, out_bw);
    for (long i = 0; i < a.n; ++i) {
        for (int d1 = -a.bw; d1 <= a.bw; ++d1) {
            const cplx av = a.get(i, d1);
            if (av == cplx(0.0)) continue;
            const long l = i + d1;
            for (int d2 = -b.bw; d2 <= b.bw; ++d2) {
                const int d = d1 + d2;
                if (d < -out_bw || d > out_bw) continue;
                const cplx bv = b.get(l, d2);
                if (bv == cplx(0.0)) continue;
                c.at(i, d) += av * bv;
            }
        }
    }
    return c;
}

void axpy(Banded& dst, const cplx& alpha, const Banded& src) {
    for (long i = 0; i < dst.n; ++i)
        for (int d = -src.bw; d <= src.bw; ++d) {
            const cplx s = src.get(i, d);
            if (s != cplx(0.0)) dst.at(i, d) += alpha * s;
        }
}

cplx trace_block(const Banded& a, long rows) {
    cplx t(0.0);
    for (long i = 0; i < rows; ++i) t += a.get(i, 0);
    return t;
}

// traces of C_2..C_{m_max} over the first `rows` diagonal entries; entries are
// exact operator entries as long as rows + margin <= big
std::vector<cplx> recursion_traces(const RadialMeasure& mu, const Symbol& f, int m_max,
                                   long rows, long big) {
    const auto lm = (mu.kind() == MeasureKind::Cue) ? std::vector<double>{}
                                                    : log_moment_table(mu, 2 * (big - 1));
    std::vector<Banded> msec;  // msec[k-1] = M_mu(f^k)
    Symbol fk = f;
    for (int k = 1; k <= m_max; ++k) {
        msec.push_back(banded_m_section(mu, fk, big, lm));
        if (k < m_max) fk = fk.multiply(f);
    }
    auto binom = [](int n, int k) {
        double r = 1.0;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    std::vector<Banded> c;  // c[m-1] = C_m, bandwidth m*w
    c.push_back(msec[0]);
    std::vector<cplx> traces;
    const int w = f.window();
    for (int m = 2; m <= m_max; ++m) {
        Banded cm = msec[static_cast<std::size_t>(m - 1)];
        for (int k = 1; k <= m - 1; ++k) {
            const Banded prod = mul(c[static_cast<std::size_t>(m - k - 1)],
                                    msec[static_cast<std::size_t>(k - 1)], m * w);
            axpy(cm, cplx(-binom(m - 1, k)), prod);
        }
        traces.push_back(trace_block(cm, rows));
        c.push_back(std::move(cm));
    }
    return traces;
}

}  // namespace

CumulantReport cumulant_recursion(const RadialMeasure& mu, const Symbol& f, int m_max,
                                  long n_trunc) {
    if (mu.moment_class() != MomentClass::C1)
        throw std::domain_error("cumulant_recursion: measure must be of class C1");
    if (!f.real_valued()) throw std::domain_error("cumulant_recursion: f must be real-valued");
    if (m_max < 2 || m_max > 6) throw std::domain_error("cumulant_recursion: m_max must be in 2..6");
    if (n_trunc < 2 || (n_trunc & (n_trunc - 1)) != 0)
        throw std::domain_error("cumulant_recursion: n_trunc must be a power of two");

    const int w = std::max(1, f.window());
    const long margin = static_cast<long>(m_max) * (m_max + 1) / 2 * w + 2L * w;
    const long big = 2 * n_trunc + margin;
    const auto t_n = recursion_traces(mu, f, m_max, n_trunc, big);
    const auto t_2n = recursion_traces(mu, f, m_max, 2 * n_trunc, big);

    CumulantReport rep;
    rep.measure = mu.name();
    rep.m_max = m_max;
    rep.n_trunc = n_trunc;
    double sum_k = 0.0;  // sum_{k>=1} k |f_k|^2
    for (int k = 1; k <= f.window(); ++k) sum_k += k * std::norm(f.coeff(k));
    for (int m = 2; m <= m_max; ++m) {
        const cplx tr = t_2n[static_cast<std::size_t>(m - 2)];
        rep.traces.push_back(tr.real());
        rep.tail_certificates.push_back(std::abs(tr - t_n[static_cast<std::size_t>(m - 2)]));
        rep.cumulants.push_back(m == 2 ? tr.real() + sum_k : tr.real());
    }
    return rep;
}

double shift_invariance_check(const RadialMeasure& mu, const Symbol& f, double c_shift,
                              long n_trunc) {
    const int m_max = 4;
    const CumulantReport base = cumulant_recursion(mu, f, m_max, n_trunc);
    const CumulantReport shifted = cumulant_recursion(mu, f.add_constant(c_shift), m_max, n_trunc);
    double dev = 0.0;
    for (std::size_t i = 0; i < base.traces.size(); ++i)
        dev = std::max(dev, std::abs(base.traces[i] - shifted.traces[i]));
    return dev;
}

double hankel_trace(const Symbol& b) {
    double s = 0.0;
    for (int k = 1; k <= b.window(); ++k)
        s += k * (b.coeff(k) * b.coeff(-k)).real();
    return s;
}

}  // namespace radlab
