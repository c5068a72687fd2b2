#include "radlab/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace radlab {

double trigamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("trigamma: requires x > 0");
    // Shift into the asymptotic regime, then use the Bernoulli series.
    double acc = 0.0;
    while (x < 8.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double r = 1.0 / x;
    const double r2 = r * r;
    // psi'(x) ~ 1/x + 1/(2x^2) + sum B_{2k} x^{-2k-1}
    double s = r + 0.5 * r2 +
               r * r2 * (1.0 / 6.0 +
                         r2 * (-1.0 / 30.0 +
                               r2 * (1.0 / 42.0 +
                                     r2 * (-1.0 / 30.0 + r2 * (5.0 / 66.0)))));
    return s + acc;
}

namespace {

QuadRule make_gauss_legendre(int n) {
    // Newton iteration on P_n with the Chebyshev initial guess.
    QuadRule q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        q.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        q.weights[n - 1 - i] = q.weights[i];
    }
    return q;
}

}  // namespace

const QuadRule& gauss_legendre(int order) {
    if (order < 1 || order > 128) throw std::domain_error("gauss_legendre: order out of range");
    static std::map<int, QuadRule> cache;
    static std::mutex mu;
    std::scoped_lock lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_gauss_legendre(order)).first;
    return it->second;
}

double log_sum_exp(std::span<const double> v) {
    if (v.empty()) return -std::numeric_limits<double>::infinity();
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) {
        // series for P(a,x)
        double term = 1.0 / a, sum = term, ap = a;
        for (int i = 0; i < 10000; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // continued fraction for Q(a,x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    return 1.0 - q;
}

double gamma_quantile(double a, double u) {
    if (!(a > 0.0) || !(u > 0.0 && u < 1.0))
        throw std::domain_error("gamma_quantile: need a > 0, u in (0,1)");
    // Bracket then bisect; monotone and robust over the ranges used here.
    double lo = 0.0, hi = std::max(4.0 * a, 8.0);
    while (gamma_p(a, hi) < u) {
        hi *= 2.0;
        if (hi > 1e12) throw std::runtime_error("gamma_quantile: bracket failure");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (gamma_p(a, mid) < u)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace radlab
