#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace radlab {

// Trigamma function psi'(x), x > 0.
double trigamma(double x);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const QuadRule& gauss_legendre(int order);

// Integrate f over [a, b] with `panels` equal panels of the given GL order.
template <typename F>
double panel_integrate(F&& f, double a, double b, int order, int panels) {
    const QuadRule& q = gauss_legendre(order);
    double total = 0.0;
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w;
        const double half = 0.5 * w;
        const double mid = lo + half;
        for (std::size_t i = 0; i < q.nodes.size(); ++i)
            total += half * q.weights[i] * f(mid + half * q.nodes[i]);
    }
    return total;
}

// log(sum(exp(v))) without overflow; -inf for an empty span.
double log_sum_exp(std::span<const double> v);

// Quantile of the Gamma(a, 1) distribution: solves P(a, x) = u for x,
// with P the regularized lower incomplete gamma function. a > 0, u in (0,1).
double gamma_quantile(double a, double u);

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

}  // namespace radlab
