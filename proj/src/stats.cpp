#include "radlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace radlab {

MeanVar mean_var(std::span<const double> x) {
    if (x.size() < 2) throw std::domain_error("mean_var: need at least 2 samples");
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    double s2 = 0.0;
    for (double v : x) s2 += (v - m) * (v - m);
    s2 /= static_cast<double>(x.size() - 1);
    return {m, s2, std::sqrt(s2 / static_cast<double>(x.size()))};
}

double ks_two_sample_pvalue(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::domain_error("ks: empty sample");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    const double n1 = static_cast<double>(x.size()), n2 = static_cast<double>(y.size());
    while (i < x.size() && j < y.size()) {
        if (x[i] <= y[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
    }
    const double ne = std::sqrt(n1 * n2 / (n1 + n2));
    const double lam = (ne + 0.12 + 0.11 / ne) * d;
    // Kolmogorov tail Q(lam) = 2 sum (-1)^{j-1} exp(-2 j^2 lam^2)
    double p = 0.0, sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lam * lam);
        p += 2.0 * sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace radlab
