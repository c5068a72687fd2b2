#pragma once

#include <span>

namespace radlab {

struct MeanVar {
    double mean = 0.0;
    double var = 0.0;  // unbiased
    double se_mean = 0.0;
};
MeanVar mean_var(std::span<const double> x);

// Two-sample Kolmogorov-Smirnov asymptotic p-value.
double ks_two_sample_pvalue(std::span<const double> a, std::span<const double> b);

}  // namespace radlab
