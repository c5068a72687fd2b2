#pragma once

#include <string>
#include <vector>

#include "radlab/measure.hpp"
#include "radlab/symbol.hpp"

namespace radlab {

struct CumulantReport {
    std::string measure;
    int m_max = 0;
    long n_trunc = 0;
    // index i holds order m = i + 2
    std::vector<double> traces;             // trace C_m at the doubled size
    std::vector<double> cumulants;          // c_2 includes + sum_k k |f_k|^2
    std::vector<double> tail_certificates;  // |trace at 2N - trace at N|
};

// Cumulant recursion C_m = M(f^m) - sum binom(m-1,k) C_{m-k} M(f^k) evaluated
// on padded banded sections, so every retained diagonal entry is an exact
// operator entry; traces read off the leading n_trunc (and 2 n_trunc) rows.
CumulantReport cumulant_recursion(const RadialMeasure& mu, const Symbol& f, int m_max,
                                  long n_trunc);

// max over m in {2,3,4} of |trace C_m(f) - trace C_m(f + c)|
double shift_invariance_check(const RadialMeasure& mu, const Symbol& f, double c_shift,
                              long n_trunc = 256);

// trace(H(b) H(b~)) = sum_{k>=1} k b_k b_{-k}
double hankel_trace(const Symbol& b);

}  // namespace radlab
