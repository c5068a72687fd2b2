#pragma once

#include <Eigen/Dense>
#include <complex>

#include "radlab/measure.hpp"
#include "radlab/sections.hpp"
#include "radlab/symbol.hpp"

namespace radlab {

// Log-modulus plus phase of a complex determinant. The phase is accumulated
// per pivot during elimination and wrapped to (-pi, pi] at the end; an
// exactly singular matrix carries log_abs = -inf.
struct LogDet {
    double log_abs = 0.0;
    double phase = 0.0;
    bool singular() const { return log_abs == -std::numeric_limits<double>::infinity(); }
    std::complex<double> value() const {
        return singular() ? std::complex<double>(0.0) : std::polar(std::exp(log_abs), phase);
    }
};

LogDet log_det(const Eigen::MatrixXcd& m);
inline LogDet log_det(const FiniteSection& s) { return log_det(s.data); }

// log E[e^{i lambda X_{f,n}}] = log det M_{mu,n}(e^{i lambda f}); f real-valued.
LogDet angular_mgf(const RadialMeasure& mu, const Symbol& f, double lambda, int n);

// Brute-force evaluation of the n-point average of prod phi(arg z_k) for
// n <= 3: Vandermonde expanded over permutation pairs, angular integrals
// exact for trig polynomials, radial moments by Gauss-Legendre panels.
// Entirely independent of the determinant path.
std::complex<double> quadrature_oracle(const RadialMeasure& mu, const Symbol& phi, int n);

struct FdCumulant {
    double value = 0.0;
    double refinement_delta = 0.0;  // |D(h) - D(h/2)|, reported not fatal
};

// m-th cumulant of X_{f,n} by Richardson-refined central differences of
// lambda -> angular_mgf at 0; order m in {1,2,3,4}. h_lambda 0 picks the
// order-scaled default.
FdCumulant fd_cumulant(const RadialMeasure& mu, const Symbol& f, int n, int order,
                       double h_lambda = 0.0);

}  // namespace radlab
