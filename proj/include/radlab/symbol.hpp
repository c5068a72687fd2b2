#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "radlab/measure.hpp"

namespace radlab {

using cplx = std::complex<double>;

class NonInvertibleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class NonzeroWindingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Finite window of Fourier coefficients of a function on the unit circle,
// convention f_k = (1/2pi) int f(theta) e^{-ik theta} dtheta. Immutable value.
class Symbol {
  public:
    Symbol() : window_(0), coeffs_(1, cplx(0.0)) { retag(); }
    Symbol(int window, std::vector<cplx> coeffs);  // coeffs indexed -N..N
    Symbol(int window, std::vector<cplx> coeffs, int grid_size);

    static Symbol constant(cplx c);
    static Symbol from_trig(std::span<const std::pair<int, cplx>> terms);
    // f(theta) = 2 cos(theta); ubiquitous test function
    static Symbol two_cos();

    int window() const { return window_; }
    // grid used (or adequate) for transform-based constructions; >= 4*window + 4
    int grid_size() const { return grid_size_; }
    cplx coeff(int k) const {
        return (k < -window_ || k > window_) ? cplx(0.0) : coeffs_[static_cast<std::size_t>(k + window_)];
    }
    std::span<const cplx> coeffs() const { return coeffs_; }
    bool real_valued() const { return real_valued_; }

    cplx eval(double theta) const;
    std::vector<cplx> eval_grid(int m) const;  // theta_j = 2 pi j / m

    Symbol multiply(const Symbol& other) const;
    Symbol pow_int(int m) const;
    Symbol add(const Symbol& other) const;
    Symbol scale(cplx factor) const;
    Symbol add_constant(cplx c) const;
    Symbol truncate(int new_window) const;
    // b~(t) = b(1/t): coefficients reversed
    Symbol flipped() const;

    double max_abs_coeff() const;

  private:
    void retag();
    int window_;
    std::vector<cplx> coeffs_;
    int grid_size_ = 0;
    bool real_valued_ = false;
};

// Result of a grid-transform construction; tail_l2 is the l2 mass of the
// coefficients dropped outside the kept window.
struct GridTransform {
    Symbol symbol;
    double tail_l2 = 0.0;
    bool aliasing = false;
};

// Coefficients from samples on the uniform grid theta_j = 2 pi j / M.
// Requires values.size() >= 4*window + 4.
GridTransform from_samples(std::span<const cplx> values, int window);

// Pointwise exp/log/reciprocal on a grid, transformed back to the window
// n_out (0 picks the default growth 4*N + 8). log and invert require
// min |s| > 1e-8 on the grid and winding number zero.
GridTransform exp_symbol(const Symbol& s, int n_out = 0, int grid = 0);
GridTransform log_symbol(const Symbol& s, int n_out = 0, int grid = 0);
GridTransform invert_symbol(const Symbol& s, int n_out = 0, int grid = 0);

double min_modulus_on_grid(const Symbol& s, int grid = 0);
int winding_number(const Symbol& s, int grid = 0);

// F-ell^p(nu) weight choices.
class FlpWeight {
  public:
    static FlpWeight power(double sigma);
    static FlpWeight table(std::vector<double> nu);  // nu[m], m = 0..; symmetric
    static FlpWeight iota_weight(const RadialMeasure& mu, double sigma);
    double at(int m) const;

  private:
    FlpWeight() = default;
    int kind_ = 0;  // 0 power, 1 table, 2 iota
    double sigma_ = 0.0;
    std::vector<double> table_;
    std::shared_ptr<const RadialMeasure> mu_;
};

// (sum_m |f_m|^p nu_m)^{1/p} over the stored window; p in {1, 2}.
double flp_norm(const Symbol& s, int p, const FlpWeight& w);

// CLI mini-format: "trig:k,re,im;k,re,im;..." or "file:<csv path>" (rows k,re,im),
// optionally wrapped as "exp:<spec>".
Symbol parse_symbol(const std::string& spec);

}  // namespace radlab
