#pragma once

#include <Eigen/Dense>
#include <string>

#include "radlab/measure.hpp"
#include "radlab/symbol.hpp"

namespace radlab {

enum class SectionKind { Toeplitz, Hankel, MMu, KMu, KozakInverse };

struct Provenance {
    std::string measure;  // empty when not measure-dependent
    std::string symbol;
    int n = 0;
    std::string truncation;
};

// Dense n x n realization of P_n A P_n.
struct FiniteSection {
    Eigen::MatrixXcd data;
    SectionKind kind;
    Provenance prov;
};

FiniteSection toeplitz_section(const Symbol& a, int n);
// H(a) with entries a_{j+k+1}.
FiniteSection hankel_section(const Symbol& a, int n);
FiniteSection m_section(const RadialMeasure& mu, const Symbol& a, int n);
// K_mu = M_mu - T, entrywise by construction.
FiniteSection k_section(const RadialMeasure& mu, const Symbol& a, int n);

double hs_norm(const FiniteSection& s);
double trace_norm(const FiniteSection& s);

// Partial trace norm of K_mu(t^m): sum_{k<n} |rho_{k+|m|,k} - 1|.
double diagonal_deficit_sum(const RadialMeasure& mu, long m, long n);

// A_n = P_n T^{-1}(a^{-1}) P_n via an n_big x n_big truncation of T(a^{-1}),
// certified by doubling n_big until the block is stable to 1e-9.
FiniteSection kozak_inverse_section(const Symbol& a, int n, int n_big = 0);

// Portable dump, one "row,col,re,im" line per entry.
void dump_csv(const FiniteSection& s, std::ostream& out);

// Integer log-moment table m = 0..max_index (shared by section builders).
std::vector<double> log_moment_table(const RadialMeasure& mu, long max_index);

}  // namespace radlab
