#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace radlab {

enum class MeasureKind { Cue, Ginibre, Bergman, JacobiEdge, GammaWeight, LogStretch, Custom };
enum class MomentClass { C1, C2 };

// Declared moment-condition class with its exponents. For C1 only beta is
// meaningful; for C2 the triple (beta, gamma, rho_decay) matters.
struct Regularity {
    MomentClass cls = MomentClass::C1;
    double beta = 2.0;
    double gamma = 0.0;
    double rho_decay = 0.0;
};

// Density samples plus quadrature setup for user-supplied measures.
struct CustomSpec {
    std::vector<double> r;        // strictly increasing, > 0
    std::vector<double> density;  // same length, >= 0
    double support_lo = 0.0;
    double support_hi = 0.0;
    int gl_order = 16;
    int panels = 256;
    Regularity regularity;
};

// Radially symmetric reference measure: moment oracle and sampling support.
// Immutable after construction; all member functions are pure.
class RadialMeasure {
  public:
    static RadialMeasure cue();
    static RadialMeasure ginibre();
    static RadialMeasure bergman();
    static RadialMeasure jacobi_edge(double alpha);
    static RadialMeasure gamma_weight(double p, double alpha);
    static RadialMeasure log_stretch(double c, double q);
    static RadialMeasure custom(CustomSpec spec);
    // CSV with header "r,density" plus a sidecar JSON config
    // {"support":[lo,hi], "order":k, "panels":p, "class":"C1"|"C2", ...}.
    static RadialMeasure from_files(const std::string& csv_path, const std::string& config_path);
    // Registry lookup: "cue", "ginibre", "bergman", "jacobi(a)", "gammaweight(p,a)",
    // "logstretch(c,q)".
    static RadialMeasure by_name(const std::string& name);

    MeasureKind kind() const { return kind_; }
    MomentClass moment_class() const { return reg_.cls; }
    const Regularity& regularity() const { return reg_; }
    std::string name() const;

    // ln m_xi, xi >= 0. Closed form via log-Gamma for the analytic kinds,
    // quadrature for LogStretch/Custom.
    double log_moment(double xi) const;

    // (ln m_xi)''; closed form where available, Richardson-validated central
    // differences otherwise. Throws if the two step sizes disagree badly.
    double log_moment_dd(double xi) const;

    // rho_{j,k} = m_{j+k} / sqrt(m_{2j} m_{2k}), assembled in log space.
    double rho(long j, long k) const;

    // Leading form of (ln m_xi)'' for C2 measures.
    double h_mu(double xi) const;

    // iota(x) = (1/2) int_1^x h_mu. C2 measures only.
    double iota(double x) const;

    // u-quantile of the density r^{2k} dmu(r) / m_{2k}.
    double radial_power_sample(long k, double u) const;

    // density(r) of dmu(r) = density(r) dr; nullopt for the CUE point mass.
    std::optional<double> density_at(double r) const;

    double support_lo() const;
    double support_hi() const;  // finite cutoff adequate for all moments used

    // Exponent alpha of the mean-measure law (ln m_xi)'' = alpha/(xi+1) + eps;
    // nullopt when the measure has no declared value.
    std::optional<double> circular_alpha() const;

  private:
    RadialMeasure(MeasureKind k, double p1, double p2, Regularity reg)
        : kind_(k), p1_(p1), p2_(p2), reg_(reg) {}
    double quantile_generic(long k, double u) const;

    MeasureKind kind_;
    double p1_ = 0.0;  // JacobiEdge: alpha; GammaWeight: p; LogStretch: c
    double p2_ = 0.0;  // GammaWeight: alpha; LogStretch: q
    Regularity reg_;
    std::shared_ptr<const CustomSpec> custom_;
};

struct ClassifyResult {
    double alpha_hat = 0.0;
    double beta_hat = 0.0;
    double max_residual = 0.0;
};

// Fits (ln m_xi)'' ~ alpha xi^{-beta} on the given grid by log-log least
// squares, weighted toward large xi where the relation is asymptotic.
// Numerically flat data (CUE) reports beta_hat = +inf, alpha_hat = 0.
ClassifyResult classify(const RadialMeasure& mu, std::span<const double> xi_grid);

}  // namespace radlab
