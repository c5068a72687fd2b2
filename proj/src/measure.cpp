#include "radlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "radlab/special.hpp"

namespace radlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// LogStretch moments are computed from the substituted integral
// int_0^inf exp(xi r - c r^q) dr, integrated in u = ln r around the
// stationary point r* = (xi/(cq))^{1/(q-1)}.
double logstretch_log_moment(double xi, double c, double q) {
    if (xi < 1e-9) xi = 1e-9;
    const double rstar = std::pow(xi / (c * q), 1.0 / (q - 1.0));
    const double ustar = std::log(rstar);
    const double curv = std::abs(xi * rstar - c * q * q * std::pow(rstar, q)) + 1.0;
    const double width = 1.0 / std::sqrt(curv);
    const double lo = ustar - std::max(12.0 * width, 12.0);
    const double hi = ustar + 12.0 * width;
    const QuadRule& gl = gauss_legendre(16);
    const int panels = 200;
    std::vector<double> lg;
    lg.reserve(static_cast<std::size_t>(panels) * gl.nodes.size());
    const double pw = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * pw;
        const double half = 0.5 * pw, mid = a + half;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = mid + half * gl.nodes[i];
            const double r = std::exp(u);
            lg.push_back(xi * r - c * std::pow(r, q) + u + std::log(half * gl.weights[i]));
        }
    }
    return log_sum_exp(lg);
}

double custom_log_moment(double xi, const CustomSpec& s) {
    // GL panels in t = ln r of e^{(xi+1) t} * density(e^t), density linearly
    // interpolated in r from the sample grid; accumulated in log space.
    const double lo = std::log(s.support_lo), hi = std::log(s.support_hi);
    const QuadRule& gl = gauss_legendre(s.gl_order);
    std::vector<double> lg;
    lg.reserve(static_cast<std::size_t>(s.panels) * gl.nodes.size());
    const double pw = (hi - lo) / s.panels;
    for (int p = 0; p < s.panels; ++p) {
        const double a = lo + p * pw;
        const double half = 0.5 * pw, mid = a + half;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double t = mid + half * gl.nodes[i];
            const double r = std::exp(t);
            auto it = std::upper_bound(s.r.begin(), s.r.end(), r);
            double d;
            if (it == s.r.begin()) {
                d = s.density.front();
            } else if (it == s.r.end()) {
                d = s.density.back();
            } else {
                const std::size_t k = static_cast<std::size_t>(it - s.r.begin());
                const double w = (r - s.r[k - 1]) / (s.r[k] - s.r[k - 1]);
                d = (1.0 - w) * s.density[k - 1] + w * s.density[k];
            }
            if (d <= 0.0) continue;
            lg.push_back((xi + 1.0) * t + std::log(d) + std::log(half * gl.weights[i]));
        }
    }
    const double v = log_sum_exp(lg);
    if (!std::isfinite(v))
        throw std::runtime_error("custom measure: quadrature produced no mass (bad grid?)");
    return v;
}

}  // namespace

RadialMeasure RadialMeasure::cue() {
    return RadialMeasure(MeasureKind::Cue, 0, 0, {MomentClass::C1, 2.0, 0, 0});
}

RadialMeasure RadialMeasure::ginibre() {
    return RadialMeasure(MeasureKind::Ginibre, 0, 0, {MomentClass::C2, 1.0, 2.0, 2.0});
}

RadialMeasure RadialMeasure::bergman() {
    return RadialMeasure(MeasureKind::Bergman, 0, 0, {MomentClass::C1, 2.0, 0, 0});
}

RadialMeasure RadialMeasure::jacobi_edge(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("jacobi_edge: alpha must be > 0");
    return RadialMeasure(MeasureKind::JacobiEdge, alpha, 0, {MomentClass::C1, 2.0, 0, 0});
}

RadialMeasure RadialMeasure::gamma_weight(double p, double alpha) {
    if (!(alpha > 0.0) || !(p > -1.0))
        throw std::domain_error("gamma_weight: need alpha > 0, p > -1");
    return RadialMeasure(MeasureKind::GammaWeight, p, alpha, {MomentClass::C2, 1.0, 2.0, 2.0});
}

RadialMeasure RadialMeasure::log_stretch(double c, double q) {
    if (!(c > 0.0) || !(q > 3.0))
        throw std::domain_error("log_stretch: need c > 0 and q > 3 (so beta > 1/2)");
    const double beta = (q - 2.0) / (q - 1.0);
    return RadialMeasure(MeasureKind::LogStretch, c, q,
                         {MomentClass::C2, beta, beta + 1.0, (2.0 * q - 3.0) / (q - 1.0)});
}

RadialMeasure RadialMeasure::custom(CustomSpec spec) {
    if (spec.r.size() < 2 || spec.r.size() != spec.density.size())
        throw std::domain_error("custom measure: need matching r/density arrays, length >= 2");
    if (!std::is_sorted(spec.r.begin(), spec.r.end()) ||
        std::adjacent_find(spec.r.begin(), spec.r.end()) != spec.r.end())
        throw std::domain_error("custom measure: r grid must be strictly increasing");
    if (!(spec.support_lo > 0.0) || !(spec.support_hi > spec.support_lo))
        throw std::domain_error("custom measure: need 0 < support_lo < support_hi");
    RadialMeasure m(MeasureKind::Custom, 0, 0, spec.regularity);
    m.custom_ = std::make_shared<const CustomSpec>(std::move(spec));
    return m;
}

RadialMeasure RadialMeasure::from_files(const std::string& csv_path, const std::string& config_path) {
    std::ifstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot open " + csv_path);
    CustomSpec spec;
    std::string line;
    if (!std::getline(csv, line) || line.rfind("r,density", 0) != 0)
        throw std::runtime_error(csv_path + ": expected header 'r,density'");
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double r, d;
        char comma;
        if (!(ss >> r >> comma >> d))
            throw std::runtime_error(csv_path + ": bad row '" + line + "'");
        spec.r.push_back(r);
        spec.density.push_back(d);
    }
    std::ifstream cfg(config_path);
    if (!cfg) throw std::runtime_error("cannot open " + config_path);
    nlohmann::json j;
    cfg >> j;
    spec.support_lo = j.at("support").at(0).get<double>();
    spec.support_hi = j.at("support").at(1).get<double>();
    spec.gl_order = j.value("order", 16);
    spec.panels = j.value("panels", 256);
    const std::string cls = j.value("class", "C1");
    spec.regularity.cls = (cls == "C2") ? MomentClass::C2 : MomentClass::C1;
    spec.regularity.beta = j.value("beta", 2.0);
    spec.regularity.gamma = j.value("gamma", spec.regularity.beta + 1.0);
    spec.regularity.rho_decay = j.value("rho_decay", 2.0);
    return custom(std::move(spec));
}

RadialMeasure RadialMeasure::by_name(const std::string& name) {
    auto params = [&](std::size_t open) {
        if (name.back() != ')') throw std::domain_error("measure '" + name + "': missing ')'");
        std::vector<double> out;
        std::istringstream ss(name.substr(open + 1, name.size() - open - 2));
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
        return out;
    };
    if (name == "cue") return cue();
    if (name == "ginibre") return ginibre();
    if (name == "bergman") return bergman();
    if (auto p = name.find('('); p != std::string::npos) {
        const std::string base = name.substr(0, p);
        const auto v = params(p);
        if (base == "jacobi" && v.size() == 1) return jacobi_edge(v[0]);
        if (base == "gammaweight" && v.size() == 2) return gamma_weight(v[0], v[1]);
        if (base == "logstretch" && v.size() == 2) return log_stretch(v[0], v[1]);
    }
    throw std::domain_error("unknown measure '" + name + "'");
}

std::string RadialMeasure::name() const {
    std::ostringstream ss;
    switch (kind_) {
        case MeasureKind::Cue: return "cue";
        case MeasureKind::Ginibre: return "ginibre";
        case MeasureKind::Bergman: return "bergman";
        case MeasureKind::JacobiEdge: ss << "jacobi(" << p1_ << ")"; break;
        case MeasureKind::GammaWeight: ss << "gammaweight(" << p1_ << "," << p2_ << ")"; break;
        case MeasureKind::LogStretch: ss << "logstretch(" << p1_ << "," << p2_ << ")"; break;
        case MeasureKind::Custom: return "custom";
    }
    return ss.str();
}

double RadialMeasure::log_moment(double xi) const {
    if (xi < 0.0) throw std::domain_error("log_moment: xi must be >= 0");
    switch (kind_) {
        case MeasureKind::Cue: return 0.0;
        case MeasureKind::Ginibre: return std::lgamma(0.5 * xi + 1.0) - std::log(2.0);
        case MeasureKind::Bergman: return -std::log(xi + 2.0);
        case MeasureKind::JacobiEdge:
            return std::lgamma(xi + 1.0) - std::lgamma(xi + p1_ + 1.0) + std::lgamma(p1_);
        case MeasureKind::GammaWeight:
            return std::lgamma((xi + p1_ + 1.0) / p2_) - std::log(p2_);
        case MeasureKind::LogStretch: return logstretch_log_moment(xi, p1_, p2_);
        case MeasureKind::Custom: return custom_log_moment(xi, *custom_);
    }
    return 0.0;
}

double RadialMeasure::log_moment_dd(double xi) const {
    if (!(xi > 0.0)) throw std::domain_error("log_moment_dd: xi must be > 0");
    switch (kind_) {
        case MeasureKind::Cue: return 0.0;
        case MeasureKind::Ginibre: return 0.25 * trigamma(0.5 * xi + 1.0);
        case MeasureKind::Bergman: return 1.0 / ((xi + 2.0) * (xi + 2.0));
        case MeasureKind::JacobiEdge: return trigamma(xi + 1.0) - trigamma(xi + p1_ + 1.0);
        case MeasureKind::GammaWeight:
            return trigamma((xi + p1_ + 1.0) / p2_) / (p2_ * p2_);
        default: break;
    }
    // central differences at steps h and h/2 with Richardson combination
    const double h = std::max(1e-3 * xi, 1e-2);
    auto second = [&](double hh) {
        return (log_moment(xi + hh) - 2.0 * log_moment(xi) + log_moment(std::max(xi - hh, 0.0))) /
               (hh * hh);
    };
    const double d1 = second(h), d2 = second(0.5 * h);
    const double r = (4.0 * d2 - d1) / 3.0;
    const double scale = std::max({std::abs(d1), std::abs(d2), 1e-12});
    if (std::abs(d1 - d2) > 0.1 * scale + 1e-6)
        throw std::runtime_error("log_moment_dd: finite-difference steps disagree");
    return r;
}

double RadialMeasure::rho(long j, long k) const {
    if (j < 0 || k < 0) throw std::domain_error("rho: indices must be nonnegative");
    if (kind_ == MeasureKind::Cue) return 1.0;
    const double a = log_moment(static_cast<double>(j + k));
    const double b = log_moment(2.0 * static_cast<double>(j));
    const double c = log_moment(2.0 * static_cast<double>(k));
    return std::exp(a - 0.5 * (b + c));
}

double RadialMeasure::h_mu(double xi) const {
    if (reg_.cls != MomentClass::C2)
        throw std::domain_error("h_mu: measure is not of class C2");
    if (!(xi > 0.0)) throw std::domain_error("h_mu: xi must be > 0");
    switch (kind_) {
        case MeasureKind::Ginibre: return 0.5 / xi;
        case MeasureKind::GammaWeight: return 1.0 / (p2_ * xi);
        case MeasureKind::LogStretch: {
            // (ln m)'' ~ alpha xi^{-beta}, alpha = (cq)^{-1/(q-1)} / (q-1)
            const double q = p2_, c = p1_;
            const double alpha = std::pow(c * q, -1.0 / (q - 1.0)) / (q - 1.0);
            return alpha * std::pow(xi, -reg_.beta);
        }
        default: return log_moment_dd(xi);
    }
}

double RadialMeasure::iota(double x) const {
    if (reg_.cls != MomentClass::C2)
        throw std::domain_error("iota: measure is not of class C2 (iota unused for C1)");
    if (!(x >= 1.0)) throw std::domain_error("iota: x must be >= 1");
    switch (kind_) {
        case MeasureKind::Ginibre: return 0.25 * std::log(x);
        case MeasureKind::GammaWeight: return 0.5 * std::log(x) / p2_;
        case MeasureKind::LogStretch: {
            const double q = p2_, c = p1_;
            const double alpha = std::pow(c * q, -1.0 / (q - 1.0)) / (q - 1.0);
            const double b = reg_.beta;
            return 0.5 * alpha * (std::pow(x, 1.0 - b) - 1.0) / (1.0 - b);
        }
        default: {
            auto f = [&](double t) { return h_mu(std::exp(t)) * std::exp(t); };
            return 0.5 * panel_integrate(f, 0.0, std::log(x), 16, 64);
        }
    }
}

std::optional<double> RadialMeasure::density_at(double r) const {
    if (r < 0.0) return 0.0;
    switch (kind_) {
        case MeasureKind::Cue: return std::nullopt;
        case MeasureKind::Ginibre: return r * std::exp(-r * r);
        case MeasureKind::Bergman: return (r <= 1.0) ? r : 0.0;
        case MeasureKind::JacobiEdge:
            return (r < 1.0) ? std::pow(1.0 - r, p1_ - 1.0) : 0.0;
        case MeasureKind::GammaWeight:
            return std::pow(r, p1_) * std::exp(-std::pow(r, p2_));
        case MeasureKind::LogStretch:
            return std::exp(-p1_ * std::pow(std::log(std::exp(1.0) + r), p2_));
        case MeasureKind::Custom: {
            const CustomSpec& s = *custom_;
            if (r < s.support_lo || r > s.support_hi) return 0.0;
            auto it = std::upper_bound(s.r.begin(), s.r.end(), r);
            if (it == s.r.begin()) return s.density.front();
            if (it == s.r.end()) return s.density.back();
            const std::size_t k = static_cast<std::size_t>(it - s.r.begin());
            const double w = (r - s.r[k - 1]) / (s.r[k] - s.r[k - 1]);
            return (1.0 - w) * s.density[k - 1] + w * s.density[k];
        }
    }
    return 0.0;
}

double RadialMeasure::support_lo() const {
    if (kind_ == MeasureKind::Custom) return custom_->support_lo;
    if (kind_ == MeasureKind::Cue) return 1.0;
    return 0.0;
}

double RadialMeasure::support_hi() const {
    switch (kind_) {
        case MeasureKind::Cue: return 1.0;
        case MeasureKind::Bergman: return 1.0;
        case MeasureKind::JacobiEdge: return 1.0;
        case MeasureKind::Custom: return custom_->support_hi;
        default: return kInf;
    }
}

std::optional<double> RadialMeasure::circular_alpha() const {
    switch (kind_) {
        case MeasureKind::Cue: return 0.0;
        case MeasureKind::Bergman: return 0.0;
        case MeasureKind::JacobiEdge: return 0.0;
        case MeasureKind::Ginibre: return 0.5;
        case MeasureKind::GammaWeight: return 1.0 / p2_;
        default: return std::nullopt;
    }
}

double RadialMeasure::quantile_generic(long k, double u) const {
    // CDF of r^{2k} dmu / m_{2k} tabulated on a fine grid, then bisection.
    const double lo = std::max(support_lo(), 1e-12);
    double hi = support_hi();
    if (!std::isfinite(hi)) {
        hi = 2.0;
        const double lm2k = log_moment(2.0 * static_cast<double>(k));
        while (true) {
            // grow until the tail mass beyond hi is negligible
            const double d = density_at(hi).value_or(0.0);
            if (d * std::pow(hi, 2.0 * k) < 1e-18 * std::exp(lm2k) || hi > 1e6) break;
            hi *= 1.5;
        }
    }
    const int grid_n = 4000;
    std::vector<double> cdf(grid_n + 1, 0.0), rs(grid_n + 1);
    for (int i = 0; i <= grid_n; ++i) rs[i] = lo + (hi - lo) * i / grid_n;
    auto f = [&](double r) {
        const double d = density_at(r).value_or(0.0);
        return d <= 0.0 ? 0.0 : std::exp(2.0 * k * std::log(r)) * d;
    };
    const QuadRule& gl = gauss_legendre(8);
    for (int i = 1; i <= grid_n; ++i) {
        const double a = rs[i - 1], b = rs[i];
        double s = 0.0;
        for (std::size_t q = 0; q < gl.nodes.size(); ++q)
            s += 0.5 * (b - a) * gl.weights[q] * f(0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[q]);
        cdf[i] = cdf[i - 1] + s;
    }
    const double total = cdf[grid_n];
    if (!(total > 0.0)) throw std::runtime_error("radial_power_sample: numeric inversion non-bracketing");
    const double target = u * total;
    auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
    if (it == cdf.begin()) return rs.front();
    if (it == cdf.end()) return rs.back();
    const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
    const double w = (target - cdf[i - 1]) / (cdf[i] - cdf[i - 1]);
    return rs[i - 1] + w * (rs[i] - rs[i - 1]);
}

double RadialMeasure::radial_power_sample(long k, double u) const {
    if (k < 0) throw std::domain_error("radial_power_sample: k must be >= 0");
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("radial_power_sample: u must be in (0,1)");
    switch (kind_) {
        case MeasureKind::Cue: return 1.0;
        case MeasureKind::Ginibre:
            // R^2 ~ Gamma(k+1, 1)
            return std::sqrt(gamma_quantile(static_cast<double>(k) + 1.0, u));
        case MeasureKind::Bergman:
            return std::pow(u, 1.0 / (2.0 * k + 2.0));
        default: return quantile_generic(k, u);
    }
}

ClassifyResult classify(const RadialMeasure& mu, std::span<const double> xi_grid) {
    if (xi_grid.size() < 4) throw std::domain_error("classify: grid must have length >= 4");
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        if (!(xi_grid[i] > 0.0) || (i > 0 && xi_grid[i] <= xi_grid[i - 1]))
            throw std::domain_error("classify: grid must be strictly increasing and positive");
    }
    std::vector<double> y(xi_grid.size());
    double ymax = 0.0;
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        y[i] = mu.log_moment_dd(xi_grid[i]);
        ymax = std::max(ymax, std::abs(y[i]));
    }
    if (ymax < 1e-13) return {0.0, kInf, 0.0};  // flat: CUE-like sentinel
    // Weighted least squares on ln y = ln alpha - beta ln xi, weights xi^2 so
    // the asymptotic end dominates the fit.
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        if (!(y[i] > 0.0)) continue;
        const double w = xi_grid[i] * xi_grid[i];
        const double x = std::log(xi_grid[i]), ly = std::log(y[i]);
        sw += w;
        sx += w * x;
        sy += w * ly;
        sxx += w * x * x;
        sxy += w * x * ly;
    }
    const double det = sw * sxx - sx * sx;
    if (std::abs(det) < 1e-30) return {0.0, kInf, 0.0};
    const double beta = -(sw * sxy - sx * sy) / det;
    const double lna = (sxx * sy - sx * sxy) / det;
    ClassifyResult out;
    out.alpha_hat = std::exp(lna);
    out.beta_hat = beta;
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        const double fit = out.alpha_hat * std::pow(xi_grid[i], -beta);
        if (y[i] != 0.0) out.max_residual = std::max(out.max_residual, std::abs(fit / y[i] - 1.0));
    }
    return out;
}

}  // namespace radlab
