#include "radlab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace radlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

void fft_inplace(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

// forward coefficients c_k = (1/M) sum_j a_j e^{-2 pi i jk/M}, k = 0..M-1
std::vector<cplx> grid_to_coeffs(std::vector<cplx> a) {
    const std::size_t m = a.size();
    if (is_pow2(m)) {
        fft_inplace(a, false);
        for (auto& x : a) x /= static_cast<double>(m);
        return a;
    }
    std::vector<cplx> out(m, cplx(0.0));
    for (std::size_t k = 0; k < m; ++k) {
        cplx s(0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const double ang = -kTwoPi * static_cast<double>(j * k % m) / static_cast<double>(m);
            s += a[j] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = s / static_cast<double>(m);
    }
    return out;
}

int default_grid(int window, int hint) {
    int need = std::max(4 * window + 8, std::max(hint, 64));
    int m = 1;
    while (m < need) m <<= 1;
    return m;
}

GridTransform window_from_full(const std::vector<cplx>& ck, int m, int n_out) {
    std::vector<cplx> c(2 * n_out + 1);
    for (int k = -n_out; k <= n_out; ++k) c[static_cast<std::size_t>(k + n_out)] = ck[static_cast<std::size_t>(((k % m) + m) % m)];
    double tail = 0.0;
    for (int k = n_out + 1; k <= m - n_out - 1; ++k) tail += std::norm(ck[static_cast<std::size_t>(k)]);
    GridTransform out{Symbol(n_out, std::move(c), m), std::sqrt(tail), false};
    return out;
}

}  // namespace

Symbol::Symbol(int window, std::vector<cplx> coeffs) : window_(window), coeffs_(std::move(coeffs)) {
    if (window_ < 0 || coeffs_.size() != static_cast<std::size_t>(2 * window_ + 1))
        throw std::domain_error("Symbol: coefficient array must have length 2*window + 1");
    grid_size_ = default_grid(window_, 0);
    retag();
}

Symbol::Symbol(int window, std::vector<cplx> coeffs, int grid_size)
    : Symbol(window, std::move(coeffs)) {
    if (grid_size < 4 * window_ + 4) throw std::domain_error("Symbol: grid_size must be >= 4*window + 4");
    grid_size_ = grid_size;
}

void Symbol::retag() {
    double scale = max_abs_coeff();
    if (scale == 0.0) {
        real_valued_ = true;
        return;
    }
    for (int k = 0; k <= window_; ++k) {
        if (std::abs(coeff(-k) - std::conj(coeff(k))) > 1e-12 * scale) {
            real_valued_ = false;
            return;
        }
    }
    real_valued_ = true;
}

Symbol Symbol::constant(cplx c) { return Symbol(0, {c}); }

Symbol Symbol::from_trig(std::span<const std::pair<int, cplx>> terms) {
    int n = 0;
    for (const auto& [k, c] : terms) n = std::max(n, std::abs(k));
    std::vector<cplx> coeffs(static_cast<std::size_t>(2 * n + 1), cplx(0.0));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j)
            if (terms[i].first == terms[j].first)
                throw std::domain_error("from_trig: duplicate index");
        coeffs[static_cast<std::size_t>(terms[i].first + n)] = terms[i].second;
    }
    return Symbol(n, std::move(coeffs));
}

Symbol Symbol::two_cos() {
    return from_trig(std::vector<std::pair<int, cplx>>{{1, 1.0}, {-1, 1.0}});
}

cplx Symbol::eval(double theta) const {
    cplx s(0.0);
    for (int k = -window_; k <= window_; ++k)
        s += coeff(k) * std::polar(1.0, k * theta);
    return s;
}

std::vector<cplx> Symbol::eval_grid(int m) const {
    // inverse transform of the zero-padded coefficients
    if (m < 2 * window_ + 1 || !is_pow2(static_cast<std::size_t>(m))) {
        std::vector<cplx> v(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) v[static_cast<std::size_t>(j)] = eval(kTwoPi * j / m);
        return v;
    }
    std::vector<cplx> a(static_cast<std::size_t>(m), cplx(0.0));
    for (int k = -window_; k <= window_; ++k) a[static_cast<std::size_t>(((k % m) + m) % m)] = coeff(k);
    fft_inplace(a, true);
    for (auto& x : a) x *= static_cast<double>(m);
    return a;
}

Symbol Symbol::multiply(const Symbol& other) const {
    const int n = window_ + other.window_;
    std::vector<cplx> out(static_cast<std::size_t>(2 * n + 1), cplx(0.0));
    for (int a = -window_; a <= window_; ++a) {
        const cplx ca = coeff(a);
        if (ca == cplx(0.0)) continue;
        for (int b = -other.window_; b <= other.window_; ++b)
            out[static_cast<std::size_t>(a + b + n)] += ca * other.coeff(b);
    }
    return Symbol(n, std::move(out));
}

Symbol Symbol::pow_int(int m) const {
    if (m < 0) throw std::domain_error("pow_int: negative power");
    Symbol r = constant(1.0);
    for (int i = 0; i < m; ++i) r = r.multiply(*this);
    return r;
}

Symbol Symbol::add(const Symbol& other) const {
    const int n = std::max(window_, other.window_);
    std::vector<cplx> out(static_cast<std::size_t>(2 * n + 1), cplx(0.0));
    for (int k = -n; k <= n; ++k) out[static_cast<std::size_t>(k + n)] = coeff(k) + other.coeff(k);
    return Symbol(n, std::move(out));
}

Symbol Symbol::scale(cplx f) const {
    std::vector<cplx> out(coeffs_.begin(), coeffs_.end());
    for (auto& c : out) c *= f;
    return Symbol(window_, std::move(out));
}

Symbol Symbol::add_constant(cplx c) const {
    std::vector<cplx> out(coeffs_.begin(), coeffs_.end());
    out[static_cast<std::size_t>(window_)] += c;
    return Symbol(window_, std::move(out));
}

Symbol Symbol::truncate(int new_window) const {
    if (new_window >= window_) return *this;
    std::vector<cplx> out(static_cast<std::size_t>(2 * new_window + 1));
    for (int k = -new_window; k <= new_window; ++k) out[static_cast<std::size_t>(k + new_window)] = coeff(k);
    return Symbol(new_window, std::move(out));
}

Symbol Symbol::flipped() const {
    std::vector<cplx> out(coeffs_.rbegin(), coeffs_.rend());
    return Symbol(window_, std::move(out));
}

double Symbol::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

GridTransform from_samples(std::span<const cplx> values, int window) {
    const int m = static_cast<int>(values.size());
    if (m < 4 * window + 4)
        throw std::domain_error("from_samples: need grid size >= 4*window + 4");
    std::vector<cplx> a(values.begin(), values.end());
    auto ck = grid_to_coeffs(std::move(a));
    GridTransform out = window_from_full(ck, m, window);
    const double mx = out.symbol.max_abs_coeff();
    const double edge = std::max(std::abs(out.symbol.coeff(window)), std::abs(out.symbol.coeff(-window)));
    out.aliasing = window > 0 && edge > 1e-8 * mx;
    return out;
}

double min_modulus_on_grid(const Symbol& s, int grid) {
    const int m = default_grid(s.window(), grid);
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& v : s.eval_grid(m)) mn = std::min(mn, std::abs(v));
    return mn;
}

int winding_number(const Symbol& s, int grid) {
    const int m = default_grid(s.window(), grid);
    const auto v = s.eval_grid(m);
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
        const cplx r = v[static_cast<std::size_t>((j + 1) % m)] / v[static_cast<std::size_t>(j)];
        acc += std::arg(r);
    }
    return static_cast<int>(std::lround(acc / kTwoPi));
}

namespace {

GridTransform pointwise_transform(const Symbol& s, int n_out, int grid, int op) {
    // op: 0 exp, 1 log, 2 invert
    if (n_out <= 0) n_out = 4 * s.window() + 8;
    const int m = default_grid(std::max(n_out, s.window()), grid);
    auto v = s.eval_grid(m);
    if (op != 0) {
        double mn = std::numeric_limits<double>::infinity();
        for (const auto& z : v) mn = std::min(mn, std::abs(z));
        if (mn <= 1e-8)
            throw NonInvertibleError("symbol modulus below 1e-8 on the grid");
        double acc = 0.0;
        for (int j = 0; j < m; ++j)
            acc += std::arg(v[static_cast<std::size_t>((j + 1) % m)] / v[static_cast<std::size_t>(j)]);
        if (std::lround(acc / kTwoPi) != 0)
            throw NonzeroWindingError("symbol has nonzero winding number about 0");
    }
    if (op == 0) {
        // exp(0) == 1 exactly; keep that identity exact through the transform
        if (s.max_abs_coeff() == 0.0) return {Symbol::constant(1.0), 0.0, false};
        for (auto& z : v) z = std::exp(z);
    } else if (op == 2) {
        for (auto& z : v) z = 1.0 / z;
    } else {
        // branch-continuous log along the grid, branch fixed by pulling the
        // mean phase into (-pi, pi]
        std::vector<cplx> lg(v.size());
        double phase = std::arg(v[0]);
        lg[0] = cplx(std::log(std::abs(v[0])), phase);
        for (int j = 1; j < m; ++j) {
            phase += std::arg(v[static_cast<std::size_t>(j)] / v[static_cast<std::size_t>(j - 1)]);
            lg[static_cast<std::size_t>(j)] = cplx(std::log(std::abs(v[static_cast<std::size_t>(j)])), phase);
        }
        double mean_phase = 0.0;
        for (const auto& z : lg) mean_phase += z.imag();
        mean_phase /= static_cast<double>(m);
        const double shift = kTwoPi * std::floor((mean_phase + kTwoPi / 2.0) / kTwoPi);
        if (shift != 0.0)
            for (auto& z : lg) z.imag(z.imag() - shift);
        v = std::move(lg);
    }
    auto ck = grid_to_coeffs(std::move(v));
    return window_from_full(ck, m, n_out);
}

}  // namespace

GridTransform exp_symbol(const Symbol& s, int n_out, int grid) { return pointwise_transform(s, n_out, grid, 0); }
GridTransform log_symbol(const Symbol& s, int n_out, int grid) { return pointwise_transform(s, n_out, grid, 1); }
GridTransform invert_symbol(const Symbol& s, int n_out, int grid) { return pointwise_transform(s, n_out, grid, 2); }

FlpWeight FlpWeight::power(double sigma) {
    FlpWeight w;
    w.kind_ = 0;
    w.sigma_ = sigma;
    return w;
}

FlpWeight FlpWeight::table(std::vector<double> nu) {
    FlpWeight w;
    w.kind_ = 1;
    w.table_ = std::move(nu);
    for (double x : w.table_)
        if (!(x > 0.0)) throw std::domain_error("FlpWeight: weights must be positive");
    return w;
}

FlpWeight FlpWeight::iota_weight(const RadialMeasure& mu, double sigma) {
    if (mu.moment_class() != MomentClass::C2)
        throw std::domain_error("iota_weight: measure must be of class C2");
    FlpWeight w;
    w.kind_ = 2;
    w.sigma_ = sigma;
    w.mu_ = std::make_shared<RadialMeasure>(mu);
    return w;
}

double FlpWeight::at(int m) const {
    const int a = std::abs(m);
    switch (kind_) {
        case 0: return std::pow(1.0 + a, sigma_);
        case 1:
            if (static_cast<std::size_t>(a) >= table_.size())
                throw std::domain_error("FlpWeight: table too short for requested index");
            return table_[static_cast<std::size_t>(a)];
        default: {
            if (a == 0) return 1.0;
            // nu_m = sqrt(1 + m^2 iota(2 |m|^{2 sigma}))
            const double x = std::max(1.0, 2.0 * std::pow(a, 2.0 * sigma_));
            return std::sqrt(1.0 + static_cast<double>(a) * a * mu_->iota(x));
        }
    }
}

double flp_norm(const Symbol& s, int p, const FlpWeight& w) {
    if (p != 1 && p != 2) throw std::domain_error("flp_norm: p must be 1 or 2");
    double acc = 0.0;
    for (int k = -s.window(); k <= s.window(); ++k) {
        const double a = std::abs(s.coeff(k));
        if (a == 0.0) continue;
        acc += (p == 1 ? a : a * a) * w.at(k);
    }
    return p == 1 ? acc : std::sqrt(acc);
}

Symbol parse_symbol(const std::string& spec) {
    if (spec.rfind("exp:", 0) == 0) {
        Symbol inner = parse_symbol(spec.substr(4));
        return exp_symbol(inner).symbol;
    }
    if (spec.rfind("trig:", 0) == 0) {
        std::vector<std::pair<int, cplx>> terms;
        std::istringstream ss(spec.substr(5));
        std::string item;
        while (std::getline(ss, item, ';')) {
            if (item.empty()) continue;
            std::istringstream ts(item);
            std::string f1, f2, f3;
            if (!std::getline(ts, f1, ',') || !std::getline(ts, f2, ',') || !std::getline(ts, f3, ','))
                throw std::domain_error("symbol spec: expected k,re,im triplet in '" + item + "'");
            terms.emplace_back(std::stoi(f1), cplx(std::stod(f2), std::stod(f3)));
        }
        if (terms.empty()) throw std::domain_error("symbol spec: empty trig list");
        return Symbol::from_trig(terms);
    }
    if (spec.rfind("file:", 0) == 0) {
        std::ifstream in(spec.substr(5));
        if (!in) throw std::runtime_error("cannot open symbol file " + spec.substr(5));
        std::vector<std::pair<int, cplx>> terms;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == 'k') continue;  // optional header k,re,im
            std::istringstream ts(line);
            std::string f1, f2, f3;
            if (!std::getline(ts, f1, ',') || !std::getline(ts, f2, ',') || !std::getline(ts, f3, ','))
                throw std::runtime_error("symbol file: bad row '" + line + "'");
            terms.emplace_back(std::stoi(f1), cplx(std::stod(f2), std::stod(f3)));
        }
        return Symbol::from_trig(terms);
    }
    throw std::domain_error("symbol spec must start with trig:, file:, or exp:");
}

}  // namespace radlab
