#include "radlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "radlab/acceptance.hpp"
#include "radlab/asymptotics.hpp"
#include "radlab/cumulants.hpp"
#include "radlab/determinant.hpp"
#include "radlab/ensemble.hpp"
#include "radlab/rng.hpp"

namespace radlab {

namespace {

using nlohmann::json;

// 17 significant digits, locale-free
std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<double> parse_range(const std::string& spec) {
    // "start:stop:step" or comma list
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        std::istringstream ss(spec);
        std::string a, b, c;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
            throw CLI::ValidationError("range", "expected start:stop:step in '" + spec + "'");
        const double start = std::stod(a), stop = std::stod(b), step = std::stod(c);
        if (step <= 0.0) throw CLI::ValidationError("range", "step must be positive");
        for (double v = start; v <= stop + 1e-12 * std::abs(step); v += step) out.push_back(v);
        return out;
    }
    std::istringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw CLI::ValidationError("range", "empty list");
    return out;
}

std::vector<long> parse_longs(const std::string& spec) {
    std::vector<long> out;
    for (double v : parse_range(spec)) out.push_back(static_cast<long>(std::llround(v)));
    return out;
}

RadialMeasure parse_measure(const std::string& name) {
    if (name.rfind("custom:", 0) == 0) {
        const std::string rest = name.substr(7);
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::domain_error("custom measure spec must be custom:<csv>,<config json>");
        return RadialMeasure::from_files(rest.substr(0, comma), rest.substr(comma + 1));
    }
    return RadialMeasure::by_name(name);
}

struct Output {
    std::string path;  // empty: stdout
    std::ostringstream buf;

    // tabular emitters write CSV into buf; a json rendering reuses the same
    // full-precision number strings
    void to_json_table() {
        std::istringstream in(buf.str());
        std::string line;
        if (!std::getline(in, line)) return;
        std::ostringstream js;
        js << "{\n  \"columns\": [";
        std::istringstream hs(line);
        std::string col;
        bool first = true;
        while (std::getline(hs, col, ',')) {
            js << (first ? "" : ", ") << '"' << col << '"';
            first = false;
        }
        js << "],\n  \"rows\": [";
        bool first_row = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            js << (first_row ? "\n    [" : ",\n    [") << line << "]";
            first_row = false;
        }
        js << "\n  ]\n}\n";
        buf.str(js.str());
    }

    void flush_with_manifest(const std::string& subcommand, const json& params,
                             std::uint64_t seed, double wall_s) {
        if (path.empty()) {
            std::fputs(buf.str().c_str(), stdout);
            return;
        }
        {
            std::ofstream out(path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + path);
            out << buf.str();
        }
        json manifest;
        manifest["subcommand"] = subcommand;
        manifest["parameters"] = params;
        manifest["seed"] = seed;
        manifest["artifact_version"] = RADLAB_VERSION;
        manifest["wall_clock_seconds"] = wall_s;
        char hx[32];
        std::snprintf(hx, sizeof hx, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(buf.str())));
        manifest["outputs"] = json::array({{{"path", path}, {"fnv1a64", hx}}});
        std::ofstream mf(path + ".manifest.json", std::ios::binary);
        mf << manifest.dump(2) << "\n";
    }
};

// ordered fan-out over grid cells
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, int threads, F&& f) {
    std::vector<T> out(count);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    const int nw = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    for (int w = 0; w < nw; ++w)
        workers.push_back(std::async(std::launch::async, [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                out[i] = f(i);
            }
        }));
    for (auto& w : workers) w.get();
    return out;
}

int do_moments(const RadialMeasure& mu, const std::string& xi_spec, Output& out, json& params) {
    const auto grid = parse_range(xi_spec);
    params["xi"] = xi_spec;
    out.buf << "xi,log_moment,log_moment_dd\n";
    for (double xi : grid)
        out.buf << num(xi) << "," << num(mu.log_moment(xi)) << ","
                << num(xi > 0.0 ? mu.log_moment_dd(xi) : 0.0) << "\n";
    return 0;
}

int do_rho(const RadialMeasure& mu, const std::string& j_spec, const std::string& k_spec,
           Output& out, json& params) {
    const auto js = parse_longs(j_spec), ks = parse_longs(k_spec);
    params["j"] = j_spec;
    params["k"] = k_spec;
    out.buf << "j,k,rho\n";
    for (long j : js)
        for (long k : ks) out.buf << j << "," << k << "," << num(mu.rho(j, k)) << "\n";
    return 0;
}

int do_genfun(const RadialMeasure& mu, const Symbol& f, const std::string& lam_spec,
              const std::string& n_spec, int threads, Output& out, json& params) {
    const auto lams = parse_range(lam_spec);
    const auto ns = parse_longs(n_spec);
    params["lambda"] = lam_spec;
    params["n"] = n_spec;
    struct Cell {
        long n;
        double lam;
        LogDet ld;
    };
    std::vector<std::pair<long, double>> cells;
    for (long n : ns)
        for (double lam : lams) cells.emplace_back(n, lam);
    const auto rows = parallel_map<Cell>(cells.size(), threads, [&](std::size_t i) {
        const auto [n, lam] = cells[i];
        return Cell{n, lam, angular_mgf(mu, f, lam, static_cast<int>(n))};
    });
    out.buf << "n,lambda,log_abs,phase\n";
    for (const auto& r : rows)
        out.buf << r.n << "," << num(r.lam) << "," << num(r.ld.log_abs) << "," << num(r.ld.phase)
                << "\n";
    return 0;
}

int do_cumulants(const RadialMeasure& mu, const Symbol& f, int m_max, long n_trunc, Output& out,
                 json& params) {
    params["m_max"] = m_max;
    params["n_trunc"] = n_trunc;
    const CumulantReport rep = cumulant_recursion(mu, f, m_max, n_trunc);
    json j;
    j["measure"] = rep.measure;
    j["m_max"] = rep.m_max;
    j["n_trunc"] = rep.n_trunc;
    for (std::size_t i = 0; i < rep.traces.size(); ++i) {
        json row;
        row["m"] = static_cast<int>(i) + 2;
        row["trace"] = rep.traces[i];
        row["cumulant"] = rep.cumulants[i];
        row["tail_certificate"] = rep.tail_certificates[i];
        j["orders"].push_back(row);
    }
    out.buf << j.dump(2) << "\n";
    for (double cert : rep.tail_certificates)
        if (cert > 1e-4) return 3;
    return 0;
}

int do_szego(const RadialMeasure& mu, const Symbol& a, const std::string& a_spec,
             const std::string& n_spec, const std::string& mode_str, Output& out, json& params) {
    const auto ns = parse_longs(n_spec);
    const SweepMode mode = mode_str == "c2" ? SweepMode::C2 : SweepMode::C1;
    params["n"] = n_spec;
    params["mode"] = mode_str;
    const SzegoReport rep = szego_sweep(mu, a, ns, mode);
    json j;
    j["measure"] = mu.name();
    j["symbol"] = a_spec;
    j["mode"] = mode_str;
    for (std::size_t i = 0; i < rep.n_grid.size(); ++i) {
        json row;
        row["n"] = rep.n_grid[i];
        row["log_ratio_re"] = rep.log_ratios[i].real();
        row["log_ratio_im"] = rep.log_ratios[i].imag();
        row["iota"] = rep.iota[i];
        row["trace_re"] = rep.traces[i].real();
        row["trace_im"] = rep.traces[i].imag();
        j["rows"].push_back(row);
    }
    j["extrapolated_limit"] = {rep.extrapolated_limit.real(), rep.extrapolated_limit.imag()};
    out.buf << j.dump(2) << "\n";
    return 0;
}

int do_trace(const RadialMeasure& mu, const Symbol& a, const std::string& n_spec, Output& out,
             json& params) {
    const auto ns = parse_longs(n_spec);
    params["n"] = n_spec;
    const Symbol ai = invert_symbol(a).symbol;
    out.buf << "n,trace_re,trace_im,iota\n";
    for (long n : ns) {
        const cplx t = trace_section(mu, ai, a, n);
        const double io =
            mu.moment_class() == MomentClass::C2 ? mu.iota(2.0 * static_cast<double>(n)) : 0.0;
        out.buf << n << "," << num(t.real()) << "," << num(t.imag()) << "," << num(io) << "\n";
    }
    return 0;
}

int do_clt(const RadialMeasure& mu, const Symbol& f, double lambda, const std::string& n_spec,
           int threads, Output& out, json& params) {
    if (mu.moment_class() != MomentClass::C2)
        throw std::domain_error("clt: scaled statistics need a class-C2 measure");
    const auto ns = parse_longs(n_spec);
    params["lambda"] = lambda;
    params["n"] = n_spec;
    const cplx f0 = f.coeff(0);
    const auto rows = parallel_map<std::pair<LogDet, double>>(ns.size(), threads, [&](std::size_t i) {
        const long n = ns[i];
        const double io = mu.iota(2.0 * static_cast<double>(n));
        Symbol g = f.add_constant(-f0).scale(cplx(1.0 / std::sqrt(io), 0.0));
        return std::make_pair(angular_mgf(mu, g, lambda, static_cast<int>(n)), io);
    });
    out.buf << "n,lambda,re_log_mgf,im_log_mgf,iota\n";
    for (std::size_t i = 0; i < ns.size(); ++i)
        out.buf << ns[i] << "," << num(lambda) << "," << num(rows[i].first.log_abs) << ","
                << num(rows[i].first.phase) << "," << num(rows[i].second) << "\n";
    return 0;
}

int do_meanmeasure(const RadialMeasure& mu, long n, const std::string& r_spec, Output& out,
                   json& params) {
    params["n"] = n;
    params["r"] = r_spec;
    out.buf << "r,density\n";
    for (double r : parse_range(r_spec))
        out.buf << num(r) << "," << num(mean_density(mu, n, r)) << "\n";
    return 0;
}

int do_sample(const RadialMeasure& mu, int n, long replicas, std::uint64_t seed,
              const std::string& what, int threads, Output& out, json& params) {
    params["n"] = n;
    params["replicas"] = replicas;
    params["kind"] = what;
    out.buf << "replica,index,r,theta\n";
    if (what == "moduli") {
        for (long rep = 0; rep < replicas; ++rep) {
            const auto mod = sample_moduli(mu, n, derive_seed(seed, static_cast<std::uint64_t>(rep)));
            for (int i = 0; i < n; ++i)
                out.buf << rep << "," << i << "," << num(mod[static_cast<std::size_t>(i)]) << ",0\n";
        }
        return 0;
    }
    const auto samples = parallel_map<PointSample>(
        static_cast<std::size_t>(replicas), threads, [&](std::size_t rep) {
            return sample_dpp(mu, n, derive_seed(seed, static_cast<std::uint64_t>(rep)));
        });
    for (long rep = 0; rep < replicas; ++rep) {
        const auto& s = samples[static_cast<std::size_t>(rep)];
        for (int i = 0; i < n; ++i)
            out.buf << rep << "," << i << "," << num(s.points[static_cast<std::size_t>(i)].first)
                    << "," << num(s.points[static_cast<std::size_t>(i)].second) << "\n";
    }
    return 0;
}

int do_verify(const std::string& suite, Output& out, json& params) {
    params["suite"] = suite;
    int failed = 0;
    for (int id : suite_ids(suite)) {
        const CriterionResult r = run_criterion(id);
        out.buf << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " (" << r.detail
                << ")\n";
        if (!r.pass) ++failed;
    }
    return failed == 0 ? 0 : 3;
}

}  // namespace

namespace {

// --config <json>: flat object of flag values; explicit flags win
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string cfg_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            cfg_path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
    }
    if (cfg_path.empty()) return args;
    std::ifstream in(cfg_path);
    if (!in) throw std::domain_error("cannot open config " + cfg_path);
    json j;
    in >> j;
    if (!j.is_object()) throw std::domain_error("config must be a JSON object of flag values");
    for (const auto& [key, val] : j.items()) {
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        args.push_back(flag);
        if (val.is_string())
            args.push_back(val.get<std::string>());
        else
            args.push_back(val.dump());
    }
    return args;
}

}  // namespace

int cli_run(const std::vector<std::string>& args_in) {
    std::vector<std::string> args;
    try {
        args = expand_config(args_in);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    }
    CLI::App app{"radlab: exact generating functions of angular statistics for radial "
                 "determinantal ensembles via perturbed Toeplitz determinants"};
    app.require_subcommand(1);

    std::string measure = "cue", fsym, asym, out_path, format = "csv";
    std::string lam_spec = "0:1:0.25", n_spec = "16,32,64", xi_spec = "1,2,4,8";
    std::string j_spec = "0:8:1", k_spec = "0:8:1", r_spec = "0:1:0.05", mode = "c1";
    std::string suite = "all", sample_kind = "dpp";
    std::uint64_t seed = 1;
    int threads = 1, m_max = 4;
    long n_trunc = 256, n_single = 16, replicas = 1;
    double lambda_single = 1.0;

    auto add_common = [&](CLI::App* sub, bool needs_measure = true) {
        if (needs_measure) sub->add_option("--measure", measure, "measure name or custom:<csv>,<json>");
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", format, "csv or json where applicable");
        sub->add_option("--threads", threads, "worker threads for grid fan-out");
        sub->add_option("--seed", seed, "RNG seed");
    };

    auto* c_moments = app.add_subcommand("moments", "log-moment table");
    add_common(c_moments);
    c_moments->add_option("--xi", xi_spec, "xi grid (list or start:stop:step)");

    auto* c_rho = app.add_subcommand("rho", "moment-ratio entries rho_{j,k}");
    add_common(c_rho);
    c_rho->add_option("--j", j_spec);
    c_rho->add_option("--k", k_spec);

    auto* c_genfun = app.add_subcommand("genfun", "angular generating function log det grid");
    add_common(c_genfun);
    c_genfun->add_option("--f", fsym, "real symbol (trig:.../file:...)")->required();
    c_genfun->add_option("--lambda", lam_spec);
    c_genfun->add_option("--n", n_spec);

    auto* c_cum = app.add_subcommand("cumulants", "limit cumulants via the trace recursion");
    add_common(c_cum);
    c_cum->add_option("--f", fsym)->required();
    c_cum->add_option("--m-max", m_max);
    c_cum->add_option("--n-trunc", n_trunc);

    auto* c_szego = app.add_subcommand("szego", "Szego-Widom-type ratio sweep");
    add_common(c_szego);
    c_szego->add_option("--a", asym, "symbol (trig:.../exp:trig:.../file:...)")->required();
    c_szego->add_option("--n", n_spec);
    c_szego->add_option("--mode", mode, "c1 or c2");

    auto* c_trace = app.add_subcommand("trace", "trace(P_n T(a^{-1}) K_mu(a) P_n) sweep");
    add_common(c_trace);
    c_trace->add_option("--a", asym)->required();
    c_trace->add_option("--n", n_spec);

    auto* c_clt = app.add_subcommand("clt", "scaled characteristic function trend");
    add_common(c_clt);
    c_clt->add_option("--f", fsym)->required();
    c_clt->add_option("--lambda", lambda_single);
    c_clt->add_option("--n", n_spec);

    auto* c_mean = app.add_subcommand("meanmeasure", "radial mean-measure density");
    add_common(c_mean);
    c_mean->add_option("--n", n_single);
    c_mean->add_option("--r", r_spec);

    auto* c_sample = app.add_subcommand("sample", "draw ensembles (dpp) or moduli");
    add_common(c_sample);
    c_sample->add_option("--n", n_single);
    c_sample->add_option("--replicas", replicas);
    c_sample->add_option("--kind", sample_kind, "dpp or moduli");

    auto* c_verify = app.add_subcommand("verify", "run acceptance criteria");
    add_common(c_verify, false);
    c_verify->add_option("--suite", suite, "appendix, quick, or all");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            std::puts(app.help().c_str());
            return 0;
        }
        std::fprintf(stderr, "%s\n%s", e.what(), app.help().c_str());
        return 64;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Output out;
    out.path = out_path;
    json params;
    params["measure"] = measure;
    params["format"] = format;
    params["threads"] = threads;
    if (!fsym.empty()) params["f"] = fsym;
    if (!asym.empty()) params["a"] = asym;

    int rc = 0;
    std::string subname;
    try {
        if (c_moments->parsed()) {
            subname = "moments";
            rc = do_moments(parse_measure(measure), xi_spec, out, params);
        } else if (c_rho->parsed()) {
            subname = "rho";
            rc = do_rho(parse_measure(measure), j_spec, k_spec, out, params);
        } else if (c_genfun->parsed()) {
            subname = "genfun";
            rc = do_genfun(parse_measure(measure), parse_symbol(fsym), lam_spec, n_spec, threads,
                           out, params);
        } else if (c_cum->parsed()) {
            subname = "cumulants";
            rc = do_cumulants(parse_measure(measure), parse_symbol(fsym), m_max, n_trunc, out,
                              params);
        } else if (c_szego->parsed()) {
            subname = "szego";
            rc = do_szego(parse_measure(measure), parse_symbol(asym), asym, n_spec, mode, out,
                          params);
        } else if (c_trace->parsed()) {
            subname = "trace";
            rc = do_trace(parse_measure(measure), parse_symbol(asym), n_spec, out, params);
        } else if (c_clt->parsed()) {
            subname = "clt";
            rc = do_clt(parse_measure(measure), parse_symbol(fsym), lambda_single, n_spec, threads,
                        out, params);
        } else if (c_mean->parsed()) {
            subname = "meanmeasure";
            rc = do_meanmeasure(parse_measure(measure), n_single, r_spec, out, params);
        } else if (c_sample->parsed()) {
            subname = "sample";
            rc = do_sample(parse_measure(measure), static_cast<int>(n_single), replicas, seed,
                           sample_kind, threads, out, params);
        } else if (c_verify->parsed()) {
            subname = "verify";
            rc = do_verify(suite, out, params);
        }
    } catch (const NonInvertibleError& e) {
        std::fprintf(stderr, "NonInvertible: %s\n", e.what());
        return 2;
    } catch (const NonzeroWindingError& e) {
        std::fprintf(stderr, "NonzeroWinding: %s\n", e.what());
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical non-certification: %s\n", e.what());
        return 3;
    }

    const bool tabular = c_moments->parsed() || c_rho->parsed() || c_genfun->parsed() ||
                         c_trace->parsed() || c_clt->parsed() || c_mean->parsed() ||
                         c_sample->parsed();
    if (tabular && format == "json") out.to_json_table();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.flush_with_manifest(subname, params, seed, wall);
    return rc;
}

int cli_run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_run(args);
}

}  // namespace radlab
