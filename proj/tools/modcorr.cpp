// ---------------------------------------------------------------------------
// modcorr: command-line front end for the torus-sequence laboratory.
//
//   modcorr <command> --config FILE [--threads T] [--out DIR]
//
// Commands: points, correlate, moments, weyl, bprocess, thresholds,
// spi-sweep.  Each run writes CSV output, a manifest, and a gnuplot script
// into the output directory.  Exit codes: 0 ok, 2 config error,
// 3 precondition violated, 4 cost guard tripped, 5 precision loss.
// ---------------------------------------------------------------------------
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modcorr/correlate.hpp"
#include "modcorr/counting.hpp"
#include "modcorr/oscphase.hpp"
#include "modcorr/seqgen.hpp"
#include "modcorr/testfn.hpp"
#include "modcorr/weyl.hpp"

namespace {

using namespace modcorr;
namespace fs = std::filesystem;

constexpr const char* kVersion = "1.0.0";

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// key = value file, '#' comments, blank lines ignored.
class Config {
public:
    static Config load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        Config cfg;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto strip = [](std::string s) {
                auto b = s.find_first_not_of(" \t\r");
                if (b == std::string::npos) return std::string();
                auto e = s.find_last_not_of(" \t\r");
                return s.substr(b, e - b + 1);
            };
            std::string t = strip(line);
            if (t.empty()) continue;
            auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": expected key = value");
            std::string key = strip(t.substr(0, eq));
            std::string val = strip(t.substr(eq + 1));
            if (key.empty() || val.empty())
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": empty key or value");
            cfg.kv_[key] = val;
        }
        return cfg;
    }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string str(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw ConfigError("missing config key: " + key);
        return it->second;
    }
    std::string str_or(const std::string& key, const std::string& def) const {
        auto it = kv_.find(key);
        return it == kv_.end() ? def : it->second;
    }

    std::int64_t integer(const std::string& key) const { return to_i64(key, str(key)); }
    std::int64_t integer_or(const std::string& key, std::int64_t def) const {
        return has(key) ? integer(key) : def;
    }
    double real(const std::string& key) const { return to_double(key, str(key)); }
    double real_or(const std::string& key, double def) const {
        return has(key) ? real(key) : def;
    }

    std::vector<std::int64_t> int_list(const std::string& key) const {
        std::vector<std::int64_t> out;
        for (const auto& item : split(str(key))) out.push_back(to_i64(key, item));
        if (out.empty()) throw ConfigError("config key " + key + ": empty list");
        return out;
    }
    std::vector<double> real_list(const std::string& key) const {
        std::vector<double> out;
        for (const auto& item : split(str(key))) out.push_back(to_double(key, item));
        if (out.empty()) throw ConfigError("config key " + key + ": empty list");
        return out;
    }

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    static std::vector<std::string> split(const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto b = item.find_first_not_of(" \t");
            auto e = item.find_last_not_of(" \t");
            if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
        }
        return out;
    }
    static std::int64_t to_i64(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            auto i = static_cast<std::int64_t>(d);
            if (static_cast<double>(i) != d)
                throw ConfigError("config key " + key + ": expected integer, got " + v);
            return i;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + ": expected integer, got " + v);
        }
    }
    static double to_double(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + ": expected number, got " + v);
        }
    }

    std::map<std::string, std::string> kv_;
};

SequenceSpec spec_from(const Config& cfg) {
    SequenceSpec spec;
    try {
        spec.family = family_from_name(cfg.str("family"));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config key family: ") + e.what());
    }
    spec.alpha_label = cfg.str("alpha");
    try {
        spec.alpha = resolve_alpha(spec.alpha_label);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config key alpha: ") + e.what());
    }
    spec.beta = cfg.real_or("beta", 0.5);
    validate_spec(spec);
    return spec;
}

TestFunction1D factor_from(const Config& cfg) {
    std::string kind = cfg.str_or("fn", "bump");
    if (kind == "bump") return TestFunction1D::bump(cfg.real_or("fn_radius", 1.0));
    if (kind == "triangle") return TestFunction1D::triangle(cfg.real_or("fn_radius", 1.0));
    if (kind == "box")
        return TestFunction1D::box(cfg.real_or("fn_lo", -0.5), cfg.real_or("fn_hi", 0.5));
    throw ConfigError("config key fn: expected bump, triangle, or box; got " + kind);
}

ProductTestFunction product_from(const Config& cfg, int m) {
    ProductTestFunction f;
    TestFunction1D factor = factor_from(cfg);
    for (int d = 0; d < m - 1; ++d) f.factors.push_back(factor);
    return f;
}

class OutputSet {
public:
    OutputSet(const std::string& dir, std::string command)
        : dir_(dir), command_(std::move(command)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw ConfigError("cannot create output directory: " + dir_);
    }

    std::ofstream open_csv(const std::string& name) {
        std::string path = (fs::path(dir_) / name).string();
        std::ofstream out(path, std::ios::binary);  // fixed newlines on every platform
        if (!out) throw ConfigError("cannot open output file: " + path);
        files_.push_back(name);
        return out;
    }

    void write_plot(const std::string& body) {
        std::string name = "plot_" + command_ + ".gnuplot";
        std::string path = (fs::path(dir_) / name).string();
        std::ofstream out(path, std::ios::binary);
        out << "# gnuplot script generated by modcorr " << command_ << "\n"
            << "set datafile separator ','\n"
            << body;
        files_.push_back(name);
    }

    void write_manifest(const Config& cfg, const SequenceSpec* spec, int threads,
                        double seconds) {
        std::string path = (fs::path(dir_) / "manifest.txt").string();
        std::ofstream out(path, std::ios::binary);
        out << "tool = modcorr " << kVersion << "\n";
        out << "command = " << command_ << "\n";
        out << "threads = " << threads << "\n";
        if (spec) {
            out << "alpha_label = " << spec->alpha_label << "\n";
            out << "alpha_hi = " << fmt17(spec->alpha.hi) << "\n";
            out << "alpha_lo = " << fmt17(spec->alpha.lo) << "\n";
        }
        for (const auto& [k, v] : cfg.entries()) out << "config." << k << " = " << v << "\n";
        for (const auto& f : files_) out << "output = " << f << "\n";
        out << "wall_seconds = " << fmt17(seconds) << "\n";
    }

private:
    std::string dir_;
    std::string command_;
    std::vector<std::string> files_;
};

// ---- commands -------------------------------------------------------------

void run_points(const Config& cfg, int threads, OutputSet& out) {
    (void)threads;
    SequenceSpec spec = spec_from(cfg);
    std::int64_t n = cfg.integer("n");
    PointSet ps = generate_points(spec, n);
    auto csv = out.open_csv("points.csv");
    csv << "n,x\n";
    for (std::int64_t i = 0; i < n; ++i)
        csv << (i + 1) << ',' << fmt17(ps.values[static_cast<std::size_t>(i)]) << "\n";
    out.write_plot("set xlabel 'n'\nset ylabel 'x_n'\n"
                   "plot 'points.csv' skip 1 using 1:2 with dots title 'x_n'\n");
}

void run_correlate(const Config& cfg, int threads, OutputSet& out) {
    SequenceSpec spec = spec_from(cfg);
    int m = static_cast<int>(cfg.integer_or("m", 2));
    double tau = cfg.real("tau");
    ProductTestFunction f = product_from(cfg, m);
    std::vector<std::int64_t> grid =
        cfg.has("n_grid") ? cfg.int_list("n_grid") : std::vector<std::int64_t>{cfg.integer("n")};
    auto rows = correlation_scan(spec, m, tau, f, grid, threads);
    // wall time stays out of every csv so reruns are byte-identical
    auto csv = out.open_csv("correlate.csv");
    csv << "N,m,tau,fn,value,target,ratio,tuples,status\n";
    for (const auto& row : rows) {
        if (row.error.empty()) {
            csv << row.n_points << ',' << m << ',' << fmt17(tau) << ','
                << f.factors[0].label() << ',' << fmt17(row.report.value) << ','
                << fmt17(row.report.target) << ',' << fmt17(row.report.ratio) << ','
                << row.report.tuples << ",ok\n";
        } else {
            std::string msg = row.error;
            for (auto& c : msg)
                if (c == ',' || c == '\n') c = ';';
            csv << row.n_points << ',' << m << ',' << fmt17(tau) << ','
                << f.factors[0].label() << ",nan,nan,nan,0,failed: " << msg << "\n";
        }
    }
    out.write_plot("set logscale x\nset xlabel 'N'\nset ylabel 'value / target'\n"
                   "plot 'correlate.csv' skip 1 using 1:7 with linespoints title 'ratio', "
                   "1 with lines dashtype 2 title 'random model'\n");
}

void run_moments(const Config& cfg, int threads, OutputSet& out) {
    (void)threads;
    SequenceSpec spec = spec_from(cfg);
    int m = static_cast<int>(cfg.integer_or("m", 2));
    double tau = cfg.real("tau");
    std::vector<std::int64_t> grid =
        cfg.has("n_grid") ? cfg.int_list("n_grid") : std::vector<std::int64_t>{cfg.integer("n")};
    auto rows = moment_scan(spec, m, tau, grid);
    auto csv = out.open_csv("moments.csv");
    csv << "N,m,tau,L,moment,target,ratio\n";
    for (const auto& row : rows)
        csv << row.n_points << ',' << row.m << ',' << fmt17(tau) << ','
            << fmt17(row.window_len) << ',' << fmt17(row.moment) << ',' << fmt17(row.target)
            << ',' << fmt17(row.ratio) << "\n";
    out.write_plot("set logscale x\nset xlabel 'N'\nset ylabel 'moment / L^m'\n"
                   "plot 'moments.csv' skip 1 using 1:7 with linespoints title 'ratio', "
                   "1 with lines dashtype 2 title 'Poisson'\n");
}

void run_weyl(const Config& cfg, int threads, OutputSet& out) {
    SequenceSpec spec = spec_from(cfg);
    std::int64_t n = cfg.integer("n");
    std::int64_t k_max = cfg.integer("k_max");
    auto recs = weyl_scan(spec, n, k_max, threads);
    auto csv = out.open_csv("weyl.csv");
    csv << "family,alpha,N,k,magnitude,bound,ratio\n";
    for (const auto& rec : recs) {
        double mag = std::abs(rec.value);
        double bound = spec.family == Family::Sqrt
                           ? bound_exponential(n, rec.k)
                           : static_cast<double>(n);
        csv << family_name(spec.family) << ',' << spec.alpha_label << ',' << n << ',' << rec.k
            << ',' << fmt17(mag) << ',' << fmt17(bound) << ',' << fmt17(mag / bound) << "\n";
    }
    out.write_plot("set logscale xy\nset xlabel 'k'\nset ylabel '|S(N,k)|'\n"
                   "plot 'weyl.csv' skip 1 using 4:5 with lines title 'magnitude', "
                   "'weyl.csv' skip 1 using 4:6 with lines title 'bound'\n");
}

void run_bprocess(const Config& cfg, int threads, OutputSet& out) {
    SequenceSpec spec = spec_from(cfg);
    std::vector<std::int64_t> n_grid =
        cfg.has("n_grid") ? cfg.int_list("n_grid") : std::vector<std::int64_t>{cfg.integer("n")};
    std::vector<std::int64_t> k_list = cfg.int_list("k_list");
    auto csv = out.open_csv("bprocess.csv");
    csv << "N,k,direct_re,direct_im,recon_re,recon_im,abs_diff,bound,within,budget\n";
    for (std::int64_t n : n_grid) {
        for (std::int64_t k : k_list) {
            WeylSumRecord direct = weyl_sum_direct(spec, n, k, threads);
            WeylSumRecord recon = bprocess_sum(spec, n, k);
            double diff = std::abs(direct.value - recon.value);
            double bound = 5.0 * bound_exponential(n, k);
            csv << n << ',' << k << ',' << fmt17(direct.value.real()) << ','
                << fmt17(direct.value.imag()) << ',' << fmt17(recon.value.real()) << ','
                << fmt17(recon.value.imag()) << ',' << fmt17(diff) << ',' << fmt17(bound) << ','
                << (diff <= bound ? "yes" : "no") << ',' << fmt17(recon.error_budget) << "\n";
        }
    }
    out.write_plot("set logscale xy\nset xlabel 'k'\nset ylabel 'deviation'\n"
                   "plot 'bprocess.csv' skip 1 using 2:7 with points title '|direct - recon|', "
                   "'bprocess.csv' skip 1 using 2:8 with lines title 'allowance'\n");
}

void run_thresholds(const Config& cfg, int threads, OutputSet& out) {
    SequenceSpec spec = spec_from(cfg);
    int m = static_cast<int>(cfg.integer("m"));
    std::vector<double> taus = cfg.real_list("tau_list");
    std::vector<std::int64_t> grid = cfg.int_list("n_grid");
    auto rows = threshold_scan(spec, m, taus, grid, threads);
    auto csv = out.open_csv("thresholds.csv");
    csv << "family,m,tau,N,M,combined,inside,status\n";
    for (const auto& row : rows) {
        if (row.error.empty()) {
            csv << family_name(spec.family) << ',' << row.m << ',' << fmt17(row.tau) << ','
                << row.n_terms << ',' << row.m_cap << ',' << fmt17(row.combined) << ','
                << (row.inside ? "yes" : "no") << ",ok\n";
        } else {
            std::string msg = row.error;
            for (auto& c : msg)
                if (c == ',' || c == '\n') c = ';';
            csv << family_name(spec.family) << ',' << row.m << ',' << fmt17(row.tau) << ','
                << row.n_terms << ',' << row.m_cap << ",nan," << (row.inside ? "yes" : "no")
                << ",failed: " << msg << "\n";
        }
    }
    out.write_plot("set logscale xy\nset xlabel 'N'\nset ylabel 'combined functional'\n"
                   "plot 'thresholds.csv' skip 1 using 4:6 with points title 'cells'\n");
}

void run_spi_sweep(const Config& cfg, int threads, OutputSet& out) {
    (void)threads;
    SequenceSpec spec = spec_from(cfg);
    if (spec.family != Family::Sqrt)
        throw precondition_error("spi-sweep: only the sqrt family has the sqrt(x) phase");
    std::int64_t n = cfg.integer("n");
    std::vector<std::int64_t> k_list = cfg.int_list("k_list");
    double tol = cfg.real_or("tol", 1e-9);
    std::int64_t max_r = cfg.integer_or("max_r_per_k", 8);
    std::uint64_t seed = static_cast<std::uint64_t>(cfg.integer_or("rng_seed", 1));
    std::mt19937_64 rng(seed);

    auto csv = out.open_csv("spi.csv");
    csv << "k,r,gamma,leading_re,leading_im,oracle_re,oracle_im,abs_diff,envelope,within\n";
    for (std::int64_t k : k_list) {
        PoissonRange range = truncated_poisson_range(k, spec.alpha, n);
        std::vector<std::int64_t> interior;
        for (std::int64_t r : range.r_list)
            if (static_cast<double>(r) > range.a_edge + 0.25 &&
                static_cast<double>(r) < range.b_edge - 0.25)
                interior.push_back(r);
        // Deterministic subsample: Fisher-Yates with explicit draws so the
        // selection does not depend on the standard library build.
        for (std::size_t i = interior.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(rng() % i);
            std::swap(interior[i - 1], interior[j]);
        }
        if (static_cast<std::int64_t>(interior.size()) > max_r)
            interior.resize(static_cast<std::size_t>(max_r));
        std::sort(interior.begin(), interior.end());
        for (std::int64_t r : interior) {
            OscillatoryIntegral spi = stationary_phase_leading(k, r, spec.alpha, n);
            std::complex<double> oracle = oscillatory_integral_direct(
                k, r, spec.alpha, 1.0, static_cast<double>(n), tol);
            double diff = std::abs(oracle - spi.leading);
            csv << k << ',' << r << ',' << fmt17(spi.gamma) << ','
                << fmt17(spi.leading.real()) << ',' << fmt17(spi.leading.imag()) << ','
                << fmt17(oracle.real()) << ',' << fmt17(oracle.imag()) << ',' << fmt17(diff)
                << ',' << fmt17(spi.envelope) << ',' << (diff <= spi.envelope ? "yes" : "no")
                << "\n";
        }
    }
    out.write_plot("set logscale y\nset xlabel 'stationary point'\nset ylabel 'deviation'\n"
                   "plot 'spi.csv' skip 1 using 3:8 with points title '|oracle - leading|', "
                   "'spi.csv' skip 1 using 3:9 with points title 'envelope'\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modcorr: fractional-part sequence laboratory"};
    std::string command, config_path, out_dir = ".";
    int threads = 1;
    app.add_option("command", command,
                   "one of: points, correlate, moments, weyl, bprocess, thresholds, spi-sweep")
        ->required();
    app.add_option("--config", config_path, "key = value configuration file")->required();
    app.add_option("--threads", threads, "worker thread count (default 1)");
    app.add_option("--out", out_dir, "output directory (default .)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        Config cfg = Config::load(config_path);
        OutputSet out(out_dir, command);
        SequenceSpec spec_for_manifest;
        bool have_spec = false;
        try {
            spec_for_manifest = spec_from(cfg);
            have_spec = true;
        } catch (const std::exception&) {
            // commands without a sequence spec in config still get a manifest
        }

        if (command == "points") run_points(cfg, threads, out);
        else if (command == "correlate") run_correlate(cfg, threads, out);
        else if (command == "moments") run_moments(cfg, threads, out);
        else if (command == "weyl") run_weyl(cfg, threads, out);
        else if (command == "bprocess") run_bprocess(cfg, threads, out);
        else if (command == "thresholds") run_thresholds(cfg, threads, out);
        else if (command == "spi-sweep") run_spi_sweep(cfg, threads, out);
        else throw ConfigError("unknown command: " + command);

        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.write_manifest(cfg, have_spec ? &spec_for_manifest : nullptr, threads, seconds);
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const precondition_error& e) {
        std::fprintf(stderr, "precondition violated: %s\n", e.what());
        return 3;
    } catch (const cost_guard_error& e) {
        std::fprintf(stderr, "cost guard: %s\n", e.what());
        return 4;
    } catch (const precision_loss_error& e) {
        std::fprintf(stderr, "precision loss: %s\n", e.what());
        return 5;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
