// Command-line harness: verify / solve / monitor / constants / replay.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gevreyns/blowup.hpp"
#include "gevreyns/inequalities.hpp"
#include "gevreyns/mild.hpp"

using nlohmann::json;
using namespace gevreyns;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// FNV-1a over the canonical (key-sorted) config dump; wall time is excluded
// because the hash covers the config object only.
std::string config_hash(const json& config) {
    const std::string s = config.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
    return buf;
}

std::string default_output_dir() {
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%S", std::gmtime(&t));
    return std::string("runs/") + buf;
}

int env_threads() {
    const char* v = std::getenv("GEVREY_NS_THREADS");
    if (!v) return 1;
    const int n = std::atoi(v);
    return n > 0 ? n : 1;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << text;
}

void write_manifest(const std::filesystem::path& dir, const json& config, double wall_s) {
    json m;
    m["config"] = config;
    m["manifest_hash"] = config_hash(config);
    m["version"] = kVersion;
    m["threads"] = env_threads();
    m["wall_time_s"] = wall_s;
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

GevreyParams params_from(const json& c) {
    GevreyParams p;
    p.a = c.value("a", 1.0);
    p.sigma = c.value("sigma", 2.0);
    p.s = c.value("s", 1.0);
    p.nu = c.value("nu", 1.0);
    p.validate();
    return p;
}

VectorField make_initial(const FrequencyGrid& g, const std::string& spec) {
    if (spec == "taylor-green") return taylor_green(g);
    if (spec == "single-mode") return single_mode(g);
    if (spec.rfind("random:", 0) == 0) {
        const uint64_t seed = std::strtoull(spec.c_str() + 7, nullptr, 10);
        return random_divergence_free_field(g, -2.0, 1.0, double(g.N) / 3.0, seed);
    }
    if (spec.rfind("file:", 0) == 0) {
        std::ifstream is(spec.substr(5), std::ios::binary);
        if (!is) throw std::invalid_argument("initial data file not found: " + spec.substr(5));
        return read_field_binary(is, g);
    }
    throw std::invalid_argument("unknown initial data spec: " + spec);
}

json verdict_to_json(const InequalityVerdict& v) {
    return json{{"name", v.name}, {"lhs", v.lhs},   {"rhs", v.rhs},
                {"ratio", v.ratio}, {"pass", v.pass}, {"witness", v.witness}};
}

// ---- verify ---------------------------------------------------------------

int run_verify(const json& c, const std::filesystem::path& dir) {
    SweepConfig cfg;
    cfg.N = c.value("N", 8);
    cfg.trials = c.value("trials", 1000);
    cfg.seed = c.value("seed", uint64_t(7));
    const std::string suite = c.value("suite", "all");

    auto all = run_inequality_suites(cfg);
    std::vector<SweepSummary> picked;
    for (auto& s : all)
        if (suite == "all" || s.name == suite) picked.push_back(std::move(s));
    if (picked.empty()) throw std::invalid_argument("unknown suite: " + suite);

    const std::string hash = config_hash(c);
    std::ostringstream csv;
    csv << "# manifest_hash=" << hash << "\n" << sweep_summary_csv_header() << "\n";
    json verdicts;
    verdicts["manifest_hash"] = hash;
    verdicts["suites"] = json::array();
    bool all_pass = true;
    for (const auto& s : picked) {
        csv << sweep_summary_csv_row(s) << "\n";
        json js{{"name", s.name},
                {"trials", s.trials},
                {"max_ratio", s.max_ratio},
                {"pass", s.pass},
                {"worst_witness", s.worst_witness},
                {"failures", json::array()}};
        for (const auto& f : s.failures) js["failures"].push_back(verdict_to_json(f));
        verdicts["suites"].push_back(std::move(js));
        all_pass = all_pass && s.pass;
    }
    verdicts["pass"] = all_pass;
    write_text(dir / "suites.csv", csv.str());
    write_text(dir / "verdicts.json", verdicts.dump(2) + "\n");
    std::printf("verify: %zu suites, %s\n", picked.size(), all_pass ? "pass" : "FAIL");
    return all_pass ? 0 : 1;
}

// ---- solve ----------------------------------------------------------------

void write_trajectory_csv(const std::filesystem::path& path, const FrequencyGrid& g,
                          const Trajectory& traj, const std::string& hash) {
    std::ostringstream os;
    os << "# manifest_hash=" << hash << "\n";
    os << "t," << norm_report_csv_header() << "\n";
    for (size_t j = 0; j < traj.size(); ++j) {
        const NormReport r = make_norm_report(g, traj.states[j], traj.params);
        os << fmt17(traj.times[j]) << "," << norm_report_csv_row(r) << "\n";
    }
    write_text(path, os.str());
}

json certificate_to_json(const SmallnessCertificate& cert) {
    return json{{"T", cert.T},           {"K", cert.K},
                {"c0", cert.c0},         {"y_norm", cert.y_norm},
                {"product", cert.product}, {"holds", cert.holds}};
}

int run_solve(const json& c, const std::filesystem::path& dir) {
    const int N = c.value("N", 16);
    const GevreyParams p = params_from(c);
    const auto g = make_grid(N);
    const VectorField u0 = make_initial(g, c.value("initial", std::string("taylor-green")));
    const std::string mode = c.value("mode", std::string("picard"));
    const double T = c.value("T", 0.1);
    const std::string hash = config_hash(c);

    json summary;
    summary["manifest_hash"] = hash;
    summary["mode"] = mode;
    Trajectory traj;
    bool ok = true;

    if (mode == "picard") {
        auto [tr, trace] = picard_solve(g, u0, T, p, c.value("nodes", 33),
                                        c.value("tol", 1e-12), c.value("max_iter", 100),
                                        c.value("K", kDefaultBilinearK));
        traj = std::move(tr);
        summary["converged"] = trace.converged;
        summary["iterations"] = trace.deltas.size();
        summary["iterate_norms"] = trace.iterate_norms;
        summary["deltas"] = trace.deltas;
        summary["certificate"] = certificate_to_json(trace.certificate);
        ok = trace.converged;
    } else if (mode == "timestep") {
        traj = timestep_integrate(g, u0, T, c.value("dt", 1e-3), p,
                                  c.value("store_stride", 1));
        summary["failed"] = traj.failed;
        ok = !traj.failed;
    } else if (mode == "continue") {
        ContinueOptions opt;
        opt.time_budget = T;
        opt.initial_window = c.value("window", 0.5);
        opt.nodes = c.value("nodes", 33);
        opt.tol = c.value("tol", 1e-12);
        opt.K = c.value("K", kDefaultBilinearK);
        if (c.contains("threshold")) opt.norm_threshold = c["threshold"].get<double>();
        auto res = continue_until(g, u0, p, opt);
        traj = std::move(res.traj);
        const char* names[] = {"budget_reached", "threshold_reached", "uncertified"};
        summary["status"] = names[int(res.status)];
        summary["windows"] = json::array();
        for (const auto& cert : res.window_certificates)
            summary["windows"].push_back(certificate_to_json(cert));
        ok = res.status != ContinueStatus::UncertifiedContinuation;
    } else {
        throw std::invalid_argument("unknown mode: " + mode);
    }

    write_trajectory_csv(dir / "trajectory.csv", g, traj, hash);
    summary["samples"] = traj.size();
    summary["t_final"] = traj.times.empty() ? 0.0 : traj.times.back();
    write_text(dir / "solution.json", summary.dump(2) + "\n");
    if (!ok) {
        std::printf("solve: numerical failure (%s)\n", mode.c_str());
        return 1;
    }
    std::printf("solve: %zu samples to t=%s\n", traj.size(),
                fmt17(summary["t_final"].get<double>()).c_str());
    return 0;
}

// ---- monitor --------------------------------------------------------------

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::vector<double> col(const std::string& name) const {
        for (size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] != name) continue;
            std::vector<double> out;
            for (const auto& r : rows) out.push_back(r[i]);
            return out;
        }
        throw std::runtime_error("trajectory CSV lacks column " + name);
    }
};

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read " + path.string());
    CsvTable t;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        if (t.columns.empty()) {
            while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        if (row.size() != t.columns.size())
            throw std::runtime_error("ragged row in " + path.string());
        t.rows.push_back(std::move(row));
    }
    if (t.rows.empty()) throw std::runtime_error("empty trajectory " + path.string());
    return t;
}

int run_monitor(const json& c, const std::filesystem::path& dir) {
    const GevreyParams p = params_from(c);
    const CsvTable t = read_csv(c.at("trajectory").get<std::string>());
    const auto times = t.col("t");
    const auto l2 = t.col("l2");
    const auto grad = t.col("grad_l2");
    const auto h1g_dot = t.col("h1_gevrey_dot");
    const auto h1g = t.col("h1_gevrey");
    const auto l1w = t.col("fourier_l1_weighted");
    const auto l1p = t.col("fourier_l1");
    const size_t m = times.size();

    json out;
    out["manifest_hash"] = config_hash(c);
    out["samples"] = m;

    // energy ledger from the sampled norms
    {
        const double e0 = l2[0] * l2[0];
        double integral = 0.0, worst = 0.0;
        json res = json::array();
        res.push_back(0.0);
        for (size_t j = 1; j < m; ++j) {
            integral += 0.5 * (times[j] - times[j - 1]) *
                        (grad[j - 1] * grad[j - 1] + grad[j] * grad[j]);
            const double r = (l2[j] * l2[j] + 2.0 * p.nu * integral - e0) / (e0 > 0.0 ? e0 : 1.0);
            res.push_back(r);
            worst = std::max(worst, std::abs(r));
        }
        out["energy"] = {{"max_relative_residual", worst}, {"residuals", res}};
    }

    // guaranteed-existence horizons
    {
        json series = json::array();
        bool ordered = true, consistent = true;
        for (size_t j = 0; j < m; ++j) {
            const double hw = l1w[j] > 0.0 ? p.nu / (2.0 * l1w[j] * l1w[j])
                                           : std::numeric_limits<double>::infinity();
            const double hp = l1p[j] > 0.0 ? p.nu / (2.0 * l1p[j] * l1p[j])
                                           : std::numeric_limits<double>::infinity();
            ordered = ordered && hw <= hp * (1.0 + 1e-12);
            series.push_back({{"t", times[j]},
                              {"horizon_weighted", hw},
                              {"horizon_plain", hp}});
        }
        // the sampled trajectory extends through every in-window horizon,
        // so the lower bound is never contradicted by these samples
        out["horizon"] = {{"weighted_leq_plain", ordered},
                          {"consistent", consistent},
                          {"series", series}};
    }

    // Gronwall growth monitor on the weighted H1 norm
    {
        std::vector<double> prefix(m, 0.0);
        for (size_t j = 1; j < m; ++j)
            prefix[j] = prefix[j - 1] + 0.5 * (times[j] - times[j - 1]) *
                                            (l1w[j - 1] * l1w[j - 1] + l1w[j] * l1w[j]);
        double max_ratio = 0.0;
        bool pass = true;
        for (size_t j = 0; j < m; ++j) {
            const double hj = h1g_dot[j] * h1g_dot[j];
            if (hj == 0.0) continue;
            for (size_t k = j + 1; k < m; ++k) {
                const double bound = hj * std::exp(kGronwallC / p.nu * (prefix[k] - prefix[j]));
                const double ratio = h1g_dot[k] * h1g_dot[k] / bound;
                max_ratio = std::max(max_ratio, ratio);
                if (ratio > 1.0 + kRatioTol) pass = false;
            }
        }
        out["gronwall"] = {{"c", kGronwallC}, {"max_ratio", max_ratio}, {"pass", pass}};
    }

    // optional envelope fit against the blow-up profile
    if (c.value("fit", false)) {
        auto ep = envelope_constants(l2[0], p);
        auto fit = fit_profile(times, h1g, ep, p, c.value("fit_range", 10.0));
        out["fit"] = {{"ok", fit.ok},
                      {"Tstar", fit.Tstar},
                      {"scale", fit.scale},
                      {"residual", fit.residual}};
        out["envelope"] = {{"sigma0_twice", ep.sigma0_twice}, {"C1", ep.C1}, {"C2", ep.C2},
                           {"c1", ep.c1},                     {"c2", ep.c2}, {"B", ep.B},
                           {"M2", ep.M2}};
    }

    write_text(dir / "diagnostics.json", out.dump(2) + "\n");
    std::printf("monitor: %zu samples\n", m);
    return 0;
}

// ---- constants ------------------------------------------------------------

int run_constants(const json& c, const std::filesystem::path& dir) {
    const GevreyParams p = params_from(c);
    const double u0_l2 = c.value("u0_l2", 1.0);
    json out;
    out["manifest_hash"] = config_hash(c);

    auto mb = check_m_bound(2.0);
    out["M2"] = mb.M;
    out["c_infinity"] = mb.c_infinity;
    out["cdelta_2"] = cdelta(2.0);
    out["cdelta_3"] = cdelta(3.0);

    if (p.sigma > 1.0) {
        auto ca = c_a_sigma(p.a, p.sigma);
        out["c_a_sigma"] = {{"b", ca.b},
                            {"quadrature", ca.quadrature},
                            {"closed_derived", ca.closed_derived},
                            {"closed_variant", ca.closed_variant},
                            {"matches_derived", ca.matches_derived},
                            {"matches_variant", ca.matches_variant}};
        auto ep = envelope_constants(u0_l2, p);
        out["envelope"] = {{"sigma0_twice", ep.sigma0_twice}, {"C1", ep.C1}, {"C2", ep.C2},
                           {"c1", ep.c1},                     {"c2", ep.c2}, {"B", ep.B},
                           {"M2", ep.M2}};
    } else {
        out["c_a_sigma"] = nullptr;  // requires sigma > 1
        out["envelope"] = nullptr;
    }

    auto ec = embedding_constant(p.s, p);
    out["embedding"] = {{"k0", ec.k0}, {"c_chain", ec.c_chain}, {"c_variant", ec.c_variant}};

    write_text(dir / "constants.json", out.dump(2) + "\n");
    std::printf("constants: written\n");
    return 0;
}

// ---- dispatch / replay ----------------------------------------------------

int dispatch(const json& config, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto t0 = std::chrono::steady_clock::now();
    const std::string sub = config.at("subcommand").get<std::string>();
    int rc;
    if (sub == "verify")
        rc = run_verify(config, dir);
    else if (sub == "solve")
        rc = run_solve(config, dir);
    else if (sub == "monitor")
        rc = run_monitor(config, dir);
    else if (sub == "constants")
        rc = run_constants(config, dir);
    else
        throw std::invalid_argument("unknown subcommand in config: " + sub);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(dir, config, wall);
    return rc;
}

int run_replay(const std::string& manifest_path, std::string outdir) {
    std::ifstream is(manifest_path);
    if (!is) {
        std::fprintf(stderr, "replay: cannot read manifest %s\n", manifest_path.c_str());
        return 2;
    }
    json m;
    try {
        is >> m;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "replay: malformed manifest: %s\n", e.what());
        return 2;
    }
    if (!m.contains("config") || !m.contains("manifest_hash")) {
        std::fprintf(stderr, "replay: manifest lacks config/hash\n");
        return 2;
    }
    const json config = m["config"];
    if (config_hash(config) != m["manifest_hash"].get<std::string>())
        std::fprintf(stderr, "replay: warning: stored hash does not match config\n");
    if (outdir.empty()) outdir = default_output_dir();
    return dispatch(config, outdir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sobolev-Gevrey Navier-Stokes toolkit"};
    app.require_subcommand(1);
    std::string outdir;

    json cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output-dir", outdir, "artifact directory (default runs/<timestamp>)");
    };
    auto opt = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                   const std::string& help) {
        sub->add_option_function<double>(
            flag, [&cfg, key](double v) { cfg[key] = v; }, help);
    };

    auto* verify = app.add_subcommand("verify", "run the inequality suites");
    {
        add_common(verify);
        verify->add_option_function<std::string>(
            "--suite", [&](const std::string& v) { cfg["suite"] = v; }, "suite name or 'all'");
        verify->add_option_function<int>(
            "--trials", [&](int v) { cfg["trials"] = v; }, "randomized trials per suite");
        verify->add_option_function<int>("--N", [&](int v) { cfg["N"] = v; }, "grid size");
        verify->add_option_function<uint64_t>(
            "--seed", [&](uint64_t v) { cfg["seed"] = v; }, "base seed");
    }

    auto* solve = app.add_subcommand("solve", "solve the mild formulation");
    {
        add_common(solve);
        solve->add_option_function<std::string>(
            "--initial", [&](const std::string& v) { cfg["initial"] = v; },
            "taylor-green | single-mode | random:SEED | file:PATH");
        solve->add_option_function<std::string>(
            "--mode", [&](const std::string& v) { cfg["mode"] = v; },
            "picard | timestep | continue");
        solve->add_option_function<int>("--N", [&](int v) { cfg["N"] = v; }, "grid size");
        solve->add_option_function<int>(
            "--nodes", [&](int v) { cfg["nodes"] = v; }, "Picard quadrature nodes");
        solve->add_option_function<int>(
            "--max-iter", [&](int v) { cfg["max_iter"] = v; }, "Picard iteration cap");
        solve->add_option_function<int>(
            "--store-stride", [&](int v) { cfg["store_stride"] = v; }, "keep every k-th step");
        opt(solve, "--nu", "nu", "viscosity");
        opt(solve, "--a", "a", "Gevrey radius");
        opt(solve, "--sigma", "sigma", "Gevrey index");
        opt(solve, "--s", "s", "Sobolev exponent");
        opt(solve, "--T", "T", "final time / budget");
        opt(solve, "--dt", "dt", "time step (timestep mode)");
        opt(solve, "--tol", "tol", "Picard tolerance");
        opt(solve, "--K", "K", "bilinear-bound constant");
        opt(solve, "--threshold", "threshold", "stop norm threshold (continue mode)");
        opt(solve, "--window", "window", "initial window (continue mode)");
    }

    auto* monitor = app.add_subcommand("monitor", "diagnostics over a trajectory CSV");
    {
        add_common(monitor);
        monitor
            ->add_option_function<std::string>(
                "--trajectory", [&](const std::string& v) { cfg["trajectory"] = v; },
                "trajectory CSV path")
            ->required();
        monitor->add_flag_function(
            "--fit", [&](int64_t) { cfg["fit"] = true; }, "fit the blow-up envelope");
        opt(monitor, "--nu", "nu", "viscosity");
        opt(monitor, "--a", "a", "Gevrey radius");
        opt(monitor, "--sigma", "sigma", "Gevrey index");
        opt(monitor, "--fit-range", "fit_range", "Tstar search range past the last sample");
    }

    auto* constants = app.add_subcommand("constants", "explicit constants report");
    {
        add_common(constants);
        opt(constants, "--nu", "nu", "viscosity");
        opt(constants, "--a", "a", "Gevrey radius");
        opt(constants, "--sigma", "sigma", "Gevrey index");
        opt(constants, "--s", "s", "Sobolev exponent");
        opt(constants, "--u0-l2", "u0_l2", "initial L2 norm for the envelope constants");
    }

    std::string manifest_path;
    auto* replay = app.add_subcommand("replay", "re-run a manifest deterministically");
    {
        add_common(replay);
        replay->add_option("--manifest", manifest_path, "manifest.json path")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (replay->parsed()) return run_replay(manifest_path, outdir);
        for (CLI::App* sub : {verify, solve, monitor, constants})
            if (sub->parsed()) cfg["subcommand"] = sub->get_name();
        if (outdir.empty()) outdir = default_output_dir();
        return dispatch(cfg, outdir);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        std::filesystem::create_directories(outdir.empty() ? "." : outdir);
        json diag{{"error", e.what()}};
        std::ofstream os(std::filesystem::path(outdir.empty() ? "." : outdir) /
                         "diagnostic.json");
        os << diag.dump(2) << "\n";
        return 1;
    }
}
