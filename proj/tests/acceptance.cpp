// Acceptance gate: nine criteria, one pass/fail line each. Exit 0 iff all pass.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gevreyns/blowup.hpp"
#include "gevreyns/inequalities.hpp"

using namespace gevreyns;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s — %s\n", pass ? "PASS" : "FAIL", idx, name, detail.c_str());
    if (!pass) ++g_failures;
}

double max_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) m = std::max(m, (a[i] - b[i]).abs().maxCoeff());
    return m;
}

double max_abs(const VectorField& a) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) m = std::max(m, a[i].abs().maxCoeff());
    return m;
}

// 1. randomized inequality suites at N=8 (1000 trials) and N=16 (200 trials);
//    empirical product constants stable within 5% between the grids
void criterion_1() {
    SweepConfig c8, c16;
    c8.N = 8;
    c8.trials = 1000;
    c16.N = 16;
    c16.trials = 200;
    auto r8 = run_inequality_suites(c8);
    auto r16 = run_inequality_suites(c16);
    bool pass = true;
    std::string detail;
    for (size_t i = 0; i < r8.size(); ++i) {
        if (!r8[i].pass || !r16[i].pass) {
            pass = false;
            detail += r8[i].name + " failed; ";
        }
    }
    for (const auto* name : {"product_sobolev", "l2_product"}) {
        double v8 = 0.0, v16 = 0.0;
        for (const auto& s : r8)
            if (s.name == name) v8 = s.max_ratio;
        for (const auto& s : r16)
            if (s.name == name) v16 = s.max_ratio;
        const double rel = std::abs(v8 - v16) / std::max(v8, 1e-300);
        if (rel > 0.05) pass = false;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s c8=%.4g c16=%.4g; ", name, v8, v16);
        detail += buf;
    }
    if (detail.empty()) detail = "all suites pass";
    report(1, "inequality suites (1000@N8, 200@N16, ratio <= 1+1e-9)", pass, detail);
}

// 2. transform-based products match the direct convolution oracle
void criterion_2() {
    auto g = make_grid(8);
    double worst = 0.0;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        ScalarField f = random_scalar_field(g, -1.0, 1.0, double(g.N) / 3.0, seed);
        ScalarField h = random_scalar_field(g, -1.0, 1.0, double(g.N) / 3.0, seed + 1000);
        ScalarField a = apply_dealias(g, convolve_oracle(g, f, h));
        ScalarField b = spectral_product(g, f, h);
        const double scale = a.abs().maxCoeff();
        worst = std::max(worst, (a - b).abs().maxCoeff() / std::max(scale, 1e-300));
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "sup relative error %.3g", worst);
    report(2, "oracle equivalence on 100 dealiased pairs at N=8", worst <= 1e-10, buf);
}

// 3. exact-solution regressions and fourth-order timestep convergence
void criterion_3() {
    bool pass = true;
    std::string detail;

    {  // single mode: pure heat decay through the Picard solver
        auto g = make_grid(8);
        GevreyParams p;
        auto u0 = single_mode(g);
        auto [traj, trace] = picard_solve(g, u0, 0.5, p, 17);
        double worst = 0.0;
        for (size_t j = 0; j < traj.size(); ++j)
            worst = std::max(worst, max_diff(traj.states[j],
                                             heat_propagate(g, u0, p.nu, traj.times[j])));
        if (!(trace.converged && worst <= 1e-10)) pass = false;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "heat err %.2g; ", worst);
        detail += buf;
    }

    {  // Taylor-Green inside the largest certified window, found by bisection
        auto g = make_grid(16);
        GevreyParams p;
        p.a = 0.1;
        p.sigma = 1.5;
        auto u0 = taylor_green(g);
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            (smallness_certificate(g, u0, mid, p).holds ? lo : hi) = mid;
        }
        const double T = lo;
        auto [traj, trace] = picard_solve(g, u0, T, p, 17);
        double worst = 0.0;
        for (size_t j = 0; j < traj.size(); ++j) {
            VectorField ref = std::exp(-2.0 * p.nu * traj.times[j]) * u0;
            worst = std::max(worst, max_diff(traj.states[j], ref));
        }
        if (!(trace.converged && trace.certificate.holds && T > 0.0 && worst <= 1e-6))
            pass = false;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "TG certified T=%.4g err %.2g; ", T, worst);
        detail += buf;
    }

    {  // Richardson ratio for the integrating-factor RK4
        auto g = make_grid(8);
        GevreyParams p;
        VectorField u0 = random_divergence_free_field(g, -2.0, 1.0, double(g.N) / 3.0, 12);
        u0 = (1.0 / norm(g, u0, NormKind::H1Gevrey, p)) * u0;
        const double T = 0.1;
        auto a = timestep_integrate(g, u0, T, T / 8, p, 1000);
        auto b = timestep_integrate(g, u0, T, T / 16, p, 1000);
        auto c = timestep_integrate(g, u0, T, T / 32, p, 1000);
        const double ratio = max_diff(a.states.back(), b.states.back()) /
                             max_diff(b.states.back(), c.states.back());
        if (!(ratio >= 12.0 && ratio <= 20.0)) pass = false;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "RK4 ratio %.2f", ratio);
        detail += buf;
    }

    report(3, "exact-solution regressions + 4th-order timestepping", pass, detail);
}

// 4. certified Picard runs stay within 2||y|| and contract at the certified rate
void criterion_4() {
    auto g = make_grid(8);
    GevreyParams p;
    bool pass = true;
    int cases = 0;
    double worst_norm = 0.0, worst_contraction = 0.0;
    for (double target : {0.01, 0.05, 0.1}) {
        for (double T : {0.1, 0.5}) {
            VectorField u0 =
                random_divergence_free_field(g, -2.0, 1.0, double(g.N) / 3.0, 42);
            u0 = (target / norm(g, u0, NormKind::H1Gevrey, p)) * u0;
            auto cert = smallness_certificate(g, u0, T, p);
            if (!cert.holds) continue;
            ++cases;
            auto [traj, trace] = picard_solve(g, u0, T, p, 17);
            if (!trace.converged) pass = false;
            for (double n : trace.iterate_norms) {
                worst_norm = std::max(worst_norm, n / (2.0 * trace.certificate.y_norm));
                if (n > 2.0 * trace.certificate.y_norm * (1.0 + 1e-12)) pass = false;
            }
            const double bound = trace.certificate.product * 1.1;
            for (size_t k = 0; k + 1 < trace.deltas.size(); ++k) {
                if (trace.deltas[k] <= 1e-14) continue;
                const double r = trace.deltas[k + 1] / trace.deltas[k];
                worst_contraction = std::max(worst_contraction, r / bound);
                if (r > bound) pass = false;
            }
        }
    }
    if (cases == 0) pass = false;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "%d certified cases; norm margin %.3f, contraction margin %.3f", cases,
                  worst_norm, worst_contraction);
    report(4, "fixed-point contract (||u(n)|| <= 2||y||, contraction <= 4c0||y||*1.1)", pass,
           buf);
}

// 5. energy identity residual on Taylor-Green, with second-order refinement
void criterion_5() {
    auto g = make_grid(16);
    GevreyParams p;
    auto u0 = taylor_green(g);
    auto fine = timestep_integrate(g, u0, 1.0, 1e-3, p);
    auto coarse = timestep_integrate(g, u0, 1.0, 2e-3, p);
    const double r_fine = energy_ledger(g, fine).max_relative;
    const double r_coarse = energy_ledger(g, coarse).max_relative;
    const double order = std::log2(r_coarse / r_fine);
    const bool pass = r_fine <= 1e-5 && order >= 1.6 && order <= 2.4;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "residual %.3g at dt=1e-3, refinement order %.2f", r_fine,
                  order);
    report(5, "energy identity (residual <= 1e-5, O(dt^2))", pass, buf);
}

// 6. fitted T-exponents of the smoothing bounds over T in [1e-2, 1]
void criterion_6() {
    auto g = make_grid(64);
    GevreyParams p;
    p.a = 0.05;
    p.sigma = 2.0;
    p.nu = 0.5;
    VectorField u = 10.0 * single_mode(g) +
                    random_divergence_free_field(g, -2.0, 1.0, double(g.N) / 3.0, 7);
    std::vector<double> logT, logH1, logL2;
    for (double T : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) {
        auto [h1, l2] = check_bilinear_smoothing(g, u, u, p, T, 2, "");
        logT.push_back(std::log(T));
        logH1.push_back(std::log(h1.lhs));
        logL2.push_back(std::log(l2.lhs));
    }
    auto slope = [&](const std::vector<double>& y) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = double(logT.size());
        for (size_t i = 0; i < logT.size(); ++i) {
            sx += logT[i];
            sy += y[i];
            sxx += logT[i] * logT[i];
            sxy += logT[i] * y[i];
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    const double s1 = slope(logH1), s2 = slope(logL2);
    const bool pass = std::abs(s1 - 0.25) <= 0.1 && std::abs(s2 - 0.75) <= 0.1;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "exponents %.3f (want 1/4), %.3f (want 3/4)", s1, s2);
    report(6, "smoothing scaling exponents over T in [1e-2, 1]", pass, buf);
}

// 7. explicit constants: quadrature closed form, h limit, B > 0, envelope fit
void criterion_7() {
    bool pass = true;
    std::string detail;

    double worst_ca = 0.0;
    for (double a : {0.5, 1.0, 2.0}) {
        for (double sg : {1.5, 2.0, 3.0}) {
            auto res = c_a_sigma(a, sg);
            const double rel =
                std::abs(res.quadrature - res.closed_derived) / res.quadrature;
            worst_ca = std::max(worst_ca, rel);
            if (!res.matches_derived) pass = false;
            if (res.matches_variant && std::abs(res.b - 1.0) > 1e-9) pass = false;
        }
    }

    double worst_h = 0.0;
    bool b_positive = true;
    for (int K = 2; K <= 12; K += 2) {
        const double lim = 1.0 / std::tgamma(double(K) + 2.0);
        worst_h = std::max(worst_h, std::abs(h_function(1e-10, K) - lim));
        if (!(infimum_B(K) > 0.0)) b_positive = false;
    }
    if (worst_h > 1e-8 || !b_positive) pass = false;

    GevreyParams p;
    auto ep = envelope_constants(1.0, p);
    const double Tstar_true = 1.5;
    std::vector<double> times, values;
    for (int i = 0; i <= 200; ++i) {
        const double t = double(i) / 200.0;
        times.push_back(t);
        values.push_back(0.37 * envelope(t, Tstar_true, ep, p));
    }
    auto fit = fit_profile(times, values, ep, p);
    const double tstar_err = fit.ok ? std::abs(fit.Tstar - Tstar_true) : 1.0;
    if (tstar_err > 1e-4) pass = false;

    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "c_a_sigma rel %.2g; h-limit err %.2g; B>0; Tstar err %.2g", worst_ca,
                  worst_h, tstar_err);
    report(7, "explicit constants and envelope round-trip", pass, buf);
}

// 8. guaranteed-existence horizon never contradicted on smooth fixtures
void criterion_8() {
    GevreyParams p;
    bool pass = true;
    int samples = 0;
    auto check_traj = [&](const FrequencyGrid& g, const Trajectory& traj) {
        auto hc = horizon_consistency(g, traj);
        if (!hc.horizons_consistent || !hc.gronwall_pass) pass = false;
        for (const auto& s : hc.series) {
            ++samples;
            if (!(s.horizon_weighted <= s.horizon_plain * (1.0 + 1e-12))) pass = false;
        }
    };
    {
        auto g = make_grid(16);
        check_traj(g, timestep_integrate(g, taylor_green(g), 1.0, 1e-2, p, 10));
    }
    {
        auto g = make_grid(8);
        check_traj(g, timestep_integrate(g, single_mode(g), 0.5, 5e-3, p, 10));
        VectorField u0 = random_divergence_free_field(g, -2.0, 1.0, double(g.N) / 3.0, 3);
        u0 = (0.05 / norm(g, u0, NormKind::H1Gevrey, p)) * u0;
        auto [traj, trace] = picard_solve(g, u0, 0.5, p, 17);
        if (!trace.converged) pass = false;
        check_traj(g, traj);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%d samples across 3 fixture trajectories", samples);
    report(8, "horizon monitor (never contradicted, weighted <= plain)", pass, buf);
}

// 9. byte-identical replay of the command-line fixtures
std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void criterion_9() {
    const fs::path tmp =
        fs::temp_directory_path() / ("gevreyns_accept_" + std::to_string(::getpid()));
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    auto sh = [&](const std::string& args) {
        const std::string cmd =
            std::string(GEVREY_NS_BIN) + " " + args + " >/dev/null 2>/dev/null";
        const int st = std::system(cmd.c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    };
    bool pass = true;
    int fixtures = 0;
    struct Fix {
        std::string args;
        std::vector<std::string> artifacts;
    };
    const std::vector<Fix> fixes = {
        {"solve --initial taylor-green --N 16 --nu 1 --a 0.1 --sigma 1.5 --T 0.1 "
         "--mode picard",
         {"trajectory.csv", "solution.json"}},
        {"solve --initial random:9 --N 8 --T 0.2 --mode timestep --dt 0.01",
         {"trajectory.csv", "solution.json"}},
        {"verify --suite all --trials 50 --N 8 --seed 7", {"suites.csv", "verdicts.json"}},
        {"constants --a 1 --sigma 2 --nu 1 --u0-l2 1", {"constants.json"}},
    };
    for (size_t i = 0; i < fixes.size(); ++i) {
        const fs::path a = tmp / ("a" + std::to_string(i));
        const fs::path b = tmp / ("b" + std::to_string(i));
        if (sh(fixes[i].args + " --output-dir " + a.string()) != 0) {
            pass = false;
            continue;
        }
        if (sh("replay --manifest " + (a / "manifest.json").string() + " --output-dir " +
               b.string()) != 0) {
            pass = false;
            continue;
        }
        ++fixtures;
        for (const auto& art : fixes[i].artifacts) {
            const std::string sa = slurp(a / art), sb = slurp(b / art);
            if (sa.empty() || sa != sb) pass = false;
        }
    }
    fs::remove_all(tmp);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%d/%zu fixture manifests replayed", fixtures,
                  fixes.size());
    report(9, "determinism (byte-identical replay)", pass, buf);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures) {
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all 9 criteria pass\n");
    return 0;
}
