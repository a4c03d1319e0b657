#include "gevreyns/blowup.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gevreyns {

EnergyLedger energy_ledger(const FrequencyGrid& g, const Trajectory& traj) {
    if (traj.size() < 2) throw std::invalid_argument("energy_ledger: need >= 2 samples");
    EnergyLedger led;
    const GevreyParams& p = traj.params;
    const double e0 = std::pow(norm(g, traj.states[0], NormKind::L2, p), 2);
    double integral = 0.0;
    double prev_grad2 = std::pow(norm(g, traj.states[0], NormKind::GradL2, p), 2);
    led.times.push_back(traj.times[0]);
    led.residuals.push_back(0.0);
    for (size_t j = 1; j < traj.size(); ++j) {
        const double grad2 = std::pow(norm(g, traj.states[j], NormKind::GradL2, p), 2);
        integral += 0.5 * (traj.times[j] - traj.times[j - 1]) * (prev_grad2 + grad2);
        prev_grad2 = grad2;
        const double l2sq = std::pow(norm(g, traj.states[j], NormKind::L2, p), 2);
        const double r = (l2sq + 2.0 * p.nu * integral - e0) / (e0 > 0.0 ? e0 : 1.0);
        led.times.push_back(traj.times[j]);
        led.residuals.push_back(r);
        led.max_relative = std::max(led.max_relative, std::abs(r));
    }
    return led;
}

HorizonReport horizon(const FrequencyGrid& g, const VectorField& u, const GevreyParams& p,
                      double t) {
    HorizonReport r;
    r.t = t;
    r.l1_weighted = fourier_l1_weighted(g, u, p.a / p.sigma, p.sigma);
    r.l1_plain = fourier_l1_weighted(g, u, 0.0, p.sigma);
    const double inf = std::numeric_limits<double>::infinity();
    r.horizon_weighted =
        r.l1_weighted > 0.0 ? p.nu / (2.0 * r.l1_weighted * r.l1_weighted) : inf;
    r.horizon_plain = r.l1_plain > 0.0 ? p.nu / (2.0 * r.l1_plain * r.l1_plain) : inf;
    return r;
}

HorizonConsistency horizon_consistency(const FrequencyGrid& g, const Trajectory& traj,
                                       double gronwall_c) {
    HorizonConsistency hc;
    hc.gronwall_c = gronwall_c;
    const GevreyParams& p = traj.params;
    const size_t m = traj.size();
    std::vector<double> h1g2(m), l1w2(m);
    for (size_t j = 0; j < m; ++j) {
        hc.series.push_back(horizon(g, traj.states[j], p, traj.times[j]));
        h1g2[j] = std::pow(norm(g, traj.states[j], NormKind::H1GevreyDot, p), 2);
        l1w2[j] = hc.series[j].l1_weighted * hc.series[j].l1_weighted;
    }
    if (m < 2) {
        hc.horizons_consistent = true;
        hc.gronwall_pass = true;
        return hc;
    }
    // prefix trapezoid of the weighted-L1 squared norm
    std::vector<double> prefix(m, 0.0);
    for (size_t j = 1; j < m; ++j)
        prefix[j] = prefix[j - 1] +
                    0.5 * (traj.times[j] - traj.times[j - 1]) * (l1w2[j - 1] + l1w2[j]);

    // a numerical failure strictly inside some sample's guaranteed horizon
    // would contradict the lower bound
    hc.horizons_consistent = true;
    if (traj.failed) {
        const double t_fail = traj.times.back();
        for (size_t j = 0; j < m; ++j)
            if (t_fail < traj.times[j] + hc.series[j].horizon_weighted)
                hc.horizons_consistent = false;
    }

    hc.gronwall_pass = true;
    for (size_t j = 0; j < m; ++j) {
        if (h1g2[j] == 0.0) continue;
        for (size_t k = j + 1; k < m; ++k) {
            const double bound =
                h1g2[j] * std::exp(gronwall_c / p.nu * (prefix[k] - prefix[j]));
            const double ratio = h1g2[k] / bound;
            hc.gronwall_max_ratio = std::max(hc.gronwall_max_ratio, ratio);
            if (ratio > 1.0 + kRatioTol) hc.gronwall_pass = false;
        }
    }
    return hc;
}

namespace {

// composite Simpson with interval doubling; integrand smooth after the
// y = w^2 substitution
double simpson_doubling(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol) {
    auto composite = [&](long n) {
        const double h = (hi - lo) / double(n);
        double s = f(lo) + f(hi);
        for (long i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
        return s * h / 3.0;
    };
    long n = 64;
    double prev = composite(n);
    for (int it = 0; it < 22; ++it) {
        n *= 2;
        const double cur = composite(n);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

CasigmaResult c_a_sigma(double a, double sigma) {
    if (sigma <= 1.0) throw std::invalid_argument("c_a_sigma: sigma must be > 1");
    if (a <= 0.0) throw std::invalid_argument("c_a_sigma: a must be > 0");
    CasigmaResult res;
    res.b = 2.0 * a * (1.0 / std::sqrt(sigma) - 1.0 / sigma);
    const double b = res.b;
    // 4 pi int_0^inf e^{-b r^{1/sigma}} dr with r = y^sigma then y = w^2:
    // 8 pi sigma int_0^inf w^{2 sigma - 1} e^{-b w^2} dw
    const double W = std::sqrt((30.0 * sigma + 60.0) / b);
    auto f = [&](double w) {
        return 8.0 * std::numbers::pi * sigma * std::pow(w, 2.0 * sigma - 1.0) *
               std::exp(-b * w * w);
    };
    res.quadrature = simpson_doubling(f, 0.0, W, 1e-11);
    const double gamma = std::tgamma(sigma);
    res.closed_derived = 4.0 * std::numbers::pi * sigma * std::pow(b, -sigma) * gamma;
    res.closed_variant = 4.0 * std::numbers::pi * sigma * std::pow(b, sigma - 2.0) * gamma;
    auto close = [&](double x) {
        return std::abs(res.quadrature - x) <= 1e-6 * std::abs(res.quadrature);
    };
    res.matches_derived = close(res.closed_derived);
    res.matches_variant = close(res.closed_variant);
    return res;
}

double h_function(double z, int sigma0_twice) {
    if (z <= 0.0) throw std::invalid_argument("h_function: z must be > 0");
    if (sigma0_twice < 2) throw std::invalid_argument("h_function: sigma0_twice must be >= 2");
    const int K = sigma0_twice;
    if (z <= 100.0) {
        // h(z) = e^{-z/2} sum_{j>=0} z^j / (j + K + 1)!  (all terms positive)
        double term = 1.0 / std::tgamma(double(K) + 2.0);
        double sum = term;
        for (int j = 1; j < 500; ++j) {
            term *= z / double(j + K + 1);
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum * std::exp(-0.5 * z);
    }
    // large z: the partial sum is negligible against e^z
    const double logh = 0.5 * z - double(K + 1) * std::log(z);
    return std::exp(logh);
}

double infimum_B(int sigma0_twice) {
    // bracket the interior minimum on a log grid, then golden section
    const int n = 10000;
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0;
    std::vector<double> zs(n), hs(n);
    for (int i = 0; i < n; ++i) {
        const double lz = -20.0 + 40.0 * double(i) / (n - 1);
        zs[size_t(i)] = std::exp(lz);
        hs[size_t(i)] = h_function(zs[size_t(i)], sigma0_twice);
        if (hs[size_t(i)] < best) {
            best = hs[size_t(i)];
            best_i = i;
        }
    }
    double lo = zs[size_t(std::max(0, best_i - 1))];
    double hi = zs[size_t(std::min(n - 1, best_i + 1))];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = h_function(c, sigma0_twice), fd = h_function(d, sigma0_twice);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = h_function(c, sigma0_twice);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = h_function(d, sigma0_twice);
        }
    }
    return std::min({best, fc, fd});
}

EnvelopeParams envelope_constants(double u0_l2, const GevreyParams& p) {
    if (p.sigma <= 1.0)
        throw std::invalid_argument("envelope_constants: sigma must be > 1");
    EnvelopeParams ep;
    ep.sigma0_twice = int(std::floor(2.0 * p.sigma));
    ep.M2 = check_m_bound(2.0).M;
    const double m2inv2 = 1.0 / (ep.M2 * ep.M2);
    ep.C1 = std::pow(0.5 * p.nu * m2inv2 * u0_l2, 2.0 / 3.0);
    ep.C2 = std::pow(0.5 * p.nu * m2inv2 * u0_l2 * u0_l2, 1.0 / (3.0 * p.sigma));
    ep.B = infimum_B(ep.sigma0_twice);
    ep.c2 = ep.C2;
    ep.c1 = ep.B * ep.C1 * std::pow(2.0 * p.a * ep.C2, ep.sigma0_twice + 1);
    return ep;
}

double envelope(double t, double Tstar, const EnvelopeParams& ep, const GevreyParams& p) {
    if (t >= Tstar) throw std::invalid_argument("envelope: need t < Tstar");
    const double dt = Tstar - t;
    const double power = (double(ep.sigma0_twice) + 1.0) / (3.0 * p.sigma) + 1.0 / 3.0;
    return ep.c1 * std::pow(dt, -power) *
           std::exp(p.a * ep.c2 * std::pow(dt, -1.0 / (3.0 * p.sigma)));
}

double intermediate_bound(int k, double t, double Tstar, const EnvelopeParams& ep,
                          const GevreyParams& p) {
    if (t >= Tstar) throw std::invalid_argument("intermediate_bound: need t < Tstar");
    const double dt = Tstar - t;
    return ep.C1 * std::pow(dt, -2.0 / 3.0) *
           std::pow(ep.C2 * std::pow(dt, -1.0 / (3.0 * p.sigma)), double(k));
}

ProfileFit fit_profile(const std::vector<double>& times, const std::vector<double>& values,
                       const EnvelopeParams& ep, const GevreyParams& p, double search_range) {
    ProfileFit fit;
    if (times.size() != values.size() || times.size() < 8) return fit;
    if (!(values.back() > values.front())) return fit;  // no-fit for decaying data
    for (double v : values)
        if (!(v > 0.0)) return fit;

    const double t_last = times.back();
    auto sse = [&](double Tstar) {
        double mean = 0.0;
        std::vector<double> r(times.size());
        for (size_t i = 0; i < times.size(); ++i) {
            r[i] = std::log(values[i]) - std::log(envelope(times[i], Tstar, ep, p));
            mean += r[i];
        }
        mean /= double(times.size());
        double s = 0.0;
        for (double x : r) s += (x - mean) * (x - mean);
        return std::pair<double, double>(s, mean);
    };

    // golden section over Tstar in (t_last, t_last + range]
    double lo = t_last + 1e-9 * (1.0 + t_last);
    double hi = t_last + search_range;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = sse(c).first, fd = sse(d).first;
    for (int it = 0; it < 300 && hi - lo > 1e-10; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = sse(c).first;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = sse(d).first;
        }
    }
    const double Tstar = 0.5 * (lo + hi);
    auto [s, mean] = sse(Tstar);
    fit.ok = true;
    fit.Tstar = Tstar;
    fit.scale = std::exp(mean);
    fit.residual = std::sqrt(s / double(times.size()));
    return fit;
}

ProfileFit fit_profile(const FrequencyGrid& g, const Trajectory& traj, const EnvelopeParams& ep) {
    std::vector<double> vals;
    for (const auto& st : traj.states)
        vals.push_back(norm(g, st, NormKind::H1Gevrey, traj.params));
    return fit_profile(traj.times, vals, ep, traj.params);
}

}  // namespace gevreyns
